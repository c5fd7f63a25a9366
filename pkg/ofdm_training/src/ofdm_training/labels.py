#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Online training samples built from receivable quantities only

The feature is the comb LS estimate of the pilot symbols. The label comes from
the boosted full-band label symbol next to each pilot symbol, either as a raw
LS estimate or smoothed by a Wiener filter built from the uniform delay
correlation. Nothing here takes the true channel.
"""

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_estimators.ls import ls_estimate
from ofdm_estimators.mmse import apply_filter, wiener_filter
from ofdm_fading.correlation import uniform_delay_correlation
from ofdm_link.frame import DOUBLE_DMRS, as_grid
from ofdm_link.link import extract_pilot_ls_input, noise_variance

from ofdm_channelformer.marshalling import input_from_ls, stack_columns

POWER_BOOST = 'boost'
MMSE = 'mmse'
LABELS = (POWER_BOOST, MMSE)


class OnlineSample(object):

    """
    :param feature: marshalled pilot LS estimate [72, 2]
    :param label: marshalled label [144, 2]
    :param index: position in the sample stream
    """

    def __init__(self, feature, label, index=0):
        self.feature = np.asarray(feature, dtype=np.float64)
        self.label = np.asarray(label, dtype=np.float64)
        self.index = index

    def __repr__(self):
        return "OnlineSample({})".format(self.index)


def label_symbol_inputs(Y, pattern):
    """
    Received and transmitted values of the label symbols

    :return: Y_label [..., 72, 2] and X_label [72, 2] including the boost
    """
    if pattern.kind != DOUBLE_DMRS:
        raise ValueError("Online labels need the double DM-RS pattern")
    y = as_grid(Y)
    symbols = list(pattern.label_symbols)
    X_label = np.stack([pattern.label_amplitude * pattern.label_values[s] for s in symbols],
                       axis=-1)
    return y[..., symbols], X_label


def make_online_label_power_boost(Y_label, X_label):
    """
    Full-band LS on the boosted label symbols, marshalled [144, 2]
    """
    return stack_columns(ls_estimate(Y_label, X_label).values)


class MmseLabelFilter(object):

    """
    Wiener smoothers F = R (R + sigma_N^2 / sigma_X^2 I)^-1 per SNR

    R is the uniform delay correlation over the cyclic prefix; sigma_X^2 is
    the label symbol power. Filters are computed once per SNR and cached.

    :param snr_offset_db: added to the SNR handed to filter(), models SNR mismatch
    """

    def __init__(self, n_subcarriers=72, cp_samples=16, boost_db=5.0, snr_offset_db=0.0):
        self.correlation = uniform_delay_correlation(n_subcarriers, cp_samples)
        self.boost_db = float(boost_db)
        self.snr_offset_db = float(snr_offset_db)
        self._cache = {}

    def filter(self, snr_db):
        key = float(snr_db) + self.snr_offset_db
        if key not in self._cache:
            ratio = noise_variance(key) / 10.0 ** (self.boost_db / 10.0)
            self._cache[key] = wiener_filter(self.correlation, ratio)
        return self._cache[key]

    def __len__(self):
        return len(self._cache)


def make_online_label_mmse(Y_label, X_label, snr_db, label_filter):
    """
    LS on the label symbols smoothed across subcarriers, marshalled [144, 2]

    :type label_filter: MmseLabelFilter
    """
    ls = ls_estimate(Y_label, X_label).values
    F = label_filter.filter(snr_db)
    if F.shape[0] != ls.shape[-2]:
        raise ShapeError("Filter of size {} for {} subcarriers".format(F.shape, ls.shape))
    smoothed = np.swapaxes(apply_filter(F, np.swapaxes(ls, -1, -2)), -1, -2)
    return stack_columns(smoothed)


def make_online_sample(Y, pattern, snr_db=None, label=POWER_BOOST, label_filter=None, index=0):
    """
    Feature and label of one received double DM-RS slot

    :param Y: received grid [72, 14]
    :param snr_db: SNR assumed by the MMSE label filter
    :rtype: OnlineSample
    """
    if label not in LABELS:
        raise ValueError("Unknown online label '{}'".format(label))
    feature = input_from_ls(ls_estimate(*extract_pilot_ls_input(Y, pattern)))
    Y_label, X_label = label_symbol_inputs(Y, pattern)
    if label == MMSE:
        if label_filter is None or snr_db is None:
            raise ValueError("MMSE labels need a label filter and an SNR")
        target = make_online_label_mmse(Y_label, X_label, snr_db, label_filter)
    else:
        target = make_online_label_power_boost(Y_label, X_label)
    return OnlineSample(feature, target, index)
