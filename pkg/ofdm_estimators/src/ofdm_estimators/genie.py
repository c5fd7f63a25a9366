#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Genie channel statistics: ensemble correlations of noise-free channels
"""

import os

import numpy as np

from ofdm_common.binary_io import read_matrices, write_matrices
from ofdm_common.core import make_rng
from ofdm_common.exceptions import FormatError
from ofdm_common.logging import logdebug, loginfo, logwarn

DEFAULT_REALIZATIONS = 20000
CHUNK = 500


class GenieCorrelations(object):

    """
    Per-symbol frequency covariances E[h_l h_l^H], [N_s x N_f x N_f]

    The pilot quantities of the MMSE estimators are sub-blocks: R_hhp takes the
    pilot columns, R_hphp the pilot rows and columns of a pilot symbol.
    """

    def __init__(self, covariances, key=None):
        self.covariances = np.asarray(covariances, dtype=np.complex128)
        self.key = key

    def covariance(self, symbol):
        return self.covariances[symbol]

    def cross(self, symbol, pattern):
        return self.covariances[symbol][:, pattern.pilot_subcarriers[symbol]]

    def pilot_auto(self, symbol, pattern):
        carriers = pattern.pilot_subcarriers[symbol]
        return self.covariances[symbol][np.ix_(carriers, carriers)]


def cache_file_name(channel_spec, n_mc, seed):
    return "genie_{}_{}_{}.bin".format(channel_spec.key(), n_mc, seed)


def estimate_covariances(channel_spec, n_mc=DEFAULT_REALIZATIONS, seed=0):
    """
    Sample mean of h_l h_l^H over n_mc fresh realizations of channel_spec

    :type channel_spec: ofdm_fading.fading.ChannelSpec
    :rtype: GenieCorrelations
    """
    rng = make_rng(seed, "genie", channel_spec.key(), n_mc)
    total = None
    remaining = n_mc
    while remaining > 0:
        count = min(CHUNK, remaining)
        _, H, _ = channel_spec.realize_batch(count, rng)
        # [symbols, N_f, N_f]
        chunk = np.einsum('bkl,bjl->lkj', H, H.conj())
        total = chunk if total is None else total + chunk
        remaining -= count
    covariances = total / n_mc
    covariances = 0.5 * (covariances + np.conj(np.swapaxes(covariances, -1, -2)))
    return GenieCorrelations(covariances, key=(channel_spec.key(), n_mc, seed))


def genie_correlations(channel_spec, n_mc=DEFAULT_REALIZATIONS, seed=0, cache_dir=None):
    """
    Genie correlations of a channel spec, cached on disk when cache_dir is given

    Cache files are keyed by profile, Doppler range, realization count and seed.
    Unreadable cache files are recomputed.
    """
    path = None
    if cache_dir:
        path = os.path.join(cache_dir, cache_file_name(channel_spec, n_mc, seed))
        if os.path.exists(path):
            try:
                correlations = GenieCorrelations(np.stack(read_matrices(path)),
                                                 key=(channel_spec.key(), n_mc, seed))
                logdebug("Loaded genie correlations from {}".format(path))
                return correlations
            except FormatError as e:
                logwarn("Ignoring unreadable correlation cache {}: {}".format(path, e))
    loginfo("Estimating genie correlations for {} over {} realizations".format(
        channel_spec, n_mc))
    correlations = estimate_covariances(channel_spec, n_mc, seed)
    if path:
        if not os.path.isdir(cache_dir):
            os.makedirs(cache_dir)
        write_matrices(path, list(correlations.covariances))
    return correlations
