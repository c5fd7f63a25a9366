#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Named channel estimators evaluated by the sweeps

Every estimator maps a batch of received slots to full-slot estimates
[B, 72, 14]. Networks are addressed by the names of their weight files in the
settings.
"""

import os
import threading
from collections import OrderedDict

from ofdm_common.exceptions import ConfigurationError, UnknownNameError
from ofdm_estimators.ddce import dd_ce
from ofdm_estimators.genie import genie_correlations
from ofdm_estimators.interpolation import bilinear_to_frame
from ofdm_estimators.ls import ls_estimate
from ofdm_estimators.mmse import fd_mmse_1d_frame, fd_mmse_2d
from ofdm_link.link import extract_pilot_ls_input

from ofdm_channelformer.estimator import estimate_slot
from ofdm_channelformer.marshalling import input_from_ls
from ofdm_channelformer.weights_io import load_weights

LS = 'LS'
MMSE_1D = '1D-MMSE'
MMSE_2D = '2D-MMSE'
DDCE = 'DD-CE'
PERFECT = 'perfect'
NETWORK_PREFIX = 'channelformer'

GENIE_REALIZATIONS = 20000


class SlotBatch(object):

    """
    One batch of simulated slots, shared by every estimator of a sweep point

    :param X: transmitted grids [B, 72, 14]
    :param Y: received grids [B, 72, 14]
    :param H: true channel [B, 72, 14]
    :param bits: payload bits [B, num_data_bits]
    """

    def __init__(self, X, Y, H, bits, channel_spec, snr_db):
        self.X = X
        self.Y = Y
        self.H = H
        self.bits = bits
        self.channel_spec = channel_spec
        self.snr_db = snr_db
        self._pilot_estimate = None

    def pilot_estimate(self, pattern):
        if self._pilot_estimate is None:
            self._pilot_estimate = ls_estimate(*extract_pilot_ls_input(self.Y, pattern))
        return self._pilot_estimate


class EstimatorSet(object):

    """
    Resolves estimator names and holds their shared state

    :param pattern: pilot pattern of the simulated slots
    :param weight_files: estimator name -> weight file
    :param networks: estimator name -> ModelWeights already in memory
    :param genie_realizations: realizations behind the genie correlations
    :param cache_dir: optional directory of the correlation cache
    """

    def __init__(self, pattern, weight_files=None, networks=None,
                 genie_realizations=GENIE_REALIZATIONS, genie_seed=0, cache_dir=None):
        self.pattern = pattern
        self.weight_files = dict(weight_files or {})
        self.networks = dict(networks or {})
        self.genie_realizations = genie_realizations
        self.genie_seed = genie_seed
        self.cache_dir = cache_dir
        self._correlations = {}
        self._lock = threading.Lock()
        self._builtin = OrderedDict([
            (LS, self._ls),
            (MMSE_1D, self._mmse_1d),
            (MMSE_2D, self._mmse_2d),
            (DDCE, self._ddce),
            (PERFECT, self._perfect),
        ])

    def validate(self, names):
        """
        :raises UnknownNameError: a name is neither built in nor a network
        :raises ConfigurationError: a network has no readable weight file
        """
        if not names:
            raise ConfigurationError("No estimators configured")
        for name in names:
            if name in self._builtin or name in self.networks:
                continue
            if name in self.weight_files:
                if not os.path.isfile(self.weight_files[name]):
                    raise ConfigurationError("Weight file {} of estimator {} not found".format(
                        self.weight_files[name], name))
                continue
            if name.startswith(NETWORK_PREFIX):
                raise ConfigurationError("No weight file configured for estimator {}".format(
                    name))
            raise UnknownNameError("Unknown estimator '{}' (built in: {})".format(
                name, ", ".join(self._builtin)))

    def network(self, name):
        with self._lock:
            if name not in self.networks:
                self.networks[name] = load_weights(self.weight_files[name])
            return self.networks[name]

    def correlations(self, channel_spec):
        with self._lock:
            key = channel_spec.key()
            if key not in self._correlations:
                self._correlations[key] = genie_correlations(
                    channel_spec, self.genie_realizations, self.genie_seed, self.cache_dir)
            return self._correlations[key]

    def estimate(self, name, batch):
        """
        :type batch: SlotBatch
        :return: [B, 72, 14]
        """
        if name in self._builtin:
            return self._builtin[name](batch)
        if name in self.networks or name in self.weight_files:
            features = input_from_ls(batch.pilot_estimate(self.pattern))
            return estimate_slot(self.network(name), features)
        raise UnknownNameError("Unknown estimator '{}'".format(name))

    def _ls(self, batch):
        return bilinear_to_frame(batch.pilot_estimate(self.pattern), self.pattern)

    def _mmse_1d(self, batch):
        return fd_mmse_1d_frame(batch.pilot_estimate(self.pattern),
                                self.correlations(batch.channel_spec), batch.snr_db,
                                self.pattern)

    def _mmse_2d(self, batch):
        return fd_mmse_2d(batch.Y, batch.X, self.correlations(batch.channel_spec), batch.snr_db,
                          self.pattern)

    def _ddce(self, batch):
        return dd_ce(batch.Y, self._ls(batch), self.pattern, batch.snr_db)

    def _perfect(self, batch):
        return batch.H
