#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Online adaptation while the channel profile switches every block of slots
"""

from collections import OrderedDict

import numpy as np

from ofdm_common.core import make_rng
from ofdm_common.exceptions import ConfigurationError
from ofdm_common.node import ConfigurableNode
from ofdm_fading.fading import ChannelSpec
from ofdm_fading.profiles import resolve_profile
from ofdm_link.frame import DOUBLE_DMRS, PilotPattern
from ofdm_link.link import apply_channel, build_slot, extract_pilot_ls_input
from ofdm_estimators.ls import ls_estimate

from ofdm_channelformer.config import ONLINE
from ofdm_channelformer.estimator import estimate_slot
from ofdm_channelformer.marshalling import input_from_ls
from ofdm_channelformer.weights_io import load_weights
from ofdm_training.dataset import DOPPLER_RANGE_HZ
from ofdm_training.labels import LABELS, MMSE, POWER_BOOST, MmseLabelFilter, make_online_sample
from ofdm_training.online import OnlineTrainer

from ofdm_experiments.metrics import Accumulator, metric_mse
from ofdm_experiments.results import DYNAMIC_COLUMNS, ExperimentResult

PROFILE_SEQUENCE = ('ETU', 'CUSTOM', 'EVA', 'LDS')
DESK_BLOCK = 2000
NOMINAL_BLOCK = 10000
AVERAGING_WINDOW = 50
SETTLED_SAMPLES = 500
SNR_RANGE_DB = (15.0, 25.0)
FROZEN = 'frozen'
ADAPTIVE = 'online'


def model_label(name, variant):
    return "{}/{}".format(name, variant)


class SegmentSummary(object):

    """
    MSE statistics of one model on one profile segment

    settled is the mean over the last SETTLED_SAMPLES slots of the segment.
    """

    def __init__(self, segment, profile, model, mean, settled, settled_stderr):
        self.segment = segment
        self.profile = profile
        self.model = model
        self.mean = mean
        self.settled = settled
        self.settled_stderr = settled_stderr

    def __repr__(self):
        return "SegmentSummary({} {} {}: settled {:.4g})".format(
            self.segment, self.profile, self.model, self.settled)


class DynamicAdaptation(ConfigurableNode):

    """
    Frozen and online-adapted copies of each network on a profile sequence

    Every slot is first estimated by every model, then the adaptive copies
    train on it. All models see the same slots.

    Parameters: online.label ('boost' or 'mmse'), online.boost_db,
    online.snr_offset_db and the OnlineTrainer parameters.

    :param networks: name -> online-mode ModelWeights; copies are adapted
    :param profiles: profile names in segment order
    :param block: slots per segment
    """

    def __init__(self, networks, profiles=PROFILE_SEQUENCE, block=DESK_BLOCK, seed=0,
                 snr_range=SNR_RANGE_DB, doppler_hz=DOPPLER_RANGE_HZ, profile_file=None,
                 name='online_sim', params=None):
        super(DynamicAdaptation, self).__init__(name, params)
        if not networks:
            raise ConfigurationError("Dynamic adaptation needs at least one network")
        if int(block) < 1:
            raise ValueError("Segments need at least one slot, got {}".format(block))
        for network_name, weights in networks.items():
            if weights.mode != ONLINE:
                raise ConfigurationError("Network {} is {}, online adaptation needs {}".format(
                    network_name, weights.mode, ONLINE))
        self.block = int(block)
        self.seed = int(seed)
        self.snr_range = tuple(snr_range)
        self.channel_specs = [ChannelSpec(resolve_profile(profile, profile_file), *doppler_hz)
                              for profile in profiles]
        self.label = self.get_param('online.label', POWER_BOOST)
        if self.label not in LABELS:
            raise ConfigurationError("Unknown online label '{}'".format(self.label))
        boost_db = float(self.get_param('online.boost_db', 5.0))
        self.pattern = PilotPattern(DOUBLE_DMRS, boost_db=boost_db)
        self.label_filter = MmseLabelFilter(boost_db=boost_db, snr_offset_db=float(
            self.get_param('online.snr_offset_db', 0.0)))
        self.models = OrderedDict()
        self.trainers = OrderedDict()
        for network_name, weights in networks.items():
            self.models[model_label(network_name, FROZEN)] = weights
            adaptive = weights.copy()
            self.models[model_label(network_name, ADAPTIVE)] = adaptive
            self.trainers[model_label(network_name, ADAPTIVE)] = OnlineTrainer(
                adaptive, name=name + '.' + network_name, params=self.params)
        self.trace = OrderedDict((model, []) for model in self.models)

    def simulate(self, segment, index, channel_spec):
        """
        Received double DM-RS slot, its channel and SNR
        """
        rng = make_rng(self.seed, 'dynamic', segment, index)
        snr_db = rng.uniform(*self.snr_range)
        H = channel_spec.realize(rng).H
        X = build_slot(None, self.pattern, rng)
        Y = apply_channel(X, H, snr_db, rng).grid
        return Y, H, snr_db

    def step(self, segment, index, channel_spec):
        Y, H, snr_db = self.simulate(segment, index, channel_spec)
        features = input_from_ls(ls_estimate(*extract_pilot_ls_input(Y, self.pattern)))
        for model, weights in self.models.items():
            self.trace[model].append(metric_mse(estimate_slot(weights, features), H))
        sample = make_online_sample(Y, self.pattern, snr_db, self.label,
                                    self.label_filter if self.label == MMSE else None,
                                    segment * self.block + index)
        for trainer in self.trainers.values():
            trainer.push(sample)

    def run(self):
        """
        :return: per-window rows (realization, segment, profile, model, mse)
        :rtype: list
        """
        for segment, channel_spec in enumerate(self.channel_specs):
            self.loginfo("Segment {}: {} for {} slots".format(segment, channel_spec.pdp.name,
                                                              self.block))
            for index in range(self.block):
                self.step(segment, index, channel_spec)
            for summary in self.segment_summaries(segment):
                self.loginfo("{}: mean {:.4g}, settled {:.4g}".format(
                    summary.model, summary.mean, summary.settled))
        return self.rows()

    def rows(self, window=AVERAGING_WINDOW):
        """
        MSE averaged over consecutive windows inside each segment
        """
        rows = []
        for segment, channel_spec in enumerate(self.channel_specs):
            start = segment * self.block
            for offset in range(0, self.block, window):
                first = start + offset
                last = min(start + self.block, first + window)
                for model, values in self.trace.items():
                    if len(values) < last:
                        continue
                    rows.append((first, segment, channel_spec.pdp.name, model,
                                 float(np.mean(values[first:last]))))
        return rows

    def segment_summaries(self, segment, settled=SETTLED_SAMPLES):
        start = segment * self.block
        summaries = []
        for model, values in self.trace.items():
            values = np.asarray(values[start:start + self.block])
            if not len(values):
                continue
            tail = Accumulator()
            tail.add(values[-settled:])
            summaries.append(SegmentSummary(segment, self.channel_specs[segment].pdp.name, model,
                                            float(np.mean(values)), tail.mean, tail.stderr))
        return summaries

    def summaries(self, settled=SETTLED_SAMPLES):
        return [summary for segment in range(len(self.channel_specs))
                for summary in self.segment_summaries(segment, settled)]


def run_dynamic_adaptation(spec, networks=None, params=None):
    """
    Dynamic adaptation from a SweepSpec of kind dynamic_adaptation

    Networks are the sweep's estimators, taken from networks or loaded from
    the weight files.

    :rtype: ofdm_experiments.results.ExperimentResult
    """
    networks = dict(networks or {})
    selected = OrderedDict()
    for name in spec.estimators:
        if name in networks:
            selected[name] = networks[name]
        elif name in spec.weights:
            selected[name] = load_weights(spec.weights[name])
        else:
            raise ConfigurationError("No weight file configured for estimator {}".format(name))
    harness = DynamicAdaptation(selected, spec.profiles or PROFILE_SEQUENCE,
                                spec.block or DESK_BLOCK, spec.seed, SNR_RANGE_DB,
                                spec.doppler_hz, spec.profile_file, params=params)
    result = ExperimentResult(spec.kind, DYNAMIC_COLUMNS, harness.run(), spec.provenance())
    result.summaries = harness.summaries()
    return result
