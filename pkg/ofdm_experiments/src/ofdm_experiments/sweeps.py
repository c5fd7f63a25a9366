#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Monte-Carlo sweeps over SNR, Doppler and pruning ratio

Each sweep point simulates fresh slots in chunks; chunk c of point p is seeded
with derive_seed(seed, kind, p, c), so results do not depend on the number of
worker threads. All estimators of a point see the same slots.
"""

from concurrent.futures import ThreadPoolExecutor
from collections import OrderedDict

import numpy as np

from ofdm_common.config import config_hash
from ofdm_common.core import derive_seed, make_rng
from ofdm_common.exceptions import ConfigurationError, UnknownNameError
from ofdm_common.node import ConfigurableNode
from ofdm_common.tables import provenance
from ofdm_fading.fading import ChannelSpec
from ofdm_fading.profiles import resolve_profile
from ofdm_link.frame import DOUBLE_DMRS, SINGLE_DMRS, PilotPattern
from ofdm_link.link import apply_channel, build_slot, equalize_and_count_errors

from ofdm_channelformer.config import ONLINE
from ofdm_channelformer.estimator import estimate_slot
from ofdm_channelformer.marshalling import input_from_ls, output_to_channel
from ofdm_channelformer.probe import attention_probe_run
from ofdm_training.dataset import DOPPLER_RANGE_HZ, SNR_RANGE_DB, generate_offline_dataset
from ofdm_training.labels import LABELS, MMSE, MmseLabelFilter, make_online_sample
from ofdm_pruning.finetune import FINE_TUNE_SAMPLES, fine_tune
from ofdm_pruning.pruning import prune_without_finetune

from ofdm_experiments.estimators import LS, MMSE_1D, MMSE_2D, EstimatorSet, SlotBatch
from ofdm_experiments.metrics import Accumulator, is_capped, metric_dg, metric_mse
from ofdm_experiments.results import PROBE_COLUMNS, SWEEP_COLUMNS, ExperimentResult

MSE_VS_SNR = 'mse_vs_snr'
MSE_VS_DOPPLER = 'mse_vs_doppler'
BER_VS_SNR = 'ber_vs_snr'
DG_VS_PRUNE_RATIO = 'dg_vs_prune_ratio'
DYNAMIC_ADAPTATION = 'dynamic_adaptation'
ATTENTION_PROBE = 'attention_probe'
LABEL_PRECISION = 'label_precision'
KINDS = (MSE_VS_SNR, MSE_VS_DOPPLER, DG_VS_PRUNE_RATIO, BER_VS_SNR, DYNAMIC_ADAPTATION,
         ATTENTION_PROBE, LABEL_PRECISION)

DESK_REALIZATIONS = 1000
NOMINAL_REALIZATIONS = 5000
CHUNK = 250

SNR_AXIS_DB = tuple(float(snr) for snr in range(-10, 31, 5))
DOPPLER_AXIS_HZ = tuple(float(f) for f in np.linspace(0.0, 194.0, 9))
PRUNE_AXIS = tuple(round(0.1 * i, 1) for i in range(10))
PROBE_AXIS_DB = (15.0,)
PRUNE_SNR_DB = 10.0
DOPPLER_SWEEP_SNR_DB = 15.0
FINE_TUNE_SUFFIX = '+finetune'

AXIS_NAMES = {
    MSE_VS_SNR: 'snr_db',
    BER_VS_SNR: 'snr_db',
    LABEL_PRECISION: 'snr_db',
    ATTENTION_PROBE: 'snr_db',
    MSE_VS_DOPPLER: 'doppler_hz',
    DG_VS_PRUNE_RATIO: 'prune_ratio',
}
DEFAULT_AXES = {
    MSE_VS_SNR: SNR_AXIS_DB,
    BER_VS_SNR: SNR_AXIS_DB,
    LABEL_PRECISION: SNR_AXIS_DB,
    ATTENTION_PROBE: PROBE_AXIS_DB,
    MSE_VS_DOPPLER: DOPPLER_AXIS_HZ,
    DG_VS_PRUNE_RATIO: PRUNE_AXIS,
}


def doppler_range(value):
    """
    [low, high] from a range, a single-element list or a scalar
    """
    values = [float(v) for v in np.atleast_1d(value)]
    if not 1 <= len(values) <= 2:
        raise ConfigurationError("Doppler range must have one or two values, got {}".format(
            value))
    return values[0], values[-1]


class SweepSpec(object):

    """
    What a sweep measures and on which realizations

    :param kind: one of KINDS
    :param axis: swept values (SNR in dB, Doppler in Hz or pruning ratio)
    :param realizations: slots per point
    :param estimators: estimator names, label kinds for label_precision
    :param doppler_hz: [low, high] Doppler range of the SNR and ratio sweeps
    :param fixed_snr_db: SNR of the Doppler and ratio sweeps
    :param weights: estimator name -> weight file
    """

    def __init__(self, kind, axis=None, realizations=DESK_REALIZATIONS, profile='ETU',
                 estimators=(LS, MMSE_1D, MMSE_2D), seed=0, doppler_hz=DOPPLER_RANGE_HZ,
                 fixed_snr_db=None, weights=None, profile_file=None, chunk=CHUNK, workers=1,
                 fine_tune=False, fine_tune_samples=FINE_TUNE_SAMPLES, genie_realizations=20000,
                 cache_dir=None, boost_db=5.0, snr_offset_db=0.0, label_offset=1,
                 profiles=None, block=None):
        if kind not in KINDS:
            raise UnknownNameError("Unknown experiment '{}', known: {}".format(
                kind, ", ".join(KINDS)))
        self.kind = kind
        self.axis = tuple(float(v) for v in (axis if axis is not None
                                             else DEFAULT_AXES.get(kind, ())))
        if kind != DYNAMIC_ADAPTATION and not self.axis:
            raise ValueError("Sweep {} has an empty axis".format(kind))
        if int(realizations) < 1:
            raise ValueError("Need at least one realization per point, got {}".format(
                realizations))
        if int(chunk) < 1:
            raise ValueError("Chunk size must be positive, got {}".format(chunk))
        low, high = doppler_range(doppler_hz)
        self.realizations = int(realizations)
        self.profile = profile
        self.profiles = list(profiles) if profiles else None
        self.block = block
        self.estimators = list(estimators)
        self.seed = int(seed)
        self.doppler_hz = (float(low), float(high))
        if fixed_snr_db is None:
            fixed_snr_db = PRUNE_SNR_DB if kind == DG_VS_PRUNE_RATIO else DOPPLER_SWEEP_SNR_DB
        self.fixed_snr_db = float(fixed_snr_db)
        self.weights = dict(weights or {})
        self.profile_file = profile_file
        self.chunk = int(chunk)
        self.workers = max(1, int(workers))
        self.fine_tune = bool(fine_tune)
        self.fine_tune_samples = int(fine_tune_samples)
        self.genie_realizations = int(genie_realizations)
        self.cache_dir = cache_dir
        self.boost_db = float(boost_db)
        self.snr_offset_db = float(snr_offset_db)
        self.label_offset = int(label_offset)
        if self.label_offset != 1:
            raise ConfigurationError(
                "Only a label offset of 1 symbol is supported, got {}".format(label_offset))

    def __repr__(self):
        return "SweepSpec({}, {} points, {} realizations)".format(
            self.kind, len(self.axis), self.realizations)

    @property
    def axis_name(self):
        return AXIS_NAMES.get(self.kind, 'realization')

    def to_dict(self):
        return OrderedDict([
            ('experiment', self.kind), ('axis', list(self.axis)),
            ('realizations', self.realizations), ('profile', self.profile),
            ('profiles', self.profiles), ('block', self.block),
            ('estimators', self.estimators), ('doppler_hz', list(self.doppler_hz)),
            ('fixed_snr_db', self.fixed_snr_db), ('weights', self.weights),
            ('profile_file', self.profile_file), ('chunk', self.chunk),
            ('fine_tune', self.fine_tune), ('fine_tune_samples', self.fine_tune_samples),
            ('genie_realizations', self.genie_realizations), ('boost_db', self.boost_db),
            ('snr_offset_db', self.snr_offset_db), ('label_offset', self.label_offset),
        ])

    def provenance(self):
        return provenance(config_hash(self.to_dict()), self.seed)

    @classmethod
    def from_settings(cls, settings, kind=None, realizations=None, seed=None):
        """
        Sweep description from a settings mapping

        Explicit arguments win over the settings (command line flags).
        """
        settings = dict(settings or {})
        kind = kind or settings.get('experiment')
        if not kind:
            raise ConfigurationError("Settings name no 'experiment'")
        axis = settings.get('axis')
        if axis is None:
            if AXIS_NAMES.get(kind) == 'snr_db':
                axis = settings.get('snr_db')
            elif kind == MSE_VS_DOPPLER:
                axis = settings.get('doppler_axis_hz')
            elif kind == DG_VS_PRUNE_RATIO:
                axis = (settings.get('pruning') or {}).get('ratios')
        doppler = DOPPLER_RANGE_HZ if kind == MSE_VS_DOPPLER else settings.get(
            'doppler_hz', DOPPLER_RANGE_HZ)
        online = settings.get('online', {}) or {}
        pruning = settings.get('pruning', {}) or {}
        defaults = list(LABELS) if kind == LABEL_PRECISION else [LS, MMSE_1D, MMSE_2D]
        estimators = settings.get('estimators', defaults)
        if kind == LABEL_PRECISION:
            estimators = [name for name in estimators if name in LABELS] or list(LABELS)
        elif kind in (DYNAMIC_ADAPTATION, ATTENTION_PROBE, DG_VS_PRUNE_RATIO):
            weights = settings.get('weights') or {}
            estimators = [name for name in estimators if name in weights] or sorted(weights)
        try:
            return cls(kind, axis=axis,
                       realizations=realizations or settings.get('realizations',
                                                                 DESK_REALIZATIONS),
                       profile=settings.get('profile', 'CUSTOM' if kind == LABEL_PRECISION
                                            else 'ETU'),
                       estimators=estimators,
                       seed=seed if seed is not None else settings.get('seed', 0),
                       doppler_hz=doppler, fixed_snr_db=settings.get('fixed_snr_db'),
                       weights=settings.get('weights'),
                       profile_file=settings.get('profile_file'),
                       chunk=settings.get('chunk', CHUNK), workers=settings.get('workers', 1),
                       fine_tune=pruning.get('fine_tune', False),
                       fine_tune_samples=pruning.get('fine_tune_samples', FINE_TUNE_SAMPLES),
                       genie_realizations=settings.get('genie_realizations', 20000),
                       cache_dir=settings.get('cache_dir'),
                       boost_db=online.get('boost_db', 5.0),
                       snr_offset_db=online.get('snr_offset_db', 0.0),
                       label_offset=online.get('label_offset', 1),
                       profiles=settings.get('profiles'), block=online.get('block'))
        except TypeError as e:
            raise ConfigurationError("Invalid sweep settings: {}".format(e))


def simulate_batch(channel_spec, pattern, snr_db, count, rng):
    """
    count slots with random payload through fresh channel realizations

    Draw order: channels, payload, noise.

    :rtype: ofdm_experiments.estimators.SlotBatch
    """
    H = channel_spec.realize_batch(count, rng)[1]
    bits = rng.integers(0, 2, size=(count, pattern.num_data_bits))
    X = build_slot(bits, pattern).grid
    Y = apply_channel(X, H, snr_db, rng)
    return SlotBatch(X, Y, H, bits, channel_spec, snr_db)


def per_slot_ber(batch, H_hat, pattern):
    return np.array([equalize_and_count_errors(batch.Y[i], H_hat[i], batch.bits[i], pattern)
                     for i in range(len(batch.Y))])


class SweepRunner(ConfigurableNode):

    """
    Runs one SweepSpec

    :type spec: SweepSpec
    :param networks: estimator name -> ModelWeights already in memory
    """

    def __init__(self, spec, networks=None, name='sweep', params=None):
        super(SweepRunner, self).__init__(name, params)
        self.spec = spec
        self.pdp = resolve_profile(spec.profile, spec.profile_file)
        kind = DOUBLE_DMRS if spec.kind == LABEL_PRECISION else SINGLE_DMRS
        self.pattern = PilotPattern(kind, boost_db=spec.boost_db, label_offset=spec.label_offset)
        self.estimator_set = EstimatorSet(self.pattern, spec.weights, networks,
                                          spec.genie_realizations, spec.seed, spec.cache_dir)
        self.label_filter = MmseLabelFilter(self.pattern.frame.num_subcarriers,
                                            self.pattern.frame.cp_samples, spec.boost_db,
                                            spec.snr_offset_db)
        self._fine_tune_sets = {}

    def run(self):
        """
        :rtype: ofdm_experiments.results.ExperimentResult
        """
        spec = self.spec
        if spec.kind == DYNAMIC_ADAPTATION:
            from ofdm_experiments.dynamic import run_dynamic_adaptation
            return run_dynamic_adaptation(spec, networks=self.estimator_set.networks,
                                          params=self.params)
        if spec.kind == ATTENTION_PROBE:
            return self.run_attention_probe()
        if spec.kind == LABEL_PRECISION:
            unknown = [label for label in spec.estimators if label not in LABELS]
            if unknown:
                raise UnknownNameError("Unknown online labels {}".format(unknown))
        else:
            self.estimator_set.validate(spec.estimators)
        self.loginfo("Running {} on {}".format(spec, self.pdp.name))
        rows = []
        for index, value in enumerate(spec.axis):
            accumulators = self.evaluate_point(index, value)
            for estimator, accumulator in accumulators.items():
                rows.append((spec.axis_name, value, estimator, accumulator.mean,
                             accumulator.stderr, accumulator.count))
            self.loginfo("{} = {:g}: {}".format(spec.axis_name, value, ", ".join(
                "{} {:.4g}".format(name, acc.mean) for name, acc in accumulators.items())))
        return ExperimentResult(spec.kind, SWEEP_COLUMNS, rows, spec.provenance())

    def point_conditions(self, value):
        """
        Channel spec and SNR of a sweep point
        """
        spec = self.spec
        if spec.kind == MSE_VS_DOPPLER:
            return ChannelSpec(self.pdp, value, value), spec.fixed_snr_db
        channel_spec = ChannelSpec(self.pdp, *spec.doppler_hz)
        if spec.kind == DG_VS_PRUNE_RATIO:
            return channel_spec, spec.fixed_snr_db
        return channel_spec, value

    def chunks(self):
        sizes = [self.spec.chunk] * (self.spec.realizations // self.spec.chunk)
        if self.spec.realizations % self.spec.chunk:
            sizes.append(self.spec.realizations % self.spec.chunk)
        return sizes

    def evaluate_point(self, index, value):
        """
        Metric accumulators of every estimator at one sweep point

        :rtype: OrderedDict
        """
        channel_spec, snr_db = self.point_conditions(value)
        metrics = self.point_metrics(value)
        seeds = [derive_seed(self.spec.seed, self.spec.kind, index, c)
                 for c in range(len(self.chunks()))]

        def run_chunk(job):
            seed, count = job
            batch = simulate_batch(channel_spec, self.pattern, snr_db, count, make_rng(seed))
            return OrderedDict((name, metric(batch)) for name, metric in metrics.items())

        accumulators = OrderedDict((name, Accumulator()) for name in metrics)
        with ThreadPoolExecutor(max_workers=self.spec.workers) as executor:
            for values in executor.map(run_chunk, zip(seeds, self.chunks())):
                for name, chunk_values in values.items():
                    accumulators[name].add(chunk_values)
        return accumulators

    def point_metrics(self, value):
        """
        name -> function(SlotBatch) returning one metric value per slot
        """
        kind = self.spec.kind
        estimate = self.estimator_set.estimate
        metrics = OrderedDict()
        if kind == LABEL_PRECISION:
            for label in self.spec.estimators:
                metrics[label] = self._label_metric(label)
        elif kind == DG_VS_PRUNE_RATIO:
            for name, weights in self.pruned_variants(value).items():
                metrics[name] = self._dg_metric(weights)
        elif kind == BER_VS_SNR:
            for name in self.spec.estimators:
                metrics[name] = (lambda n: lambda batch: per_slot_ber(
                    batch, estimate(n, batch), self.pattern))(name)
        else:
            for name in self.spec.estimators:
                metrics[name] = (lambda n: lambda batch: metric_mse(
                    estimate(n, batch), batch.H))(name)
        return metrics

    def _dg_metric(self, weights):
        def metric(batch):
            H_ls = self.estimator_set.estimate(LS, batch)
            features = input_from_ls(batch.pilot_estimate(self.pattern))
            H_method = estimate_slot(weights, features)
            capped = int(np.sum(is_capped(H_method, batch.H)))
            if capped:
                self.logwarn("{} slots reached the denoise gain cap".format(capped))
            return metric_dg(H_ls, H_method, batch.H)
        return metric

    def _label_metric(self, label):
        frame = self.pattern.frame
        label_symbols = list(self.pattern.label_symbols)

        def metric(batch):
            errors = []
            for i in range(len(batch.Y)):
                sample = make_online_sample(batch.Y[i], self.pattern, batch.snr_db, label,
                                            self.label_filter if label == MMSE else None, i)
                target = output_to_channel(sample.label, ONLINE, frame)
                true = batch.H[i][:, label_symbols]
                errors.append(np.mean(np.abs(target - true) ** 2))
            return np.array(errors)
        return metric

    def pruned_variants(self, ratio):
        """
        Networks pruned to ratio, plus their fine-tuned versions when enabled
        """
        variants = OrderedDict()
        for name in self.spec.estimators:
            base = self.estimator_set.network(name)
            variants[name] = prune_without_finetune(base, ratio)
            if self.spec.fine_tune and ratio > 0:
                tuned = prune_without_finetune(base, ratio)
                fine_tune(tuned, self.fine_tune_set(base.mode), seed=self.spec.seed,
                          params=self.params)
                variants[name + FINE_TUNE_SUFFIX] = tuned
        return variants

    def fine_tune_set(self, mode):
        if mode not in self._fine_tune_sets:
            channel_spec = ChannelSpec(self.pdp, *self.spec.doppler_hz)
            self._fine_tune_sets[mode] = generate_offline_dataset(
                channel_spec, self.spec.fine_tune_samples, mode, SNR_RANGE_DB,
                derive_seed(self.spec.seed, 'finetune'), workers=self.spec.workers)
        return self._fine_tune_sets[mode]

    def run_attention_probe(self):
        """
        Mean attention magnitude per head, channel and input element
        """
        spec = self.spec
        names = [name for name in spec.estimators
                 if name in spec.weights or name in self.estimator_set.networks]
        if not names:
            raise ConfigurationError("The attention probe needs a network estimator")
        weights = self.estimator_set.network(names[0])
        features = []
        for index, value in enumerate(spec.axis):
            channel_spec, snr_db = self.point_conditions(value)
            for c, count in enumerate(self.chunks()):
                rng = make_rng(derive_seed(spec.seed, spec.kind, index, c))
                batch = simulate_batch(channel_spec, self.pattern, snr_db, count, rng)
                features.append(input_from_ls(batch.pilot_estimate(self.pattern)))
        probe = attention_probe_run(weights, np.concatenate(features))
        self.loginfo("Probed {} heads of {} on {} slots".format(probe.n_heads, names[0],
                                                                 probe.count))
        return ExperimentResult(spec.kind, PROBE_COLUMNS, probe.rows(), spec.provenance())


def run_sweep(spec, networks=None, params=None):
    """
    Run a sweep and return its table

    :type spec: SweepSpec
    :param networks: estimator name -> ModelWeights, used before weight files
    :rtype: ofdm_experiments.results.ExperimentResult
    """
    return SweepRunner(spec, networks, params=params).run()
