#!/usr/bin/env python
#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Sweep descriptions, the estimator registry and small Monte-Carlo sweeps
"""
import os
import shutil
import tempfile
import unittest

import numpy as np
from scipy.stats import spearmanr

from ofdm_common.exceptions import ConfigurationError, UnknownNameError
from ofdm_common.tables import SCHEMA, read_table
from ofdm_link.frame import PilotPattern
from ofdm_channelformer.config import ModelConfig
from ofdm_channelformer.model import build
from ofdm_experiments.estimators import EstimatorSet
from ofdm_experiments.results import PROBE_COLUMNS, SWEEP_COLUMNS
from ofdm_experiments.sweeps import (ATTENTION_PROBE, BER_VS_SNR, DG_VS_PRUNE_RATIO,
                                     DOPPLER_AXIS_HZ, LABEL_PRECISION, MSE_VS_DOPPLER,
                                     MSE_VS_SNR, SNR_AXIS_DB, SweepSpec, run_sweep)

SLOW = os.environ.get("OFDM_SLOW_TESTS") == "1"


def online_network():
    return build(ModelConfig.online(), seed=3)


class TestSweepSpec(unittest.TestCase):

    def test_defaults(self):
        """
        SNR sweeps run -10..30 dB, the Doppler sweep the extended 0..194 Hz range
        """
        self.assertEqual(SweepSpec(MSE_VS_SNR).axis, SNR_AXIS_DB)
        self.assertEqual(len(SNR_AXIS_DB), 9)
        doppler = SweepSpec(MSE_VS_DOPPLER)
        self.assertEqual(doppler.axis, DOPPLER_AXIS_HZ)
        self.assertEqual(doppler.axis[-1], 194.0)
        self.assertEqual(doppler.fixed_snr_db, 15.0)
        self.assertEqual(SweepSpec(DG_VS_PRUNE_RATIO).fixed_snr_db, 10.0)
        self.assertEqual(SweepSpec(MSE_VS_SNR).realizations, 1000)

    def test_invalid(self):
        """
        Unknown kinds, empty axes and zero realizations are rejected
        """
        with self.assertRaises(UnknownNameError):
            SweepSpec('mse_vs_weather')
        with self.assertRaises(ValueError):
            SweepSpec(MSE_VS_SNR, axis=[])
        with self.assertRaises(ValueError):
            SweepSpec(MSE_VS_SNR, realizations=0)
        with self.assertRaises(ConfigurationError):
            SweepSpec(LABEL_PRECISION, label_offset=2)

    def test_from_settings(self):
        """
        Settings fill the sweep, explicit arguments win
        """
        settings = {'experiment': MSE_VS_SNR, 'snr_db': [0, 10], 'realizations': 30,
                    'estimators': ['LS'], 'seed': 4, 'doppler_hz': [10, 20]}
        spec = SweepSpec.from_settings(settings)
        self.assertEqual(spec.axis, (0.0, 10.0))
        self.assertEqual(spec.realizations, 30)
        self.assertEqual(spec.seed, 4)
        self.assertEqual(spec.doppler_hz, (10.0, 20.0))
        spec = SweepSpec.from_settings(settings, realizations=5000, seed=9)
        self.assertEqual(spec.realizations, 5000)
        self.assertEqual(spec.seed, 9)
        with self.assertRaises(ConfigurationError):
            SweepSpec.from_settings({})

    def test_from_settings_label_kinds(self):
        """
        Label precision keeps only label kinds, network sweeps only networks
        """
        settings = {'estimators': ['LS', 'mmse'], 'weights': {'net': 'net.cfw'}}
        self.assertEqual(SweepSpec.from_settings(settings, LABEL_PRECISION).estimators,
                         ['mmse'])
        self.assertEqual(SweepSpec.from_settings(settings, DG_VS_PRUNE_RATIO).estimators,
                         ['net'])

    def test_provenance_depends_on_settings(self):
        first = dict(SweepSpec(MSE_VS_SNR, seed=1).provenance())
        second = dict(SweepSpec(MSE_VS_SNR, seed=1, realizations=10).provenance())
        self.assertEqual(first['schema'], SCHEMA)
        self.assertNotEqual(first['config_hash'], second['config_hash'])


class TestEstimatorSet(unittest.TestCase):

    def test_validation(self):
        """
        Unknown names and networks without weight files fail before any simulation
        """
        estimators = EstimatorSet(PilotPattern(), weight_files={'net': '/nonexistent/net.cfw'})
        estimators.validate(['LS', '1D-MMSE', '2D-MMSE', 'DD-CE', 'perfect'])
        with self.assertRaises(UnknownNameError):
            estimators.validate(['LS', 'wavelet'])
        with self.assertRaises(ConfigurationError):
            estimators.validate(['channelformer_offline'])
        with self.assertRaises(ConfigurationError):
            estimators.validate(['net'])
        with self.assertRaises(ConfigurationError):
            estimators.validate([])


class TestMseSweep(unittest.TestCase):

    def spec(self, estimators=('LS', 'perfect'), workers=1, **kwargs):
        return SweepSpec(MSE_VS_SNR, axis=(0.0, 20.0), realizations=24, estimators=estimators,
                         seed=5, chunk=10, workers=workers, **kwargs)

    def test_rows(self):
        """
        One row per point and estimator, with the requested realization count
        """
        result = run_sweep(self.spec())
        self.assertEqual(result.columns, SWEEP_COLUMNS)
        self.assertEqual(len(result), 4)
        for record in result.records():
            self.assertEqual(record['n'], 24)
            self.assertEqual(record['axis'], 'snr_db')
        self.assertEqual(result.point('perfect', 0.0)['mean'], 0.0)
        low, high = [mean for _, mean in result.series('LS')]
        self.assertGreater(low, high)

    def test_paired_and_thread_independent(self):
        """
        Estimators see the same slots whatever else runs, on any number of threads
        """
        alone = run_sweep(self.spec(estimators=('LS',)))
        threaded = run_sweep(self.spec(workers=3))
        self.assertEqual(alone.series('LS'), threaded.series('LS'))

    def test_mmse_helps_at_low_snr(self):
        """
        1D FD-MMSE beats interpolated LS at 0 dB
        """
        result = run_sweep(self.spec(estimators=('LS', '1D-MMSE', 'DD-CE'),
                                     genie_realizations=1000))
        self.assertLess(result.point('1D-MMSE', 0.0)['mean'], result.point('LS', 0.0)['mean'])
        for record in result.records():
            self.assertTrue(np.isfinite(record['mean']))

    def test_write_and_determinism(self):
        """
        The CSV carries provenance and identical runs write identical files
        """
        directory = tempfile.mkdtemp()
        try:
            paths = [os.path.join(directory, name) for name in ('a.csv', 'b.csv')]
            for path in paths:
                run_sweep(self.spec()).write(path)
            with open(paths[0], 'rb') as first, open(paths[1], 'rb') as second:
                self.assertEqual(first.read(), second.read())
            frame, entries = read_table(paths[0], SWEEP_COLUMNS)
            self.assertEqual(len(frame), 4)
            self.assertEqual(entries['seed'], '5')
            self.assertEqual(entries['schema'], SCHEMA)
        finally:
            shutil.rmtree(directory)

    def test_unknown_estimator(self):
        with self.assertRaises(UnknownNameError):
            run_sweep(self.spec(estimators=('LS', 'wavelet')))

    @unittest.skipUnless(SLOW, "set OFDM_SLOW_TESTS=1")
    def test_estimator_ordering(self):
        """
        2D FD-MMSE <= 1D FD-MMSE <= LS at every SNR, MSE falling with SNR
        """
        spec = SweepSpec(MSE_VS_SNR, realizations=1000, estimators=('LS', '1D-MMSE', '2D-MMSE'),
                         seed=1, workers=4)
        result = run_sweep(spec)
        for value in spec.axis:
            ls, one, two = [result.point(name, value) for name in ('LS', '1D-MMSE', '2D-MMSE')]
            self.assertLess(two['mean'] + 2 * two['stderr'], one['mean'])
            self.assertLess(one['mean'] + 2 * one['stderr'], ls['mean'])
        for name in ('LS', '1D-MMSE', '2D-MMSE'):
            values, means = zip(*result.series(name))
            self.assertLess(spearmanr(values, means)[0], -0.95)


class TestOtherSweeps(unittest.TestCase):

    def test_ber_perfect_csi_is_lower_bound(self):
        """
        Perfect channel knowledge has the lowest bit error ratio
        """
        spec = SweepSpec(BER_VS_SNR, axis=(5.0,), realizations=30, estimators=('LS', 'perfect'),
                         seed=2, chunk=15)
        result = run_sweep(spec)
        perfect, ls = result.point('perfect', 5.0), result.point('LS', 5.0)
        self.assertLess(perfect['mean'], ls['mean'])
        self.assertGreater(perfect['mean'], 0.0)

    def test_doppler_sweep(self):
        spec = SweepSpec(MSE_VS_DOPPLER, axis=(0.0, 194.0), realizations=10,
                         estimators=('LS',), seed=2)
        result = run_sweep(spec)
        self.assertEqual([value for value, _ in result.series('LS')], [0.0, 194.0])
        self.assertEqual(result.point('LS', 194.0)['axis'], 'doppler_hz')

    def test_prune_ratio_sweep(self):
        """
        Every ratio reports a finite gain of the pruned network
        """
        spec = SweepSpec(DG_VS_PRUNE_RATIO, axis=(0.0, 0.5), realizations=8,
                         estimators=('net',), seed=2)
        result = run_sweep(spec, networks={'net': online_network()})
        self.assertEqual(result.estimators(), ['net'])
        self.assertEqual(len(result), 2)
        for record in result.records():
            self.assertTrue(np.isfinite(record['mean']))
            self.assertEqual(record['axis'], 'prune_ratio')

    def test_label_precision(self):
        """
        Boosted labels follow the boosted noise level, MMSE labels are better
        """
        spec = SweepSpec(LABEL_PRECISION, axis=(10.0, 30.0), realizations=40,
                         estimators=('boost', 'mmse'), seed=2, profile='CUSTOM')
        result = run_sweep(spec)
        for snr_db in (10.0, 30.0):
            boost = result.point('boost', snr_db)['mean']
            self.assertLess(abs(boost / 10 ** (-(snr_db + 5.0) / 10.0) - 1.0), 0.1)
        boost = result.point('boost', 10.0)['mean']
        self.assertLess(result.point('mmse', 10.0)['mean'], boost)

    def test_attention_sweep(self):
        """
        One row per head, channel and input element
        """
        spec = SweepSpec(ATTENTION_PROBE, axis=(15.0,), realizations=6, estimators=('net',),
                         seed=2)
        result = run_sweep(spec, networks={'net': online_network()})
        self.assertEqual(result.columns, PROBE_COLUMNS)
        self.assertEqual(len(result), 2 * 2 * 36)
        for record in result.records():
            self.assertGreaterEqual(record['mean_abs'], 0.0)

    def test_attention_sweep_needs_network(self):
        spec = SweepSpec(ATTENTION_PROBE, realizations=2, estimators=('LS',))
        with self.assertRaises(ConfigurationError):
            run_sweep(spec)


if __name__ == '__main__':
    unittest.main()
