#!/usr/bin/env python
#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Tests for the QPSK/OFDM link
"""
import itertools
import unittest

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_fading.fading import realize_channel
from ofdm_fading.profiles import PowerDelayProfile, STANDARD_PROFILES
from ofdm_link.frame import DOUBLE_DMRS, SINGLE_DMRS, PilotPattern, Slot
from ofdm_link.link import (SnrSpec, apply_channel, build_slot, equalize_and_count_errors,
                            extract_pilot_ls_input)
from ofdm_link.modulation import qpsk_demodulate, qpsk_modulate
from ofdm_link.ofdm import ofdm_modulate, ofdm_time_domain_roundtrip, time_domain_channel


class TestQpsk(unittest.TestCase):

    def test_gray_map(self):
        """
        Tests the fixed Gray mapping
        """
        symbols = qpsk_modulate([0, 0, 0, 1, 1, 1, 1, 0]) * np.sqrt(2)
        np.testing.assert_allclose(symbols, [1 + 1j, 1 - 1j, -1 - 1j, -1 + 1j])
        np.testing.assert_allclose(np.abs(symbols / np.sqrt(2)), 1.0)

    def test_round_trip_and_gray_property(self):
        pairs = list(itertools.product([0, 1], repeat=2))
        for pair in pairs:
            np.testing.assert_array_equal(qpsk_demodulate(qpsk_modulate(pair)), pair)
        points = {pair: qpsk_modulate(pair)[0] for pair in pairs}
        for a, b in itertools.combinations(pairs, 2):
            if np.isclose(abs(points[a] - points[b]), np.sqrt(2)):
                self.assertEqual(sum(x != y for x, y in zip(a, b)), 1)

    def test_odd_bits(self):
        with self.assertRaises(ShapeError):
            qpsk_modulate([0, 1, 1])


class TestSlot(unittest.TestCase):

    def test_single_dmrs_counts(self):
        """
        Tests pilot comb alternation and resource element counts
        """
        pattern = PilotPattern(SINGLE_DMRS)
        X = build_slot(None, pattern, rng=1)
        self.assertEqual(X.role, Slot.TRANSMITTED)
        self.assertEqual(np.count_nonzero(X.grid[:, 0]), 36)
        self.assertEqual(np.count_nonzero(X.grid[:, 12]), 36)
        np.testing.assert_array_equal(np.nonzero(X.grid[:, 0])[0], np.arange(0, 72, 2))
        np.testing.assert_array_equal(np.nonzero(X.grid[:, 12])[0], np.arange(1, 72, 2))
        self.assertEqual(pattern.num_data_res, 12 * 72)
        self.assertEqual(np.count_nonzero(X.grid[:, list(pattern.data_symbols)]), 12 * 72)

    def test_double_dmrs_boost(self):
        """
        Tests that label symbols carry 5 dB more power per resource element
        """
        pattern = PilotPattern(DOUBLE_DMRS, boost_db=5.0)
        X = build_slot(None, pattern, rng=2)
        self.assertEqual(pattern.label_symbols, (1, 13))
        self.assertEqual(len(pattern.data_symbols), 10)
        np.testing.assert_allclose(np.abs(X.grid[:, 1]) ** 2, 10 ** 0.5)
        np.testing.assert_allclose(np.abs(X.grid[:, 13]) ** 2, 10 ** 0.5)
        np.testing.assert_allclose(np.abs(X.grid[:, pattern.data_symbols[0]]) ** 2, 1.0)
        self.assertGreater(pattern.average_power_delta_db(), 0.0)
        self.assertEqual(PilotPattern(SINGLE_DMRS).average_power_delta_db(), 0.0)

    def test_label_offset_validation(self):
        with self.assertRaises(ValueError):
            PilotPattern(DOUBLE_DMRS, label_offset=2)

    def test_deterministic_grid(self):
        pattern = PilotPattern(SINGLE_DMRS)
        zeros = np.zeros(pattern.num_data_bits, dtype=int)
        np.testing.assert_array_equal(build_slot(zeros, pattern).grid,
                                      build_slot(zeros, PilotPattern(SINGLE_DMRS)).grid)
        with self.assertRaises(ShapeError):
            build_slot(zeros[:-2], pattern)


class TestChannel(unittest.TestCase):

    def setUp(self):
        self.pattern = PilotPattern(SINGLE_DMRS)
        self.X = build_slot(None, self.pattern, rng=3)

    def test_noise_off(self):
        """
        Tests Y = H o X without noise and Y = X for a unit channel
        """
        H = realize_channel(STANDARD_PROFILES["ETU"], 50.0, 14, 4).H
        Y = apply_channel(self.X, H, SnrSpec(float("inf")))
        np.testing.assert_array_equal(Y.grid, H * self.X.grid)
        np.testing.assert_array_equal(apply_channel(self.X, np.ones((72, 14)),
                                                    float("inf")).grid, self.X.grid)

    def test_noise_variance(self):
        X = np.ones((100, 72, 14))
        Y = apply_channel(X, np.ones((72, 14)), 10.0, rng=5)
        self.assertAlmostEqual(np.var(Y - X) / 0.1, 1.0, delta=0.02)

    def test_dimension_mismatch(self):
        with self.assertRaises(ShapeError):
            apply_channel(self.X, np.ones((72, 12)), 10.0)

    def test_pilot_extraction(self):
        """
        Tests ordering and shape of the pilot matrices
        """
        tagged = np.arange(72)[:, None] + 1000 * np.arange(14)[None, :]
        Y_pilot, X_pilot = extract_pilot_ls_input(tagged, self.pattern)
        self.assertEqual(Y_pilot.shape, (36, 2))
        self.assertEqual(X_pilot.shape, (36, 2))
        np.testing.assert_array_equal(Y_pilot[:, 0], np.arange(0, 72, 2))
        np.testing.assert_array_equal(Y_pilot[:, 1], np.arange(1, 72, 2) + 12000)
        Y = apply_channel(self.X, np.ones((72, 14)), float("inf"))
        Y_pilot, X_pilot = extract_pilot_ls_input(Y, self.pattern)
        np.testing.assert_allclose(Y_pilot / X_pilot, 1.0)


class TestOfdm(unittest.TestCase):

    def test_round_trip(self):
        """
        Tests the unitary transform pair with cyclic prefix
        """
        impulse = np.zeros((72, 14), dtype=complex)
        impulse[5, 3] = 1.0
        np.testing.assert_allclose(ofdm_time_domain_roundtrip(impulse), impulse, atol=1e-12)
        rng = np.random.default_rng(6)
        grid = rng.normal(size=(72, 14)) + 1j * rng.normal(size=(72, 14))
        np.testing.assert_allclose(ofdm_time_domain_roundtrip(grid), grid, atol=1e-10)
        samples = ofdm_modulate(grid)[:, 16:]
        np.testing.assert_allclose(np.sum(np.abs(samples) ** 2, axis=1),
                                   np.sum(np.abs(grid) ** 2, axis=0), rtol=1e-10)

    def test_time_domain_matches_frequency_model(self):
        """
        Tests that integer-delay convolution agrees with the Hadamard model
        """
        pdp = PowerDelayProfile("integer", [0, 1e9 / 1.08e6 * 3, 1e9 / 1.08e6 * 11],
                                [0.0, -3.0, -6.0])
        realization = realize_channel(pdp, 300.0, 14, 7)
        X = build_slot(None, PilotPattern(SINGLE_DMRS), rng=8)
        Y_time = time_domain_channel(X, realization.taps, np.round(pdp.delays_samples()))
        np.testing.assert_allclose(Y_time, realization.H * X.grid, atol=1e-8)

    def test_rejects_fractional_delays(self):
        with self.assertRaises(ValueError):
            time_domain_channel(np.zeros((72, 14)), np.zeros((1, 14)), [0.5])


class TestBitErrors(unittest.TestCase):

    def test_perfect_csi_noise_free(self):
        """
        Tests zero errors for every profile with perfect channel knowledge
        """
        pattern = PilotPattern(SINGLE_DMRS)
        rng = np.random.default_rng(9)
        total = 0
        for pdp in STANDARD_PROFILES.values():
            for _ in range(15):
                bits = rng.integers(0, 2, size=pattern.num_data_bits)
                X = build_slot(bits, pattern)
                H = realize_channel(pdp, 97.0, 14, rng).H
                Y = apply_channel(X, H, float("inf"))
                self.assertEqual(equalize_and_count_errors(Y, H, bits, pattern), 0.0)
                total += bits.size
        self.assertGreater(total, 1e5)

    def test_awgn_ber(self):
        """
        Tests QPSK bit error ratio at 0 dB against Q(1)
        """
        pattern = PilotPattern(SINGLE_DMRS)
        rng = np.random.default_rng(10)
        bits = rng.integers(0, 2, size=(30, pattern.num_data_bits))
        X = build_slot(bits, pattern)
        H = np.ones((72, 14))
        Y = apply_channel(X, H, 0.0, rng)
        self.assertAlmostEqual(equalize_and_count_errors(Y, H, bits, pattern), 0.1587,
                               delta=0.01)

    def test_uncorrelated_estimate(self):
        pattern = PilotPattern(SINGLE_DMRS)
        rng = np.random.default_rng(11)
        bits = rng.integers(0, 2, size=(30, pattern.num_data_bits))
        X = build_slot(bits, pattern)
        H = rng.normal(size=(30, 72, 14)) + 1j * rng.normal(size=(30, 72, 14))
        H_hat = rng.normal(size=(30, 72, 14)) + 1j * rng.normal(size=(30, 72, 14))
        Y = apply_channel(X, H, float("inf"))
        self.assertAlmostEqual(equalize_and_count_errors(Y, H_hat, bits, pattern), 0.5,
                               delta=0.02)

    def test_erasures_count_half(self):
        pattern = PilotPattern(SINGLE_DMRS)
        bits = np.zeros(pattern.num_data_bits, dtype=int)
        X = build_slot(bits, pattern)
        Y = apply_channel(X, np.ones((72, 14)), float("inf"))
        self.assertEqual(equalize_and_count_errors(Y, np.zeros((72, 14)), bits, pattern), 0.5)


if __name__ == '__main__':
    unittest.main()
