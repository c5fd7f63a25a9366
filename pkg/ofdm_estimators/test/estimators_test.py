#!/usr/bin/env python
#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Tests for the classical estimators
"""
import os
import shutil
import tempfile
import unittest

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_fading.correlation import uniform_delay_correlation
from ofdm_fading.fading import ChannelSpec
from ofdm_fading.profiles import PowerDelayProfile, standard_pdp
from ofdm_link.frame import SINGLE_DMRS, PilotPattern
from ofdm_link.link import apply_channel, build_slot, extract_pilot_ls_input, pilot_values_of
from ofdm_estimators.ddce import dd_ce
from ofdm_estimators.genie import genie_correlations, estimate_covariances
from ofdm_estimators.interpolation import bilinear_to_frame, linear_time_to_frame
from ofdm_estimators.ls import PilotEstimate, ls_estimate
from ofdm_estimators.mmse import fd_mmse_1d, fd_mmse_1d_frame, fd_mmse_2d, mmse_matrix

SLOW = os.environ.get("OFDM_SLOW_TESTS") == "1"
SAMPLE_NS = 1e9 / 1.08e6


def simulate(spec, pattern, count, snr_db, seed):
    rng = np.random.default_rng(seed)
    _, H, _ = spec.realize_batch(count, rng)
    bits = rng.integers(0, 2, size=(count, pattern.num_data_bits))
    X = build_slot(bits, pattern).grid
    Y = apply_channel(X, H, snr_db, rng)
    return H, X, Y


def mse(estimate, H):
    return float(np.mean(np.abs(estimate - H) ** 2))


class TestLs(unittest.TestCase):

    def test_division(self):
        """
        Tests the element-wise quotient
        """
        est = ls_estimate(np.full((36, 2), 0.5 + 0.5j), np.ones((36, 2)))
        np.testing.assert_array_equal(est.values, 0.5 + 0.5j)
        with self.assertRaises(ShapeError):
            ls_estimate(np.ones((36, 2)), np.ones((72, 2)))

    def test_noise_law(self):
        """
        Tests pilot MSE = 10^(-SNR/10)
        """
        pattern = PilotPattern(SINGLE_DMRS)
        spec = ChannelSpec(standard_pdp("ETU"), 0.0, 97.0)
        for snr_db in (0.0, 10.0, 20.0):
            H, _, Y = simulate(spec, pattern, 1000, snr_db, int(snr_db))
            Y_pilot, X_pilot = extract_pilot_ls_input(Y, pattern)
            err = mse(ls_estimate(Y_pilot, X_pilot).values, pilot_values_of(H, pattern))
            self.assertAlmostEqual(err / 10 ** (-snr_db / 10), 1.0, delta=0.05)

    def test_noise_free_exact(self):
        pattern = PilotPattern(SINGLE_DMRS)
        H, _, Y = simulate(ChannelSpec(standard_pdp("EVA"), 50.0), pattern, 3, float("inf"), 1)
        Y_pilot, X_pilot = extract_pilot_ls_input(Y, pattern)
        np.testing.assert_allclose(ls_estimate(Y_pilot, X_pilot).values,
                                   pilot_values_of(H, pattern), atol=1e-14)


class TestInterpolation(unittest.TestCase):

    def setUp(self):
        self.pattern = PilotPattern(SINGLE_DMRS)

    def test_constant_field(self):
        frame = bilinear_to_frame(PilotEstimate(np.full((36, 2), 2 - 1j)), self.pattern)
        np.testing.assert_allclose(frame, 2 - 1j, atol=1e-14)

    def test_linear_field_reproduced(self):
        """
        Tests that a field linear in subcarrier index is reproduced everywhere
        """
        field = (0.3 + 0.1j) * np.arange(72)[:, None] * np.ones((1, 14))
        est = PilotEstimate(pilot_values_of(field, self.pattern))
        np.testing.assert_allclose(bilinear_to_frame(est, self.pattern), field, atol=1e-12)

    def test_two_pass_oracle(self):
        """
        Tests spot values against hand-written 1-D interpolation
        """
        rng = np.random.default_rng(3)
        values = rng.normal(size=(36, 2)) + 1j * rng.normal(size=(36, 2))
        frame = bilinear_to_frame(PilotEstimate(values), self.pattern)

        def line(x0, y0, x1, y1, x):
            return y0 + (y1 - y0) * (x - x0) / float(x1 - x0)
        # symbol 0 carries even subcarriers, symbol 12 odd ones
        sc5_sym0 = line(4, values[2, 0], 6, values[3, 0], 5)
        sc5_sym12 = values[2, 1]
        self.assertAlmostEqual(frame[5, 0], sc5_sym0, places=12)
        self.assertAlmostEqual(frame[5, 12], sc5_sym12, places=12)
        self.assertAlmostEqual(frame[5, 4], line(0, sc5_sym0, 12, sc5_sym12, 4), places=12)
        sc0_sym12 = line(1, values[0, 1], 3, values[1, 1], 0)
        self.assertAlmostEqual(frame[0, 12], sc0_sym12, places=12)
        sc71_sym0 = line(68, values[34, 0], 70, values[35, 0], 71)
        self.assertAlmostEqual(frame[71, 0], sc71_sym0, places=12)

    def test_linear_time(self):
        """
        Tests midpoint and extrapolated last symbol
        """
        rng = np.random.default_rng(4)
        pilots = rng.normal(size=(72, 2)) + 1j * rng.normal(size=(72, 2))
        frame = linear_time_to_frame(pilots)
        np.testing.assert_allclose(frame[:, 6], pilots.mean(axis=1), atol=1e-14)
        np.testing.assert_allclose(frame[:, 13], pilots[:, 1] + (pilots[:, 1] - pilots[:, 0]) / 12,
                                   atol=1e-14)
        constant = linear_time_to_frame(np.repeat(pilots[:, :1], 2, axis=1))
        np.testing.assert_allclose(constant, np.repeat(pilots[:, :1], 14, axis=1), atol=1e-14)


class TestMmse(unittest.TestCase):

    def setUp(self):
        self.pattern = PilotPattern(SINGLE_DMRS)
        self.integer = PowerDelayProfile("integer", [0, 3 * SAMPLE_NS, 7 * SAMPLE_NS],
                                         [0.0, -2.0, -4.0])

    def test_flat_channel_correlations(self):
        """
        Tests that a single zero-delay path gives a constant correlation
        """
        corr = estimate_covariances(ChannelSpec(PowerDelayProfile("flat", [0], [0]), 10.0),
                                    2000, 1)
        for symbol in (0, 5, 12):
            R = corr.covariance(symbol)
            np.testing.assert_allclose(R, R[0, 0], rtol=1e-12)
            self.assertAlmostEqual(R[0, 0].real, 1.0, delta=0.1)
        np.testing.assert_allclose(corr.covariances, np.conj(np.swapaxes(corr.covariances,
                                                                          1, 2)), atol=1e-12)

    def test_noise_free_recovery(self):
        """
        Tests exact recovery of noise-free channels by 1D and 2D MMSE
        """
        spec = ChannelSpec(self.integer, 0.0, 97.0)
        corr = estimate_covariances(spec, 500, 2)
        H, X, Y = simulate(spec, self.pattern, 4, float("inf"), 3)
        Y_pilot, X_pilot = extract_pilot_ls_input(Y, self.pattern)
        pilots = fd_mmse_1d(ls_estimate(Y_pilot, X_pilot), corr, float("inf"), self.pattern)
        np.testing.assert_allclose(pilots, H[..., [0, 12]], atol=1e-8)
        np.testing.assert_allclose(fd_mmse_2d(Y, X, corr, float("inf"), self.pattern), H,
                                   atol=1e-8)

    def test_flat_channel_average(self):
        """
        Tests the single path estimator against a direct linear algebra oracle
        """
        spec = ChannelSpec(PowerDelayProfile("flat", [0], [0]), 0.0)
        corr = estimate_covariances(spec, 500, 4)
        H, _, Y = simulate(spec, self.pattern, 2, 10.0, 5)
        Y_pilot, X_pilot = extract_pilot_ls_input(Y, self.pattern)
        ls = ls_estimate(Y_pilot, X_pilot)
        result = fd_mmse_1d(ls, corr, 10.0, self.pattern)
        R = corr.covariance(0)
        carriers = self.pattern.pilot_subcarriers[0]
        W = R[:, carriers] @ np.linalg.inv(R[np.ix_(carriers, carriers)] + 0.1 * np.eye(36))
        np.testing.assert_allclose(result[..., 0], ls.values[..., 0] @ W.T, atol=1e-10)
        np.testing.assert_allclose(result[..., 5, 0], result[..., 6, 0], atol=1e-12)
        noise_free = fd_mmse_1d(PilotEstimate(pilot_values_of(H, self.pattern)), corr,
                                float("inf"), self.pattern)
        np.testing.assert_allclose(noise_free, H[..., [0, 12]], atol=1e-10)

    def test_frozen_channel_2d_equals_1d(self):
        spec = ChannelSpec(standard_pdp("ETU"), 0.0)
        corr = estimate_covariances(spec, 1000, 6)
        _, X, Y = simulate(spec, self.pattern, 3, 15.0, 7)
        Y_pilot, X_pilot = extract_pilot_ls_input(Y, self.pattern)
        one = fd_mmse_1d_frame(ls_estimate(Y_pilot, X_pilot), corr, 15.0, self.pattern)
        two = fd_mmse_2d(Y, X, corr, 15.0, self.pattern)
        np.testing.assert_allclose(two[..., [0, 12]], one[..., [0, 12]], atol=1e-10)

    def test_mmse_matrix_shapes(self):
        with self.assertRaises(ShapeError):
            mmse_matrix(np.ones((72, 36)), np.ones((30, 30)), 0.1)

    def test_estimator_ordering(self):
        """
        Tests 2D MMSE <= 1D MMSE <= interpolated LS on ETU
        """
        spec = ChannelSpec(standard_pdp("ETU"), 0.0, 97.0)
        corr = estimate_covariances(spec, 3000, 8)
        count = 2000 if SLOW else 200
        for snr_db in (0.0, 10.0, 20.0):
            H, X, Y = simulate(spec, self.pattern, count, snr_db, 9 + int(snr_db))
            Y_pilot, X_pilot = extract_pilot_ls_input(Y, self.pattern)
            ls = ls_estimate(Y_pilot, X_pilot)
            mse_ls = mse(bilinear_to_frame(ls, self.pattern), H)
            mse_1d = mse(fd_mmse_1d_frame(ls, corr, snr_db, self.pattern), H)
            mse_2d = mse(fd_mmse_2d(Y, X, corr, snr_db, self.pattern), H)
            self.assertLess(mse_2d, mse_1d)
            self.assertLess(mse_1d, mse_ls)


class TestGenieCache(unittest.TestCase):

    def test_cache_round_trip(self):
        """
        Tests that cached correlations are reused bit for bit
        """
        directory = tempfile.mkdtemp()
        try:
            spec = ChannelSpec(standard_pdp("EPA"), 0.0, 97.0)
            first = genie_correlations(spec, 200, 3, cache_dir=directory)
            self.assertEqual(len(os.listdir(directory)), 1)
            second = genie_correlations(spec, 200, 3, cache_dir=directory)
            np.testing.assert_array_equal(first.covariances, second.covariances)
            path = os.path.join(directory, os.listdir(directory)[0])
            with open(path, "wb") as handle:
                handle.write(b"garbage")
            third = genie_correlations(spec, 200, 3, cache_dir=directory)
            np.testing.assert_array_equal(first.covariances, third.covariances)
        finally:
            shutil.rmtree(directory)

    @unittest.skipUnless(SLOW, "set OFDM_SLOW_TESTS=1")
    def test_uniform_delay_convergence(self):
        """
        Tests that equal-gain paths spread over the cyclic prefix approach the closed form
        """
        delays = (np.arange(64) + 0.5) * 16.0 / 64 * SAMPLE_NS
        spec = ChannelSpec(PowerDelayProfile("uniform", delays, np.zeros(64)), 0.0)
        corr = estimate_covariances(spec, 50000, 10)
        pattern = PilotPattern(SINGLE_DMRS)
        R = uniform_delay_correlation(72, 16)
        carriers = pattern.pilot_subcarriers[0]
        self.assertLess(np.max(np.abs(corr.cross(0, pattern) - R[:, carriers])), 0.02)


class TestDdce(unittest.TestCase):

    def setUp(self):
        self.pattern = PilotPattern(SINGLE_DMRS)

    def test_perfect_start_converges_at_once(self):
        """
        Tests a single pass from a perfect noise-free start
        """
        H, _, Y = simulate(ChannelSpec(standard_pdp("EPA"), 30.0), self.pattern, 5,
                           float("inf"), 11)
        _, iterations = dd_ce(Y, H, self.pattern, 30.0, return_iterations=True)
        np.testing.assert_array_equal(iterations, 1)

    def test_known_pilots_substituted(self):
        """
        Tests that active pilot resource elements use the known pilot values
        """
        H, _, Y = simulate(ChannelSpec(standard_pdp("EPA"), 30.0), self.pattern, 1,
                           float("inf"), 12)
        start = np.ones_like(H)
        smoothed_from_ones = dd_ce(Y, start, self.pattern, 20.0, max_iter=0)
        raw = start.copy()
        for symbol in (0, 12):
            carriers = self.pattern.pilot_subcarriers[symbol]
            raw[..., carriers, symbol] = H[..., carriers, symbol]
        np.testing.assert_allclose(dd_ce(Y, raw, self.pattern, 20.0, max_iter=0),
                                   smoothed_from_ones, atol=1e-12)

    def test_improves_on_interpolated_ls(self):
        """
        Tests DD-CE against bilinear LS on EPA at 20 dB
        """
        spec = ChannelSpec(standard_pdp("EPA"), 0.0, 97.0)
        count = 2000 if SLOW else 200
        H, _, Y = simulate(spec, self.pattern, count, 20.0, 13)
        Y_pilot, X_pilot = extract_pilot_ls_input(Y, self.pattern)
        ls_frame = bilinear_to_frame(ls_estimate(Y_pilot, X_pilot), self.pattern)
        self.assertLessEqual(mse(dd_ce(Y, ls_frame, self.pattern, 20.0), H), mse(ls_frame, H))


if __name__ == '__main__':
    unittest.main()
