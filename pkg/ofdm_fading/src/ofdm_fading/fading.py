#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Rayleigh multipath fading by a sum of sinusoids per path

Every path gain is a complex process whose in-phase and quadrature components
are sums of N sinusoids with arrival angles spread over a quarter circle and
uniform random phases. This reproduces the Jakes autocorrelation J0(2 pi f_D t).
Taps are held constant within an OFDM symbol and sampled at symbol midpoints.
"""

import numpy as np

from ofdm_common.core import make_rng
from ofdm_fading.constants import NUM_SUBCARRIERS, NUM_SYMBOLS, SYMBOL_PERIOD_S, SAMPLE_RATE_HZ

DEFAULT_SINUSOIDS = 20


class DopplerSpec(object):

    """
    Maximum Doppler shift and sinusoid count of a realization
    """

    def __init__(self, f_max, n_sinusoids=DEFAULT_SINUSOIDS):
        if f_max < 0:
            raise ValueError("Doppler shift must be >= 0, got {}".format(f_max))
        if n_sinusoids < 8:
            raise ValueError("At least 8 sinusoids are needed, got {}".format(n_sinusoids))
        self.f_max = float(f_max)
        self.n_sinusoids = int(n_sinusoids)


class ChannelRealization(object):

    """
    Tap gains [M x N_s] and the noise-free frequency response H [N_f x N_s]
    """

    def __init__(self, taps, H, pdp, f_d):
        self.taps = taps
        self.H = H
        self.pdp = pdp
        self.f_d = f_d

    @property
    def num_symbols(self):
        return self.H.shape[1]


def arrival_angles(n_sinusoids, n_paths):
    """
    Arrival angles [n_paths x 2 x n_sinusoids] with a distinct small rotation per
    path and quadrature component
    """
    n = np.arange(1, n_sinusoids + 1)
    base = np.pi / (2.0 * n_sinusoids) * (n - 0.5)
    slots = np.arange(2 * n_paths).reshape(n_paths, 2) + 1.0
    rotation = slots * np.pi / (4.0 * n_sinusoids * (2 * n_paths + 1))
    return base[None, None, :] + rotation[:, :, None]


def symbol_times(n_symbols, symbol_period=SYMBOL_PERIOD_S):
    return (np.arange(n_symbols) + 0.5) * symbol_period


def steering_matrix(pdp, n_subcarriers=NUM_SUBCARRIERS, sample_rate=SAMPLE_RATE_HZ):
    """
    exp(-i 2 pi k d_m / N_f) for every subcarrier k and path m
    """
    k = np.arange(n_subcarriers)[:, None]
    return np.exp(-2j * np.pi * k * pdp.delays_samples(sample_rate)[None, :] / n_subcarriers)


def frequency_response(taps, steering):
    """
    H[..., k, l] = sum over paths m of taps[..., m, l] exp(-i 2 pi k d_m / N_f)

    Paths are accumulated in index order.
    """
    H = np.zeros(taps.shape[:-2] + (steering.shape[0], taps.shape[-1]), dtype=np.complex128)
    for m in range(steering.shape[1]):
        H += steering[:, m, None] * taps[..., m, None, :]
    return H


def realize_taps(pdp, f_max, n_symbols, rng, n_sinusoids=DEFAULT_SINUSOIDS,
                 symbol_period=SYMBOL_PERIOD_S):
    """
    Tap gains of a batch of independent realizations

    :param f_max: maximum Doppler per realization, scalar or [B]
    :param rng: numpy Generator
    :return: complex taps [B x M x n_symbols]
    :rtype: numpy.ndarray
    """
    if n_symbols < 1:
        raise ValueError("Need at least one OFDM symbol, got {}".format(n_symbols))
    f_max = np.atleast_1d(np.asarray(f_max, dtype=np.float64))
    if np.any(f_max < 0):
        raise ValueError("Doppler shift must be >= 0, got {}".format(f_max.min()))
    batch = f_max.size
    angles = arrival_angles(n_sinusoids, pdp.num_paths)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(batch, pdp.num_paths, 2, n_sinusoids))
    frequencies = f_max[:, None, None, None] * np.cos(angles)[None]
    t = symbol_times(n_symbols, symbol_period)
    argument = 2.0 * np.pi * frequencies[..., None] * t + phases[..., None]
    components = np.sqrt(2.0 / n_sinusoids) * np.cos(argument).sum(axis=3)
    scale = np.sqrt(pdp.linear_gains() / 2.0)[None, :, None]
    return scale * (components[:, :, 0, :] + 1j * components[:, :, 1, :])


def realize_channel(pdp, doppler, n_symbols=NUM_SYMBOLS, rng_seed=0,
                    n_subcarriers=NUM_SUBCARRIERS):
    """
    One channel realization

    :param pdp: power delay profile
    :type pdp: PowerDelayProfile
    :param doppler: maximum Doppler shift, as DopplerSpec or Hz
    :param n_symbols: OFDM symbols to generate
    :param rng_seed: integer seed or numpy Generator
    :rtype: ChannelRealization
    """
    if not isinstance(doppler, DopplerSpec):
        doppler = DopplerSpec(doppler)
    rng = make_rng(rng_seed)
    taps = realize_taps(pdp, doppler.f_max, n_symbols, rng, doppler.n_sinusoids)[0]
    H = frequency_response(taps, steering_matrix(pdp, n_subcarriers))
    return ChannelRealization(taps, H, pdp, doppler.f_max)


class ChannelSpec(object):

    """
    Profile plus a Doppler range; each realization draws its maximum Doppler
    uniformly from [doppler_low_hz, doppler_high_hz]
    """

    def __init__(self, pdp, doppler_low_hz=0.0, doppler_high_hz=None,
                 n_sinusoids=DEFAULT_SINUSOIDS):
        if doppler_high_hz is None:
            doppler_high_hz = doppler_low_hz
        if doppler_low_hz < 0 or doppler_high_hz < doppler_low_hz:
            raise ValueError("Invalid Doppler range [{}, {}]".format(doppler_low_hz,
                                                                     doppler_high_hz))
        self.pdp = pdp
        self.doppler_low_hz = float(doppler_low_hz)
        self.doppler_high_hz = float(doppler_high_hz)
        self.n_sinusoids = n_sinusoids
        self._steering = steering_matrix(pdp)

    def __repr__(self):
        return "ChannelSpec({}, {}-{} Hz)".format(self.pdp.name, self.doppler_low_hz,
                                                   self.doppler_high_hz)

    def key(self):
        return "{}_{:g}_{:g}".format(self.pdp.name, self.doppler_low_hz, self.doppler_high_hz)

    def draw_doppler(self, rng, size=None):
        if self.doppler_high_hz == self.doppler_low_hz:
            return np.full(size, self.doppler_low_hz) if size else self.doppler_low_hz
        return rng.uniform(self.doppler_low_hz, self.doppler_high_hz, size=size)

    def realize_batch(self, count, rng, n_symbols=NUM_SYMBOLS):
        """
        count independent realizations

        :return: taps [count x M x N_s], H [count x N_f x N_s], f_d [count]
        """
        f_d = np.atleast_1d(self.draw_doppler(rng, size=count))
        taps = realize_taps(self.pdp, f_d, n_symbols, rng, self.n_sinusoids)
        return taps, frequency_response(taps, self._steering), f_d

    def realize(self, rng, n_symbols=NUM_SYMBOLS):
        taps, H, f_d = self.realize_batch(1, make_rng(rng), n_symbols)
        return ChannelRealization(taps[0], H[0], self.pdp, float(f_d[0]))
