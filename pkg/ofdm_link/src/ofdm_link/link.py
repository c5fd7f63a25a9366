#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Transmitter, frequency-domain channel and receiver bookkeeping

Grids may carry leading batch axes [..., N_f, N_s]. Functions given a Slot return
a Slot, functions given arrays return arrays.
"""

import numpy as np

from ofdm_common.core import make_rng
from ofdm_common.exceptions import ShapeError
from ofdm_link.frame import Slot, as_grid
from ofdm_link.modulation import qpsk_modulate, qpsk_demodulate

ERASURE_THRESHOLD = 1e-12


class SnrSpec(object):

    """
    Signal to noise ratio of unit-power QPSK, noise variance 10^(-snr_db / 10)

    snr_db = inf switches noise off.
    """

    def __init__(self, snr_db):
        self.snr_db = float(snr_db)

    def __repr__(self):
        return "SnrSpec({} dB)".format(self.snr_db)

    @property
    def noise_variance(self):
        if np.isinf(self.snr_db) and self.snr_db > 0:
            return 0.0
        return 10.0 ** (-self.snr_db / 10.0)


def noise_variance(snr):
    if isinstance(snr, SnrSpec):
        return snr.noise_variance
    return SnrSpec(snr).noise_variance


def build_slot(payload_bits, pattern, rng=None):
    """
    Transmitted grid X: pilots from the pattern, payload QPSK on data symbols

    Data resource elements are filled symbol by symbol, subcarriers ascending.

    :param payload_bits: pattern.num_data_bits bits, or None to draw random bits
    :param pattern: pilot pattern
    :type pattern: ofdm_link.frame.PilotPattern
    :param rng: seed or Generator for random payload
    :rtype: Slot
    """
    if payload_bits is None:
        payload_bits = make_rng(rng if rng is not None else 0).integers(
            0, 2, size=pattern.num_data_bits)
    payload_bits = np.asarray(payload_bits)
    if payload_bits.shape[-1] != pattern.num_data_bits:
        raise ShapeError("Slot carries {} payload bits, got {}".format(
            pattern.num_data_bits, payload_bits.shape[-1]))
    grid = np.broadcast_to(pattern.pilot_grid(),
                           payload_bits.shape[:-1] + pattern.frame.grid_shape).copy()
    symbols = qpsk_modulate(payload_bits)
    data = symbols.reshape(payload_bits.shape[:-1] + (len(pattern.data_symbols),
                                                      pattern.frame.num_subcarriers))
    grid[..., list(pattern.data_symbols)] = np.swapaxes(data, -1, -2)
    return Slot(grid, Slot.TRANSMITTED, pattern.frame)


def data_symbols_of(grid, pattern):
    """
    Data resource elements in payload order, [..., num_data_res]
    """
    grid = as_grid(grid)
    data = np.swapaxes(grid[..., list(pattern.data_symbols)], -1, -2)
    return data.reshape(grid.shape[:-2] + (-1,))


def apply_channel(X, H, snr, rng=None):
    """
    Y = H o X + W with circular Gaussian W of variance sigma_N^2 per element

    :param X: transmitted grid
    :param H: channel grid of the same shape
    :param snr: SnrSpec or dB value
    :param rng: seed or Generator for the noise
    """
    x, h = as_grid(X), as_grid(H)
    if x.shape[-2:] != h.shape[-2:]:
        raise ShapeError("Channel grid {} does not match slot grid {}".format(h.shape, x.shape))
    y = h * x
    variance = noise_variance(snr)
    if variance > 0:
        rng = make_rng(rng if rng is not None else 0)
        y = y + complex_noise(rng, y.shape, variance)
    if isinstance(X, Slot):
        return Slot(y, Slot.RECEIVED, X.frame)
    return y


def complex_noise(rng, shape, variance):
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def extract_pilot_ls_input(Y, pattern):
    """
    Received and transmitted pilots of the two pilot symbols

    :return: Y_pilot [..., 36, 2] and X_pilot [36, 2], rows by ascending
        subcarrier, column 0 the first pilot symbol
    """
    y = as_grid(Y)
    columns = [y[..., pattern.pilot_subcarriers[s], s] for s in pattern.frame.pilot_symbols]
    return np.stack(columns, axis=-1), pattern.pilot_matrix()


def pilot_values_of(grid, pattern):
    """
    Values of any grid at the pilot resource elements, [..., 36, 2]
    """
    return extract_pilot_ls_input(grid, pattern)[0]


def count_bit_errors(Y, H_hat, payload_bits, pattern):
    """
    Bit errors after zero-forcing equalization and hard decisions

    Resource elements with |H_hat| < 1e-12 are erasures and count as half an
    error per bit.

    :return: (errors, total bits)
    :rtype: tuple(float, int)
    """
    y, h_hat = as_grid(Y), as_grid(H_hat)
    payload_bits = np.asarray(payload_bits)
    received = data_symbols_of(y, pattern)
    channel = data_symbols_of(h_hat, pattern)
    erased = np.abs(channel) < ERASURE_THRESHOLD
    safe = np.where(erased, 1.0, channel)
    decided = qpsk_demodulate(received / safe)
    erased_bits = np.broadcast_to(np.repeat(erased, 2, axis=-1), decided.shape)
    errors = np.sum((decided != payload_bits) & ~erased_bits) + 0.5 * np.sum(erased_bits)
    return float(errors), int(payload_bits.size)


def equalize_and_count_errors(Y, H_hat, payload_bits, pattern):
    """
    Bit error ratio of a slot (or batch of slots)
    """
    errors, total = count_bit_errors(Y, H_hat, payload_bits, pattern)
    return errors / total
