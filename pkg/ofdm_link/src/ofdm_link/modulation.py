#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Gray coded unit-power QPSK

00 -> (1+i)/sqrt2, 01 -> (1-i)/sqrt2, 11 -> (-1-i)/sqrt2, 10 -> (-1+i)/sqrt2
"""

import numpy as np

from ofdm_common.exceptions import ShapeError

_SCALE = 1.0 / np.sqrt(2.0)


def qpsk_modulate(bits):
    """
    Map bit pairs to symbols

    :param bits: array of 0/1 with an even last extent
    :return: complex symbols, last extent halved
    """
    bits = np.asarray(bits, dtype=np.int8)
    if bits.shape[-1] % 2:
        raise ShapeError("QPSK needs an even number of bits, got {}".format(bits.shape[-1]))
    pairs = bits.reshape(bits.shape[:-1] + (-1, 2))
    return _SCALE * ((1 - 2 * pairs[..., 0]) + 1j * (1 - 2 * pairs[..., 1]))


def qpsk_demodulate(symbols):
    """
    Quadrant hard decision back to bits
    """
    symbols = np.asarray(symbols)
    pairs = np.stack([symbols.real < 0, symbols.imag < 0], axis=-1).astype(np.int8)
    return pairs.reshape(symbols.shape[:-1] + (-1,))


def hard_decision(symbols):
    """
    Nearest constellation point of every symbol
    """
    symbols = np.asarray(symbols)
    return _SCALE * (np.where(symbols.real < 0, -1.0, 1.0) + 1j * np.where(symbols.imag < 0,
                                                                           -1.0, 1.0))


def random_qpsk(rng, count):
    return qpsk_modulate(rng.integers(0, 2, size=2 * count))
