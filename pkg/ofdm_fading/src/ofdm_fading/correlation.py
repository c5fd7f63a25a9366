#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Closed-form channel correlations
"""

import numpy as np
from scipy import special

from ofdm_fading.constants import CP_SAMPLES, NUM_SUBCARRIERS, SYMBOL_PERIOD_S


def time_correlation(f_d, lag_symbols, symbol_period=SYMBOL_PERIOD_S):
    """
    Jakes time correlation J0(2 pi f_D T lag) between OFDM symbols lag apart

    :param f_d: maximum Doppler shift in Hz
    :param lag_symbols: symbol distance
    :rtype: float
    """
    return special.j0(2.0 * np.pi * np.asarray(f_d, dtype=np.float64) * symbol_period
                      * np.asarray(lag_symbols, dtype=np.float64))


def uniform_delay_correlation(n_subcarriers=NUM_SUBCARRIERS, cp_samples=CP_SAMPLES):
    """
    Frequency correlation of a channel whose delay is uniform over the cyclic prefix

    r[i, j] = (1 - exp(-i 2 pi T_CP (i - j) / N_f)) / (i 2 pi T_CP (i - j) / N_f),
    unit diagonal. Entries with T_CP (i - j) a multiple of N_f are exactly zero.

    :rtype: numpy.ndarray
    """
    if n_subcarriers <= 0 or cp_samples <= 0:
        raise ValueError("N_f and T_CP must be positive, got {} and {}".format(
            n_subcarriers, cp_samples))
    index = np.arange(n_subcarriers)
    delta = index[:, None] - index[None, :]
    x = 2.0 * np.pi * cp_samples * delta / float(n_subcarriers)
    R = np.ones((n_subcarriers, n_subcarriers), dtype=np.complex128)
    off = delta != 0
    R[off] = (1.0 - np.exp(-1j * x[off])) / (1j * x[off])
    R[off & ((cp_samples * delta) % n_subcarriers == 0)] = 0.0
    return R
