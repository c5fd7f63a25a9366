#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Decision-directed channel estimation
"""

import numpy as np

from ofdm_fading.correlation import uniform_delay_correlation
from ofdm_link.frame import as_grid
from ofdm_link.link import noise_variance
from ofdm_link.modulation import hard_decision
from ofdm_estimators.mmse import apply_filter, wiener_filter

MAX_ITERATIONS = 100


def dd_ce(Y, H_init, pattern, snr, max_iter=MAX_ITERATIONS, return_iterations=False):
    """
    Iterate hard decisions and re-estimation, then Wiener smoothing per symbol

    Each pass decides X_hat = hard(Y / H_hat) on the data resource elements and
    re-estimates H_hat = Y / X_hat there; known pilots are substituted on pilot
    resource elements, which are never decided. A slot stops when its
    decisions repeat or after max_iter passes. Finally every symbol is smoothed
    by R (R + sigma^2 I)^-1 with the uniform-delay frequency correlation R.

    :param Y: received grid [..., 72, 14]
    :param H_init: initial full-slot estimate, usually interpolated LS
    :param snr: SnrSpec or dB, noise level of the smoother
    :return: H_hat, and the pass count per slot when return_iterations is set
    """
    y = as_grid(Y)
    H_hat = np.array(np.broadcast_to(as_grid(H_init), y.shape), dtype=np.complex128)
    known = pattern.known_mask()
    active_pilots = known & (np.abs(pattern.pilot_grid()) > 0)
    data = pattern.data_mask()
    H_hat[..., active_pilots] = y[..., active_pilots] / pattern.pilot_grid()[active_pilots]
    batch_shape = y.shape[:-2]
    running = np.ones(batch_shape, dtype=bool)
    iterations = np.zeros(batch_shape, dtype=int)
    previous = None
    for _ in range(max_iter):
        decisions = hard_decision(y[..., data] / H_hat[..., data])
        if previous is not None:
            running &= np.any(decisions != previous, axis=-1)
        if not np.any(running):
            break
        update = np.where(running[..., None], y[..., data] / decisions, H_hat[..., data])
        H_hat[..., data] = update
        iterations += running
        previous = decisions
    F = wiener_filter(uniform_delay_correlation(pattern.frame.num_subcarriers,
                                                pattern.frame.cp_samples), noise_variance(snr))
    smoothed = np.swapaxes(apply_filter(F, np.swapaxes(H_hat, -1, -2)), -1, -2)
    if return_iterations:
        return smoothed, iterations
    return smoothed
