#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Estimation metrics and their Monte-Carlo aggregation
"""

import math

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_link.frame import as_grid

DG_ERROR_FLOOR = 1e-15


def _pair(H_hat, H):
    H_hat, H = as_grid(H_hat), as_grid(H)
    if H_hat.shape[-2:] != H.shape[-2:]:
        raise ShapeError("Estimate {} and channel {} differ".format(H_hat.shape, H.shape))
    return H_hat, H


def squared_error(H_hat, H):
    """
    Sum of |H_hat - H|^2 over the resource grid, one value per slot
    """
    H_hat, H = _pair(H_hat, H)
    return np.sum(np.abs(H_hat - H) ** 2, axis=(-2, -1))


def metric_mse(H_hat, H):
    """
    Mean squared complex deviation over all resource elements of a slot

    :return: float for one slot, array for a batch
    """
    H_hat, H = _pair(H_hat, H)
    mse = squared_error(H_hat, H) / float(H.shape[-2] * H.shape[-1])
    return float(mse) if np.ndim(mse) == 0 else mse


def metric_dg(H_ls, H_method, H, floor=DG_ERROR_FLOOR):
    """
    Denoise gain 10 log10(|H_ls - H|^2 / |H_method - H|^2) in dB

    Both error energies are floored at floor; a perfect method reports the
    capped gain instead of infinity.
    """
    ls_error = np.maximum(squared_error(H_ls, H), floor)
    method_error = np.maximum(squared_error(H_method, H), floor)
    gain = 10.0 * np.log10(ls_error / method_error)
    return float(gain) if np.ndim(gain) == 0 else gain


def is_capped(H_method, H, floor=DG_ERROR_FLOOR):
    return np.asarray(squared_error(H_method, H) <= floor)


class Accumulator(object):

    """
    Running sum and sum of squares of per-realization values
    """

    def __init__(self):
        self.total = 0.0
        self.total_squares = 0.0
        self.count = 0

    def add(self, values):
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        self.total += float(np.sum(values))
        self.total_squares += float(np.sum(values ** 2))
        self.count += values.size

    def merge(self, other):
        self.total += other.total
        self.total_squares += other.total_squares
        self.count += other.count

    @property
    def mean(self):
        return self.total / self.count if self.count else float('nan')

    @property
    def stderr(self):
        """
        Sample standard deviation over sqrt(n)
        """
        if self.count < 2:
            return float('nan')
        variance = (self.total_squares - self.count * self.mean ** 2) / (self.count - 1)
        return math.sqrt(max(variance, 0.0) / self.count)
