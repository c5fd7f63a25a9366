#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Interpolation from pilot resource elements to the full slot grid

Both interpolators continue the boundary slope linearly outside the pilot lattice.
"""

import numpy as np
from scipy import interpolate

from ofdm_link.frame import DEFAULT_FRAME
from ofdm_estimators.ls import PilotEstimate


def _linear(x, values, x_new, axis):
    return interpolate.interp1d(x, values, kind='linear', axis=axis, assume_sorted=True,
                                fill_value='extrapolate')(x_new)


def frequency_to_band(values, pattern):
    """
    Interpolate each pilot symbol's comb over all subcarriers

    :param values: [..., 36, 2] estimates at the pilot subcarriers
    :return: [..., 72, 2]
    """
    values = values.values if isinstance(values, PilotEstimate) else np.asarray(values)
    subcarriers = np.arange(pattern.frame.num_subcarriers)
    columns = []
    for j, symbol in enumerate(pattern.frame.pilot_symbols):
        columns.append(_linear(pattern.pilot_subcarriers[symbol], values[..., j], subcarriers,
                               axis=-1))
    return np.stack(columns, axis=-1)


def linear_time_to_frame(H_pilot_symbols, frame=DEFAULT_FRAME):
    """
    Per-subcarrier linear interpolation in time between the pilot symbols

    :param H_pilot_symbols: [..., 72, 2] estimates on the pilot symbols
    :return: [..., 72, 14]; symbols after the last pilot symbol are extrapolated
    """
    H_pilot_symbols = np.asarray(H_pilot_symbols)
    return _linear(np.asarray(frame.pilot_symbols, dtype=np.float64), H_pilot_symbols,
                   np.arange(frame.num_symbols), axis=-1)


def bilinear_to_frame(est, pattern):
    """
    Two-pass bilinear interpolation: frequency on each pilot symbol, then time

    :type est: PilotEstimate
    :return: [..., 72, 14]
    """
    return linear_time_to_frame(frequency_to_band(est, pattern), pattern.frame)
