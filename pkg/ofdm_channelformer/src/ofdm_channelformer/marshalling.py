#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Conversion between complex channel matrices and real network tensors

Complex matrices are stacked column by column into one vector, then split into
a real channel and an imaginary channel: [rows, cols] -> [rows * cols, 2].
"""

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_estimators.ls import PilotEstimate
from ofdm_link.frame import DEFAULT_FRAME

from ofdm_channelformer.config import OFFLINE, ONLINE


def stack_columns(matrix):
    """
    [..., rows, cols] complex -> [..., rows * cols, 2] real, column-major
    """
    matrix = np.asarray(matrix)
    if matrix.ndim < 2:
        raise ShapeError("Need a matrix, got shape {}".format(matrix.shape))
    stacked = np.swapaxes(matrix, -1, -2).reshape(matrix.shape[:-2] + (-1,))
    return np.stack([stacked.real, stacked.imag], axis=-1).astype(np.float64)


def unstack_columns(tensor, rows):
    """
    Inverse of stack_columns for matrices with the given number of rows
    """
    values = getattr(tensor, 'data', tensor)
    values = np.asarray(values)
    if values.ndim < 2 or values.shape[-1] != 2 or values.shape[-2] % rows:
        raise ShapeError("Cannot unstack {} into columns of {} rows".format(values.shape, rows))
    stacked = values[..., 0] + 1j * values[..., 1]
    cols = values.shape[-2] // rows
    return np.swapaxes(stacked.reshape(values.shape[:-2] + (cols, rows)), -1, -2)


def input_from_ls(est):
    """
    Network input from a pilot estimate

    Rows 0..35 hold the first pilot symbol, rows 36..71 the second.

    :param est: PilotEstimate or complex array [..., 36, 2]
    :return: array [..., 72, 2]
    """
    values = est.values if isinstance(est, PilotEstimate) else np.asarray(est)
    return stack_columns(values)


def ls_from_input(x, frame=DEFAULT_FRAME):
    return PilotEstimate(unstack_columns(x, frame.pilots_per_symbol))


def output_to_channel(y, mode, frame=DEFAULT_FRAME):
    """
    Network output to a complex channel matrix

    Online output rows l * 72 + k hold subcarrier k of pilot symbol l (72 x 2
    result); offline rows l * 72 + k hold subcarrier k of OFDM symbol l (72 x 14).
    """
    expected = {ONLINE: frame.num_pilot_symbols, OFFLINE: frame.num_symbols}
    if mode not in expected:
        raise ValueError("Unknown model mode '{}'".format(mode))
    channel = unstack_columns(y, frame.num_subcarriers)
    if channel.shape[-1] != expected[mode]:
        raise ShapeError("{} output has {} columns, expected {}".format(
            mode, channel.shape[-1], expected[mode]))
    return channel


def channel_to_output(H, mode, frame=DEFAULT_FRAME):
    """
    Regression label from a channel: the full slot offline, pilot symbols online

    :param H: complex grid [..., 72, 14], or [..., 72, 2] pilot-symbol columns online
    """
    H = np.asarray(H)
    if mode == ONLINE and H.shape[-1] == frame.num_symbols:
        H = H[..., list(frame.pilot_symbols)]
    return stack_columns(H)
