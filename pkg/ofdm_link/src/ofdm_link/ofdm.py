#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Time-domain CP-OFDM, used to validate the frequency-domain channel model
"""

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_link.frame import DEFAULT_FRAME, Slot, as_grid


def ofdm_modulate(grid, frame=DEFAULT_FRAME):
    """
    Unitary IFFT per symbol and cyclic prefix prepend

    :return: samples [N_s x (N_cp + N_f)]
    """
    grid = as_grid(grid)
    symbols = np.fft.ifft(grid, axis=0, norm="ortho").T
    return np.concatenate([symbols[:, -frame.cp_samples:], symbols], axis=1)


def ofdm_demodulate(samples, frame=DEFAULT_FRAME):
    """
    Cyclic prefix removal and unitary FFT per symbol

    :return: grid [N_f x N_s]
    """
    return np.fft.fft(samples[:, frame.cp_samples:], axis=1, norm="ortho").T


def ofdm_time_domain_roundtrip(X, frame=DEFAULT_FRAME):
    """
    Modulate and demodulate a grid without a channel
    """
    grid = ofdm_demodulate(ofdm_modulate(X, frame), frame)
    if isinstance(X, Slot):
        return Slot(grid, X.role, X.frame)
    return grid


def time_domain_channel(X, taps, delays_samples, frame=DEFAULT_FRAME):
    """
    Pass a slot through integer-delay taps in the time domain

    Tap values are held per OFDM symbol (taps [M x N_s]); samples before the
    slot start are zero.

    :return: received grid [N_f x N_s]
    """
    delays = np.asarray(delays_samples)
    if not np.all(delays == np.round(delays)):
        raise ValueError("Time-domain channel needs integer delays, got {}".format(delays))
    delays = delays.astype(int)
    if np.any(delays < 0) or np.any(delays > frame.cp_samples):
        raise ValueError("Delays {} must lie within the cyclic prefix".format(delays.tolist()))
    samples = ofdm_modulate(X, frame)
    taps = np.asarray(taps)
    if taps.shape != (delays.size, samples.shape[0]):
        raise ShapeError("Taps {} do not match {} paths and {} symbols".format(
            taps.shape, delays.size, samples.shape[0]))
    stream = samples.reshape(-1)
    length = samples.shape[1]
    received = np.zeros_like(stream)
    for m, delay in enumerate(delays):
        shifted = np.concatenate([np.zeros(delay, dtype=stream.dtype),
                                  stream[:stream.size - delay]])
        received += np.repeat(taps[m], length) * shifted
    return ofdm_demodulate(received.reshape(samples.shape), frame)
