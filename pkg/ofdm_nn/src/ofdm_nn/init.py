#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Parameter initializers
"""

import numpy as np


def glorot_uniform(shape, fan_in, fan_out, rng):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def dense(rows, cols, rng):
    """
    Glorot-uniform weight [rows x cols] and a zero bias
    """
    return glorot_uniform((rows, cols), cols, rows, rng), np.zeros(rows)


def conv(k_h, k_w, c_in, c_out, rng):
    receptive = k_h * k_w
    return (glorot_uniform((k_h, k_w, c_in, c_out), receptive * c_in, receptive * c_out, rng),
            np.zeros(c_out))


def norm(features):
    return np.ones(features), np.zeros(features)
