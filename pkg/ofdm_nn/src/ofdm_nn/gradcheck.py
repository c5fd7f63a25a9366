#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Central finite-difference gradient checks
"""

import numpy as np


def numerical_gradient(function, tensor, step=1e-6):
    """
    Estimate d function() / d tensor.data by central differences

    :param function: callable returning a scalar float, re-evaluated per entry
    :param tensor: tensor whose data is perturbed in place
    :rtype: numpy.ndarray
    """
    grad = np.zeros_like(tensor.data)
    flat = tensor.data.reshape(-1)
    flat_grad = grad.reshape(-1)
    for i in range(flat.size):
        original = flat[i]
        flat[i] = original + step
        upper = function()
        flat[i] = original - step
        lower = function()
        flat[i] = original
        flat_grad[i] = (upper - lower) / (2.0 * step)
    return grad


def max_relative_error(analytic, numeric, floor=1e-8):
    scale = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), floor)
    return float(np.max(np.abs(analytic - numeric) / scale))


def numerical_gradient_at(function, tensor, indices, step=1e-6):
    """
    Central differences for selected flat indices only

    :return: gradient estimates in the order of indices
    :rtype: numpy.ndarray
    """
    flat = tensor.data.reshape(-1)
    estimates = np.zeros(len(indices))
    for n, i in enumerate(indices):
        original = flat[i]
        flat[i] = original + step
        upper = function()
        flat[i] = original - step
        lower = function()
        flat[i] = original
        estimates[n] = (upper - lower) / (2.0 * step)
    return estimates
