#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Training losses, averaged over all elements
"""

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_nn.tensor import Tensor, as_tensor


def huber_elementwise(residual, delta=1.0):
    """
    Elementwise Huber penalty of a residual array

    :rtype: numpy.ndarray
    """
    magnitude = np.abs(residual)
    return np.where(magnitude <= delta, 0.5 * residual ** 2, delta * (magnitude - 0.5 * delta))


def _residual(prediction, target):
    prediction = as_tensor(prediction)
    target = target.data if isinstance(target, Tensor) else np.asarray(target, dtype=np.float64)
    if prediction.shape != target.shape:
        raise ShapeError("loss: prediction {} and target {} differ".format(prediction.shape,
                                                                          target.shape))
    return prediction, prediction.data - target


def huber_loss(prediction, target, delta=1.0):
    """
    Mean Huber loss

    :param prediction: network output
    :type prediction: Tensor
    :param target: label array of the same shape
    :param delta: transition point between the quadratic and linear branch
    :rtype: Tensor
    """
    prediction, residual = _residual(prediction, target)

    def backward(grad):
        prediction.accumulate_grad(grad * np.clip(residual, -delta, delta) / residual.size)
    return Tensor.make_result(huber_elementwise(residual, delta).mean(), (prediction,), "huber",
                              backward)


def mse_loss(prediction, target):
    prediction, residual = _residual(prediction, target)

    def backward(grad):
        prediction.accumulate_grad(grad * 2.0 * residual / residual.size)
    return Tensor.make_result((residual ** 2).mean(), (prediction,), "mse", backward)


LOSSES = {
    'huber': huber_loss,
    'mse': mse_loss,
}
