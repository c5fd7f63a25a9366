#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Adam with decoupled L2 shrinkage and optional pruning masks
"""

import numpy as np

from ofdm_common.exceptions import ShapeError


class AdamState(object):

    """
    Moment estimates and hyper-parameters of an Adam optimizer
    """

    def __init__(self, lr=0.002, beta1=0.9, beta2=0.999, eps=1e-8, l2=1e-7):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.l2 = l2
        self.step = 0
        self.first_moment = {}
        self.second_moment = {}


def adam_step(params, grads, state, masks=None):
    """
    One Adam update of every parameter that has a gradient

    The update is p -= lr * (m_hat / (sqrt(v_hat) + eps) + l2 * p). With a mask
    the gradient is multiplied by the mask before the moments are updated and
    the parameter is multiplied by the mask afterwards, so pruned entries stay
    exactly zero.

    :param params: name -> array, updated in place
    :type params: dict
    :param grads: name -> gradient array (missing or None entries are skipped)
    :type grads: dict
    :type state: AdamState
    :param masks: name -> 0/1 array
    :type masks: dict
    :return: params and state
    """
    masks = masks or {}
    state.step += 1
    bias1 = 1.0 - state.beta1 ** state.step
    bias2 = 1.0 - state.beta2 ** state.step
    for name, value in params.items():
        grad = grads.get(name)
        if grad is None:
            continue
        if grad.shape != value.shape:
            raise ShapeError("gradient of {} has shape {}, parameter has {}".format(
                name, grad.shape, value.shape))
        mask = masks.get(name)
        if mask is not None:
            grad = grad * mask
        m = state.first_moment.get(name)
        v = state.second_moment.get(name)
        if m is None:
            m = np.zeros_like(value)
            v = np.zeros_like(value)
        m = state.beta1 * m + (1.0 - state.beta1) * grad
        v = state.beta2 * v + (1.0 - state.beta2) * grad ** 2
        if mask is not None:
            m = m * mask
            v = v * mask
        state.first_moment[name] = m
        state.second_moment[name] = v
        update = (m / bias1) / (np.sqrt(v / bias2) + state.eps) + state.l2 * value
        value -= state.lr * update
        if mask is not None:
            value *= mask
    return params, state


class Adam(object):

    """
    Optimizer bound to a set of named tensors

    :param params: name -> Tensor
    :type params: dict
    """

    def __init__(self, params, lr=0.002, beta1=0.9, beta2=0.999, eps=1e-8, l2=1e-7):
        self.params = params
        self.state = AdamState(lr=lr, beta1=beta1, beta2=beta2, eps=eps, l2=l2)

    @property
    def lr(self):
        return self.state.lr

    @lr.setter
    def lr(self, value):
        self.state.lr = value

    def zero_grad(self):
        for tensor in self.params.values():
            tensor.zero_grad()

    def step(self, masks=None):
        adam_step({name: t.data for name, t in self.params.items()},
                  {name: t.grad for name, t in self.params.items()},
                  self.state, masks)
