#!/usr/bin/env python
#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Analytic gradients against central finite differences
"""
import unittest

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_nn.functional import (fully_connected, conv2d, layer_norm, gelu, relu, softmax_rows,
                                multi_head_attention)
from ofdm_nn.gradcheck import numerical_gradient, max_relative_error
from ofdm_nn.losses import huber_loss, mse_loss
from ofdm_nn.tensor import Tensor, concatenate

TOLERANCE = 1e-4


def parameter(rng, *shape):
    return Tensor(rng.normal(size=shape), requires_grad=True)


class TestGradients(unittest.TestCase):

    def assert_gradients(self, loss_fn, tensors):
        loss = loss_fn()
        for tensor in tensors:
            tensor.zero_grad()
        loss.backward()
        for tensor in tensors:
            numeric = numerical_gradient(lambda: loss_fn().item(), tensor, step=1e-5)
            self.assertLess(max_relative_error(tensor.grad, numeric, floor=1e-6), TOLERANCE,
                            msg="gradient of {} differs".format(tensor))

    def test_sum(self):
        """
        Tests d sum(x) / dx is all ones
        """
        x = Tensor(np.arange(6.0).reshape(2, 3), requires_grad=True)
        x.sum().backward()
        np.testing.assert_array_equal(x.grad, np.ones((2, 3)))

    def test_huber_slope(self):
        """
        Tests the linear branch slope of the Huber loss
        """
        x = Tensor([2.0], requires_grad=True)
        huber_loss(x, np.zeros(1)).backward()
        np.testing.assert_array_equal(x.grad, [1.0])

    def test_non_scalar_backward(self):
        with self.assertRaises(ShapeError):
            Tensor(np.ones(3), requires_grad=True).backward()

    def test_fully_connected(self):
        rng = np.random.default_rng(20)
        x, w, b = parameter(rng, 3, 12, 2), parameter(rng, 5, 12), parameter(rng, 5)
        self.assert_gradients(lambda: mse_loss(fully_connected(x, w, b), np.zeros((3, 5, 2))),
                              [x, w, b])

    def test_conv2d(self):
        rng = np.random.default_rng(21)
        x, k, b = parameter(rng, 2, 8, 2, 2), parameter(rng, 2, 2, 2, 3), parameter(rng, 3)
        target = rng.normal(size=(2, 8, 2, 3))
        self.assert_gradients(lambda: mse_loss(conv2d(x, k, b), target), [x, k, b])
        k5 = parameter(rng, 5, 5, 2, 1)
        b1 = parameter(rng, 1)
        self.assert_gradients(lambda: conv2d(x, k5, b1).square().mean(), [x, k5, b1])

    def test_layer_norm(self):
        rng = np.random.default_rng(22)
        x, w, b = parameter(rng, 2, 10, 2), parameter(rng, 10), parameter(rng, 10)
        target = rng.normal(size=(2, 10, 2))
        self.assert_gradients(lambda: mse_loss(layer_norm(x, w, b), target), [x, w, b])

    def test_activations(self):
        rng = np.random.default_rng(23)
        x = parameter(rng, 4, 6)
        target = rng.normal(size=(4, 6))
        self.assert_gradients(lambda: huber_loss(gelu(x) * 2.0, target), [x])
        self.assert_gradients(lambda: mse_loss(softmax_rows(x), np.eye(6)[:4]), [x])
        y = Tensor(rng.uniform(0.1, 1.0, size=(4, 6)) * rng.choice([-1.0, 1.0], size=(4, 6)),
                   requires_grad=True)
        self.assert_gradients(lambda: mse_loss(relu(y), target), [y])

    def test_attention(self):
        """
        Tests gradients through the head split, attention and output layer
        """
        rng = np.random.default_rng(24)
        y, w, b = parameter(rng, 2, 24, 2), parameter(rng, 8, 8), parameter(rng, 8)
        target = rng.normal(size=(2, 8, 2))
        self.assert_gradients(lambda: huber_loss(multi_head_attention(y, 2, w, b), target),
                              [y, w, b])

    def test_composite_network(self):
        """
        Tests a small encoder-like stack end to end
        """
        rng = np.random.default_rng(25)
        x = Tensor(rng.normal(size=(2, 6, 2)))
        w1, b1 = parameter(rng, 18, 6), parameter(rng, 18)
        w2, b2 = parameter(rng, 6, 6), parameter(rng, 6)
        nw, nb = parameter(rng, 6), parameter(rng, 6)
        k, kb = parameter(rng, 2, 2, 1, 1), parameter(rng, 1)
        target = rng.normal(size=(2, 12, 2))

        def loss_fn():
            attended = multi_head_attention(fully_connected(x, w1, b1), 3, w2, b2)
            hidden = gelu(layer_norm(attended + x, nw, nb))
            conv = conv2d(hidden.reshape(2, 6, 2, 1), k, kb).reshape(2, 6, 2)
            return huber_loss(concatenate([hidden, conv], axis=-2), target)
        self.assert_gradients(loss_fn, [w1, b1, w2, b2, nw, nb, k, kb])

    def test_indexing_and_broadcast(self):
        rng = np.random.default_rng(26)
        x, s = parameter(rng, 3, 4), parameter(rng, 1, 4)
        self.assert_gradients(lambda: ((x * s)[1:, ::2] - x[[0, 0, 2]][:, ::2].sum(axis=0))
                              .square().mean(), [x, s])


if __name__ == '__main__':
    unittest.main()
