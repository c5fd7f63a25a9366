#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Layer primitives with hand-written backward passes

Tensors may carry any number of leading batch axes. Feature axes are addressed
with negative indices so the same call works batched and unbatched.
"""

import math

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_nn.tensor import Tensor, as_tensor, concatenate

LAYER_NORM_EPS = 1e-5
_GELU_C = math.sqrt(2.0 / math.pi)


def fully_connected(x, weight, bias, axis=-2):
    """
    Apply a dense layer along one feature axis, shared over all other axes

    :param x: input tensor with F entries along axis
    :type x: Tensor
    :param weight: G x F matrix
    :param bias: G entries
    :return: tensor with G entries along axis
    :rtype: Tensor
    """
    x, weight, bias = as_tensor(x), as_tensor(weight), as_tensor(bias)
    if weight.ndim != 2 or x.shape[axis] != weight.shape[1]:
        raise ShapeError("fully_connected: weight {} does not match axis {} of input {}".format(
            weight.shape, axis, x.shape))
    if bias.shape != (weight.shape[0],):
        raise ShapeError("fully_connected: bias {} does not match weight {}".format(
            bias.shape, weight.shape))
    axis = axis % x.ndim
    moved = np.moveaxis(x.data, axis, -1)
    out = np.moveaxis(moved @ weight.data.T + bias.data, -1, axis)

    def backward(grad):
        grad_moved = np.moveaxis(grad, axis, -1)
        x.accumulate_grad(np.moveaxis(grad_moved @ weight.data, -1, axis))
        flat_grad = grad_moved.reshape(-1, weight.shape[0])
        weight.accumulate_grad(flat_grad.T @ moved.reshape(-1, weight.shape[1]))
        bias.accumulate_grad(flat_grad.sum(axis=0))
    return Tensor.make_result(out, (x, weight, bias), "fully_connected", backward)


def _padding(extent):
    before = (extent - 1) // 2
    return before, extent - 1 - before


def conv2d(x, kernel, bias):
    """
    Same-size two dimensional convolution over axes (-3, -2), channels last

    Padding is floor((k-1)/2) zeros before and the rest after on each spatial axis.

    :param x: tensor [..., H, W, C_in]
    :param kernel: tensor [k_h, k_w, C_in, C_out]
    :param bias: tensor [C_out]
    :rtype: Tensor
    """
    x, kernel, bias = as_tensor(x), as_tensor(kernel), as_tensor(bias)
    if x.ndim < 3 or kernel.ndim != 4 or kernel.shape[2] != x.shape[-1]:
        raise ShapeError("conv2d: kernel {} does not fit input {}".format(kernel.shape, x.shape))
    if bias.shape != (kernel.shape[3],):
        raise ShapeError("conv2d: bias {} does not match kernel {}".format(bias.shape,
                                                                         kernel.shape))
    k_h, k_w = kernel.shape[0], kernel.shape[1]
    height, width = x.shape[-3], x.shape[-2]
    pad_h, pad_w = _padding(k_h), _padding(k_w)
    batch_pad = [(0, 0)] * (x.ndim - 3)
    padded = np.pad(x.data, batch_pad + [pad_h, pad_w, (0, 0)])
    out = np.zeros(x.shape[:-1] + (kernel.shape[3],))
    for i in range(k_h):
        for j in range(k_w):
            out += padded[..., i:i + height, j:j + width, :] @ kernel.data[i, j]
    out += bias.data

    def backward(grad):
        grad_padded = np.zeros_like(padded)
        grad_kernel = np.zeros_like(kernel.data)
        flat_grad = grad.reshape(-1, grad.shape[-1])
        for i in range(k_h):
            for j in range(k_w):
                window = padded[..., i:i + height, j:j + width, :]
                grad_padded[..., i:i + height, j:j + width, :] += grad @ kernel.data[i, j].T
                grad_kernel[i, j] = window.reshape(-1, window.shape[-1]).T @ flat_grad
        x.accumulate_grad(grad_padded[..., pad_h[0]:pad_h[0] + height,
                                      pad_w[0]:pad_w[0] + width, :])
        kernel.accumulate_grad(grad_kernel)
        bias.accumulate_grad(flat_grad.sum(axis=0))
    return Tensor.make_result(out, (x, kernel, bias), "conv2d", backward)


def _expand_to_axis(vector, ndim, axis):
    shape = [1] * ndim
    shape[axis] = vector.shape[0]
    return vector.reshape(shape)


def layer_norm(x, weight, bias, axis=-2, eps=LAYER_NORM_EPS):
    """
    Normalize to zero mean and unit variance along axis, then scale and shift

    :param weight: F entries broadcast along axis
    :param bias: F entries broadcast along axis
    """
    x, weight, bias = as_tensor(x), as_tensor(weight), as_tensor(bias)
    axis = axis % x.ndim
    if weight.shape != (x.shape[axis],) or bias.shape != weight.shape:
        raise ShapeError("layer_norm: parameters {} do not match axis {} of input {}".format(
            weight.shape, axis, x.shape))
    count = x.shape[axis]
    mean = x.data.mean(axis=axis, keepdims=True)
    centered = x.data - mean
    inv_std = 1.0 / np.sqrt((centered ** 2).mean(axis=axis, keepdims=True) + eps)
    normalized = centered * inv_std
    w = _expand_to_axis(weight.data, x.ndim, axis)
    out = normalized * w + _expand_to_axis(bias.data, x.ndim, axis)
    reduce_axes = tuple(a for a in range(x.ndim) if a != axis)

    def backward(grad):
        grad_norm = grad * w
        grad_x = inv_std * (grad_norm
                            - grad_norm.mean(axis=axis, keepdims=True)
                            - normalized * (grad_norm * normalized).sum(axis=axis, keepdims=True)
                            / count)
        x.accumulate_grad(grad_x)
        weight.accumulate_grad((grad * normalized).sum(axis=reduce_axes))
        bias.accumulate_grad(grad.sum(axis=reduce_axes))
    return Tensor.make_result(out, (x, weight, bias), "layer_norm", backward)


def gelu(x):
    """
    Gaussian error linear unit, tanh approximation
    """
    x = as_tensor(x)
    inner = _GELU_C * (x.data + 0.044715 * x.data ** 3)
    t = np.tanh(inner)
    out = 0.5 * x.data * (1.0 + t)

    def backward(grad):
        d_inner = _GELU_C * (1.0 + 3.0 * 0.044715 * x.data ** 2)
        x.accumulate_grad(grad * (0.5 * (1.0 + t) + 0.5 * x.data * (1.0 - t ** 2) * d_inner))
    return Tensor.make_result(out, (x,), "gelu", backward)


def relu(x):
    x = as_tensor(x)
    positive = x.data > 0

    def backward(grad):
        x.accumulate_grad(grad * positive)
    return Tensor.make_result(np.where(positive, x.data, 0.0), (x,), "relu", backward)


def softmax_rows(x):
    """
    Softmax over the last axis with max subtraction
    """
    x = as_tensor(x)
    shifted = np.exp(x.data - x.data.max(axis=-1, keepdims=True))
    probs = shifted / shifted.sum(axis=-1, keepdims=True)

    def backward(grad):
        x.accumulate_grad(probs * (grad - (grad * probs).sum(axis=-1, keepdims=True)))
    return Tensor.make_result(probs, (x,), "softmax", backward)


def scaled_dot_product_attention(query, key, value, d_k):
    """
    softmax(Q K^T / sqrt(d_k)) V

    :return: the attended values and the attention probabilities as an array
    :rtype: tuple(Tensor, numpy.ndarray)
    """
    if d_k <= 0:
        raise ShapeError("attention needs d_k > 0, got {}".format(d_k))
    query, key, value = as_tensor(query), as_tensor(key), as_tensor(value)
    scores = (query @ key.swapaxes(-1, -2)) * (1.0 / math.sqrt(d_k))
    probs = softmax_rows(scores)
    return probs @ value, probs.data


def multi_head_attention(y, n_heads, weight, bias, probe=None):
    """
    Multi-head self attention over a stacked [K | Q | V] feature axis

    y holds three blocks of L rows on axis -2. Each block is cut into n_heads
    slices of L / n_heads rows, attention runs per head, the head outputs are
    concatenated head-major and passed through the dense layer (weight, bias).

    :param y: tensor [..., 3L, C]
    :param n_heads: number of heads dividing L
    :param probe: optional list receiving (probabilities, attended values) per head
    :rtype: Tensor
    """
    y = as_tensor(y)
    if y.shape[-2] % 3 != 0:
        raise ShapeError("multi_head_attention: {} rows are not three equal blocks".format(
            y.shape[-2]))
    rows = y.shape[-2] // 3
    if n_heads <= 0 or rows % n_heads != 0:
        raise ShapeError("multi_head_attention: {} heads do not divide {} rows".format(
            n_heads, rows))
    head_rows = rows // n_heads
    heads = []
    for h in range(n_heads):
        key, query, value = [y[..., b * rows + h * head_rows:b * rows + (h + 1) * head_rows, :]
                             for b in range(3)]
        attended, probs = scaled_dot_product_attention(query, key, value, head_rows)
        if probe is not None:
            probe.append((probs, attended.data))
        heads.append(attended)
    return fully_connected(concatenate(heads, axis=-2), weight, bias, axis=-2)
