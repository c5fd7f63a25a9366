#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Attention encoder and residual convolutional decoder

Features are laid out [..., rows, channels]: 72 pilot rows (first pilot symbol,
then second) and two channels (real, imaginary). Convolutions treat rows and
channels as a two dimensional map with a trailing filter axis.
"""

from collections import OrderedDict

import numpy as np

from ofdm_common.core import make_rng
from ofdm_common.exceptions import ShapeError
from ofdm_nn import init
from ofdm_nn.functional import (conv2d, fully_connected, gelu, layer_norm,
                                multi_head_attention, relu)
from ofdm_nn.tensor import Tensor, as_tensor

from ofdm_channelformer.config import ModelConfig

ENCODER = 'enc.'
DECODER = 'dec.'


class ModelWeights(object):

    """
    Named parameter tensors of one network with optional pruning masks

    :param config: network structure
    :type config: ModelConfig
    :param params: name -> Tensor in enumeration order
    :type params: OrderedDict
    :param masks: name -> 0/1 array for pruned tensors
    :type masks: dict
    """

    def __init__(self, config, params, masks=None):
        self.config = config
        self.params = params
        self.masks = masks or {}
        for name, mask in self.masks.items():
            if name not in self.params or mask.shape != self.params[name].shape:
                raise ShapeError("Mask for {} does not match the parameter".format(name))

    def __getitem__(self, name):
        return self.params[name]

    def __repr__(self):
        return "ModelWeights({}, {} parameters)".format(self.config.mode, count_parameters(self))

    @property
    def mode(self):
        return self.config.mode

    def names(self, prefix=''):
        return [name for name in self.params if name.startswith(prefix)]

    def copy(self):
        params = OrderedDict((name, Tensor(t.data.copy(), requires_grad=True, name=name))
                             for name, t in self.params.items())
        masks = {name: mask.copy() for name, mask in self.masks.items()}
        return ModelWeights(self.config, params, masks)

    def arrays(self):
        return OrderedDict((name, t.data) for name, t in self.params.items())

    def load_arrays(self, arrays):
        for name, values in arrays.items():
            if values.shape != self.params[name].shape:
                raise ShapeError("Array for {} has shape {}, parameter has {}".format(
                    name, values.shape, self.params[name].shape))
            self.params[name].data[...] = values

    def apply_masks(self):
        for name, mask in self.masks.items():
            self.params[name].data *= mask


def _add_dense(params, name, rows, cols, rng):
    weight, bias = init.dense(rows, cols, rng)
    params[name + '.W'] = weight
    params[name + '.b'] = bias


def _add_conv(params, name, extent, c_in, c_out, rng):
    kernel, bias = init.conv(extent, extent, c_in, c_out, rng)
    params[name + '.k'] = kernel
    params[name + '.b'] = bias


def _add_norm(params, name, features):
    weight, bias = init.norm(features)
    params[name + '.w'] = weight
    params[name + '.b'] = bias


def build(config, seed=0):
    """
    Glorot-uniform weights, zero biases, unit layer-norm gains

    :type config: ModelConfig
    :rtype: ModelWeights
    """
    rng = make_rng(seed, 'weights', config.mode)
    rows = config.input_rows
    arrays = OrderedDict()
    _add_dense(arrays, 'enc.fc1', 3 * rows, rows, rng)
    _add_dense(arrays, 'enc.fc2', rows, rows, rng)
    _add_norm(arrays, 'enc.norm1', rows)
    _add_conv(arrays, 'enc.prenet.conv1', config.encoder_kernel, 1, config.encoder_filters, rng)
    _add_conv(arrays, 'enc.prenet.conv2', config.encoder_kernel, config.encoder_filters, 1, rng)
    _add_norm(arrays, 'enc.norm2', rows)
    _add_conv(arrays, 'dec.conv_in', config.kernel, 1, config.decoder_filters, rng)
    for block in range(config.blocks):
        prefix = 'dec.block{}'.format(block)
        _add_conv(arrays, prefix + '.conv1', config.kernel, config.decoder_filters,
                  config.decoder_filters, rng)
        _add_conv(arrays, prefix + '.conv2', config.kernel, config.decoder_filters,
                  config.decoder_filters, rng)
        _add_norm(arrays, prefix + '.norm', rows)
    _add_dense(arrays, 'dec.fc_up', config.output_rows, rows, rng)
    _add_conv(arrays, 'dec.conv_out', config.kernel, config.decoder_filters, 1, rng)
    params = OrderedDict((name, Tensor(values, requires_grad=True, name=name))
                         for name, values in arrays.items())
    return ModelWeights(config, params)


def count_parameters(weights, prefix=''):
    """
    Number of scalar parameters whose name starts with prefix
    """
    return int(sum(t.size for name, t in weights.params.items() if name.startswith(prefix)))


def encoder_forward(x, weights, probe=None):
    """
    Attention pre-processor: [..., 72, 2] -> [..., 72, 2, 1]

    :param x: marshalled pilot estimate
    :param probe: optional list receiving per-head attention results
    :rtype: Tensor
    """
    x = as_tensor(x)
    config = weights.config
    if x.ndim < 2 or x.shape[-2:] != (config.input_rows, 2):
        raise ShapeError("Encoder input must be [..., {}, 2], got {}".format(
            config.input_rows, x.shape))
    p = weights.params
    projected = fully_connected(x, p['enc.fc1.W'], p['enc.fc1.b'])
    attended = multi_head_attention(projected, config.n_heads, p['enc.fc2.W'], p['enc.fc2.b'],
                                    probe=probe)
    y = layer_norm(attended + x, p['enc.norm1.w'], p['enc.norm1.b'], axis=-2)
    y = y.reshape(y.shape + (1,))
    hidden = gelu(conv2d(y, p['enc.prenet.conv1.k'], p['enc.prenet.conv1.b']))
    pre = conv2d(hidden, p['enc.prenet.conv2.k'], p['enc.prenet.conv2.b'])
    return layer_norm(pre + y, p['enc.norm2.w'], p['enc.norm2.b'], axis=-3)


def decoder_forward(z, weights):
    """
    Residual convolutional decoder: [..., 72, 2, 1] -> [..., out_rows, 2]

    The upsampling layer maps the 72 rows of every (channel, filter) map with
    one shared dense layer.

    :rtype: Tensor
    """
    z = as_tensor(z)
    config = weights.config
    if z.ndim < 3 or z.shape[-3:] != (config.input_rows, 2, 1):
        raise ShapeError("Decoder input must be [..., {}, 2, 1], got {}".format(
            config.input_rows, z.shape))
    p = weights.params
    h = conv2d(z, p['dec.conv_in.k'], p['dec.conv_in.b'])
    for block in range(config.blocks):
        prefix = 'dec.block{}'.format(block)
        inner = relu(conv2d(h, p[prefix + '.conv1.k'], p[prefix + '.conv1.b']))
        inner = conv2d(inner, p[prefix + '.conv2.k'], p[prefix + '.conv2.b'])
        h = layer_norm(inner + h, p[prefix + '.norm.w'], p[prefix + '.norm.b'], axis=-3)
    up = fully_connected(h, p['dec.fc_up.W'], p['dec.fc_up.b'], axis=-3)
    out = conv2d(up, p['dec.conv_out.k'], p['dec.conv_out.b'])
    return out.reshape(out.shape[:-1])


def forward(x, weights, probe=None):
    """
    Full network: marshalled pilot estimate to marshalled channel prediction
    """
    return decoder_forward(encoder_forward(x, weights, probe=probe), weights)


def predict(x, weights):
    """
    Inference on plain arrays without building a gradient graph
    """
    frozen = ModelWeights(weights.config,
                          OrderedDict((n, Tensor(t.data)) for n, t in weights.params.items()))
    return forward(Tensor(np.asarray(x, dtype=np.float64)), frozen).data


def build_for_mode(mode, seed=0):
    return build(ModelConfig.for_mode(mode), seed)
