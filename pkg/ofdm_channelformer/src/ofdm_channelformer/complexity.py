#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Per-layer parameter and multiply-accumulate counts

The forward delay of a network is modelled as the sum of the execution times of
the layers on its critical path; this module reports the layer count of that
path, not measured times.
"""

from collections import namedtuple


LayerInfo = namedtuple('LayerInfo', ['name', 'kind', 'params', 'macs'])


def _dense(name, rows, cols, applications):
    return LayerInfo(name, 'dense', rows * cols + rows, rows * cols * applications)


def _conv(name, extent, c_in, c_out, positions):
    return LayerInfo(name, 'conv', extent * extent * c_in * c_out + c_out,
                     extent * extent * c_in * c_out * positions)


def _norm(name, features):
    return LayerInfo(name, 'norm', 2 * features, 0)


def _attention(name, rows, n_heads, channels):
    head = rows // n_heads
    return LayerInfo(name, 'attention', 0, 2 * n_heads * head * head * channels)


def layer_report(config):
    """
    Layers in forward order

    :type config: ofdm_channelformer.config.ModelConfig
    :rtype: list(LayerInfo)
    """
    rows = config.input_rows
    positions = rows * 2
    layers = [
        _dense('enc.fc1', 3 * rows, rows, 2),
        _attention('enc.mha', rows, config.n_heads, 2),
        _dense('enc.fc2', rows, rows, 2),
        _norm('enc.norm1', rows),
        _conv('enc.prenet.conv1', config.encoder_kernel, 1, config.encoder_filters, positions),
        _conv('enc.prenet.conv2', config.encoder_kernel, config.encoder_filters, 1, positions),
        _norm('enc.norm2', rows),
        _conv('dec.conv_in', config.kernel, 1, config.decoder_filters, positions),
    ]
    for block in range(config.blocks):
        prefix = 'dec.block{}'.format(block)
        layers += [
            _conv(prefix + '.conv1', config.kernel, config.decoder_filters,
                  config.decoder_filters, positions),
            _conv(prefix + '.conv2', config.kernel, config.decoder_filters,
                  config.decoder_filters, positions),
            _norm(prefix + '.norm', rows),
        ]
    layers += [
        _dense('dec.fc_up', config.output_rows, rows, 2 * config.decoder_filters),
        _conv('dec.conv_out', config.kernel, config.decoder_filters, 1, config.output_rows * 2),
    ]
    return layers


def critical_path_layers(config):
    """
    Sequential layers: 8 in the encoder, 3 + 4K in the decoder

    :type config: ofdm_channelformer.config.ModelConfig
    """
    encoder = 8
    decoder = 3 + 4 * config.blocks
    return encoder + decoder


def summary(config):
    layers = layer_report(config)
    return {
        'params': sum(layer.params for layer in layers),
        'macs': sum(layer.macs for layer in layers),
        'critical_path_layers': critical_path_layers(config),
    }
