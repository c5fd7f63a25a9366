#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Weight file: named float64 tensors with optional pruning masks
"""

from collections import OrderedDict

import numpy as np

from ofdm_common.binary_io import (expect_eof, read_array, read_header, read_string,
                                   read_struct, write_array, write_header, write_string,
                                   write_struct)
from ofdm_common.exceptions import FormatError
from ofdm_common.logging import logdebug
from ofdm_nn.tensor import Tensor

from ofdm_channelformer.config import ModelConfig
from ofdm_channelformer.model import ModelWeights, build

MAGIC = b"OFDMCFW\0"
VERSION = 1
WHAT = "weight"


def save_weights(path, weights):
    """
    :type weights: ModelWeights
    """
    with open(path, "wb") as handle:
        write_header(handle, MAGIC, VERSION)
        write_string(handle, weights.mode)
        write_struct(handle, "<I", len(weights.params))
        for name, tensor in weights.params.items():
            write_string(handle, name)
            write_struct(handle, "<B", tensor.ndim)
            write_struct(handle, "<{}I".format(tensor.ndim), *tensor.shape)
            write_array(handle, tensor.data, "<f8")
            mask = weights.masks.get(name)
            write_struct(handle, "<B", 0 if mask is None else 1)
            if mask is not None:
                write_array(handle, mask, "u1")
    logdebug("Saved {} tensors to {}".format(len(weights.params), path))


def _config_from_shapes(mode, arrays):
    try:
        blocks = len([name for name in arrays if name.endswith('.norm.w')
                      and name.startswith('dec.block')])
        return ModelConfig(mode, blocks=blocks,
                           encoder_filters=arrays['enc.prenet.conv1.k'].shape[3],
                           decoder_filters=arrays['dec.conv_in.k'].shape[3],
                           kernel=arrays['dec.conv_in.k'].shape[0],
                           encoder_kernel=arrays['enc.prenet.conv1.k'].shape[0])
    except (KeyError, IndexError, ValueError) as e:
        raise FormatError("Weight file does not describe a complete network: {}".format(e))


def load_weights(path):
    """
    :rtype: ModelWeights
    :raises FormatError: bad magic, version, truncation or an incomplete tensor table
    """
    arrays = OrderedDict()
    masks = {}
    with open(path, "rb") as handle:
        read_header(handle, MAGIC, VERSION, WHAT)
        mode = read_string(handle, WHAT)
        count, = read_struct(handle, "<I", WHAT)
        for _ in range(count):
            name = read_string(handle, WHAT)
            ndim, = read_struct(handle, "<B", WHAT)
            shape = read_struct(handle, "<{}I".format(ndim), WHAT)
            arrays[name] = read_array(handle, "<f8", shape, WHAT)
            has_mask, = read_struct(handle, "<B", WHAT)
            if has_mask:
                masks[name] = read_array(handle, "u1", shape, WHAT).astype(np.float64)
        expect_eof(handle, WHAT)
    config = _config_from_shapes(mode, arrays)
    reference = build(config)
    if list(reference.params) != list(arrays) or any(
            reference.params[n].shape != a.shape for n, a in arrays.items()):
        raise FormatError("Tensor table of {} does not match a {} network".format(path, mode))
    params = OrderedDict((name, Tensor(values, requires_grad=True, name=name))
                         for name, values in arrays.items())
    return ModelWeights(config, params, masks)
