#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Minimal differentiable tensor library for the channel estimation models
"""

from ofdm_nn.tensor import Tensor, concatenate, stack  # noqa: F401
from ofdm_nn.functional import (  # noqa: F401
    fully_connected, conv2d, layer_norm, gelu, relu, softmax_rows,
    scaled_dot_product_attention, multi_head_attention)
from ofdm_nn.losses import huber_loss, mse_loss  # noqa: F401
from ofdm_nn.optim import Adam, AdamState, adam_step  # noqa: F401
