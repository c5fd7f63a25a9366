#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Attention encoder / convolutional decoder channel estimation network
"""

from ofdm_channelformer.config import ModelConfig, OFFLINE, ONLINE  # noqa: F401
from ofdm_channelformer.model import (  # noqa: F401
    ModelWeights, build, count_parameters, encoder_forward, decoder_forward, forward, predict)
from ofdm_channelformer.marshalling import (  # noqa: F401
    input_from_ls, output_to_channel, channel_to_output)
from ofdm_channelformer.weights_io import save_weights, load_weights  # noqa: F401
from ofdm_channelformer.probe import AttentionProbe, attention_probe_run  # noqa: F401
from ofdm_channelformer.estimator import estimate_slot  # noqa: F401
