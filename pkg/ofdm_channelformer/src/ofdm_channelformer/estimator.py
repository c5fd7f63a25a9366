#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Network channel estimate of a whole slot
"""

from ofdm_estimators.interpolation import linear_time_to_frame

from ofdm_channelformer.config import ONLINE
from ofdm_channelformer.marshalling import output_to_channel
from ofdm_channelformer.model import predict


def estimate_slot(weights, features):
    """
    Marshalled pilot estimates [..., 72, 2] to channel grids [..., 72, 14]

    The online network predicts the pilot symbols only; the slot is filled by
    linear interpolation over time.
    """
    frame = weights.config.frame
    channel = output_to_channel(predict(features, weights), weights.mode, frame)
    if weights.mode == ONLINE:
        return linear_time_to_frame(channel, frame)
    return channel
