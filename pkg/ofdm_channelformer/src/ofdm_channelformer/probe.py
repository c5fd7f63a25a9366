#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Attention probe: which pilot elements the encoder heads emphasize
"""

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_nn.tensor import Tensor

from ofdm_channelformer.model import encoder_forward


class AttentionProbe(object):

    """
    Mean attention statistics over a batch

    :param probabilities: per head, mean N x N attention probability matrix
    :param magnitudes: per head, mean |attention output| [N, 2] (rows, channel)
    """

    def __init__(self, probabilities, magnitudes, count):
        self.probabilities = probabilities
        self.magnitudes = magnitudes
        self.count = count

    @property
    def n_heads(self):
        return len(self.magnitudes)

    def profile(self, head, channel):
        """
        Per-element importance profile of one head and channel
        """
        return self.magnitudes[head][:, channel]

    def rows(self):
        """
        (head, channel, index, mean_abs) tuples for tabular output
        """
        for head, magnitude in enumerate(self.magnitudes):
            for channel in range(magnitude.shape[1]):
                for index, value in enumerate(magnitude[:, channel]):
                    yield head, channel, index, float(value)


def attention_probe_run(weights, inputs):
    """
    Run the encoder on a batch and average the attention of every head

    :param weights: trained network
    :type weights: ofdm_channelformer.model.ModelWeights
    :param inputs: marshalled inputs [B, 72, 2]
    :rtype: AttentionProbe
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    if inputs.ndim == 2:
        inputs = inputs[np.newaxis]
    if inputs.ndim != 3 or inputs.shape[0] == 0:
        raise ShapeError("Probe needs a non-empty batch [B, rows, 2], got {}".format(
            inputs.shape))
    probe = []
    encoder_forward(Tensor(inputs), weights, probe=probe)
    probabilities = [probs.mean(axis=0) for probs, _ in probe]
    magnitudes = [np.abs(attended).mean(axis=0) for _, attended in probe]
    return AttentionProbe(probabilities, magnitudes, inputs.shape[0])
