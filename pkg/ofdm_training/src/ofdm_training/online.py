#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Online training on a stream of received slots
"""

from collections import deque

import numpy as np

from ofdm_common.exceptions import TrainingDivergedError
from ofdm_common.node import ConfigurableNode
from ofdm_nn.losses import huber_loss
from ofdm_nn.optim import Adam
from ofdm_nn.tensor import Tensor

from ofdm_channelformer.config import ONLINE
from ofdm_channelformer.model import forward

ONLINE_BATCH = 3
ONLINE_LR = 0.001


def online_step(weights, optimizer, samples, batch_size=ONLINE_BATCH, delta=1.0):
    """
    One Adam step on the Huber loss of a batch of online samples

    :param optimizer: optimizer bound to weights.params
    :type optimizer: ofdm_nn.optim.Adam
    :param samples: exactly batch_size OnlineSample objects
    :return: loss before the step
    :rtype: float
    """
    if len(samples) != batch_size:
        raise ValueError("Online step needs {} samples, got {}".format(batch_size, len(samples)))
    if weights.mode != ONLINE:
        raise ValueError("Online training needs an online network, got {}".format(weights.mode))
    features = np.stack([s.feature for s in samples])
    labels = np.stack([s.label for s in samples])
    optimizer.zero_grad()
    loss = huber_loss(forward(Tensor(features), weights), labels, delta)
    loss.backward()
    value = loss.item()
    if not np.isfinite(value):
        raise TrainingDivergedError("Online loss became {}".format(value))
    optimizer.step(weights.masks)
    return value


class OnlineTrainer(ConfigurableNode):

    """
    Keeps the most recent samples and steps once per new sample

    Parameters (under 'online'): batch_size, lr, l2.

    :param weights: offline-trained online network, updated in place
    :type weights: ofdm_channelformer.model.ModelWeights
    """

    def __init__(self, weights, name='online_trainer', params=None):
        super(OnlineTrainer, self).__init__(name, params)
        self.weights = weights
        self.batch_size = int(self.get_param('online.batch_size', ONLINE_BATCH))
        if self.batch_size < 1:
            raise ValueError("Online batch size must be positive")
        self.optimizer = Adam(weights.params, lr=float(self.get_param('online.lr', ONLINE_LR)),
                              l2=float(self.get_param('online.l2', 1e-7)))
        self.window = deque(maxlen=self.batch_size)
        self.steps = 0
        self.losses = []

    def push(self, sample):
        """
        Add a sample and train once the window is full

        :return: the step loss, or None while the window fills
        """
        self.window.append(sample)
        if len(self.window) < self.batch_size:
            return None
        loss = online_step(self.weights, self.optimizer, list(self.window), self.batch_size)
        self.steps += 1
        self.losses.append(loss)
        self.logdebug("online step {}: loss {:.6g}".format(self.steps, loss))
        return loss
