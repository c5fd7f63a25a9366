#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Training hyper-parameters and the step learning-rate schedule
"""

from ofdm_common.exceptions import ConfigurationError
from ofdm_nn.losses import LOSSES

from ofdm_channelformer.config import OFFLINE, ONLINE


class Hyperparams(object):

    """
    :param max_epochs: number of epochs
    :param initial_lr: learning rate of the first epoch
    :param lr_drop_period: epochs between drops, None for a constant rate
    :param lr_drop_factor: multiplier applied at every drop, in (0, 1]
    :param batch_size: mini-batch size
    :param l2: decoupled L2 shrinkage
    :param loss: 'huber' or 'mse'
    :param delta: Huber transition
    """

    def __init__(self, max_epochs=20, initial_lr=0.002, lr_drop_period=10, lr_drop_factor=0.5,
                 batch_size=128, l2=1e-7, loss='huber', delta=1.0):
        if max_epochs < 1 or batch_size < 1:
            raise ValueError("Epochs and batch size must be positive, got {} and {}".format(
                max_epochs, batch_size))
        if initial_lr <= 0 or l2 < 0 or delta <= 0:
            raise ValueError("Invalid learning rate {}, L2 {} or delta {}".format(
                initial_lr, l2, delta))
        if lr_drop_period is not None and lr_drop_period < 1:
            raise ValueError("Drop period must be positive, got {}".format(lr_drop_period))
        if not 0 < lr_drop_factor <= 1:
            raise ValueError("Drop factor must be in (0, 1], got {}".format(lr_drop_factor))
        if loss not in LOSSES:
            raise ConfigurationError("Unknown loss '{}'".format(loss))
        self.max_epochs = int(max_epochs)
        self.initial_lr = float(initial_lr)
        self.lr_drop_period = lr_drop_period
        self.lr_drop_factor = float(lr_drop_factor)
        self.batch_size = int(batch_size)
        self.l2 = float(l2)
        self.loss = loss
        self.delta = float(delta)

    def __repr__(self):
        return ("Hyperparams(epochs={}, lr={}, drop={}x{}, batch={})".format(
            self.max_epochs, self.initial_lr, self.lr_drop_factor, self.lr_drop_period,
            self.batch_size))

    def learning_rate(self, epoch):
        """
        lr of a 1-based epoch: initial_lr * factor ^ floor((epoch - 1) / period)
        """
        if self.lr_drop_period is None:
            return self.initial_lr
        return self.initial_lr * self.lr_drop_factor ** ((epoch - 1) // self.lr_drop_period)

    def drop_epochs(self):
        if self.lr_drop_period is None:
            return []
        return list(range(self.lr_drop_period, self.max_epochs + 1, self.lr_drop_period))

    @classmethod
    def for_mode(cls, mode, nominal=False):
        """
        Offline network: 100 epochs (20 at desk scale), drop every 50;
        online network: 20 epochs, drop every 10
        """
        if mode == OFFLINE:
            return cls(max_epochs=100 if nominal else 20, lr_drop_period=50)
        if mode == ONLINE:
            return cls(max_epochs=20, lr_drop_period=10)
        raise ConfigurationError("Unknown model mode '{}'".format(mode))

    @classmethod
    def fine_tune(cls):
        return cls(max_epochs=10, initial_lr=0.001, lr_drop_period=None, batch_size=32)

    @classmethod
    def from_settings(cls, settings, base=None):
        """
        Override a preset with a 'hyperparams' settings block
        """
        base = base or cls()
        values = dict(max_epochs=base.max_epochs, initial_lr=base.initial_lr,
                      lr_drop_period=base.lr_drop_period, lr_drop_factor=base.lr_drop_factor,
                      batch_size=base.batch_size, l2=base.l2, loss=base.loss, delta=base.delta)
        unknown = set(settings or {}) - set(values)
        if unknown:
            raise ConfigurationError("Unknown hyperparams keys: {}".format(sorted(unknown)))
        values.update(settings or {})
        return cls(**values)
