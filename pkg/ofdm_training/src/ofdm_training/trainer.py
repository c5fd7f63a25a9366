#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Mini-batch training with Adam and a step learning-rate schedule
"""

import math

import numpy as np

from ofdm_common.core import make_rng
from ofdm_common.exceptions import ShapeError, TrainingDivergedError
from ofdm_common.node import ConfigurableNode
from ofdm_common.tables import write_table
from ofdm_nn.losses import huber_elementwise, huber_loss, mse_loss
from ofdm_nn.optim import Adam
from ofdm_nn.tensor import Tensor

from ofdm_channelformer.model import forward, predict

LOSS_CURVE_COLUMNS = ['epoch', 'train_loss', 'val_loss', 'lr']


def batch_loss(weights, features, labels, hyperparams):
    """
    Differentiable mean loss of one mini-batch

    :rtype: Tensor
    """
    prediction = forward(Tensor(features), weights)
    if hyperparams.loss == 'mse':
        return mse_loss(prediction, labels)
    return huber_loss(prediction, labels, hyperparams.delta)


def evaluate(weights, dataset, hyperparams, batch_size=512):
    """
    Mean loss over a dataset without building gradients
    """
    if not len(dataset):
        return float('nan')
    total = 0.0
    for features, labels in dataset.batches(batch_size):
        residual = predict(features, weights) - labels
        if hyperparams.loss == 'mse':
            total += float(np.sum(residual ** 2))
        else:
            total += float(np.sum(huber_elementwise(residual, hyperparams.delta)))
    return total / float(dataset.labels.size)


class TrainingResult(object):

    """
    :param weights: weights of the best validation epoch
    :param history: (epoch, train_loss, val_loss, lr) per epoch
    """

    def __init__(self, weights, history, best_epoch):
        self.weights = weights
        self.history = history
        self.best_epoch = best_epoch

    @property
    def final_val_loss(self):
        return self.history[-1][2] if self.history else float('nan')

    def write_loss_curve(self, path, provenance_entries=()):
        return write_table(path, self.history, LOSS_CURVE_COLUMNS, provenance_entries)


class Trainer(ConfigurableNode):

    """
    Epoch loop over shuffled mini-batches

    Pruning masks of the weights are honoured by every update. Subclasses may
    override on_batch to inspect raw gradients after each backward pass.

    :param weights: weights trained in place
    :type weights: ofdm_channelformer.model.ModelWeights
    :type hyperparams: ofdm_training.hyperparams.Hyperparams
    """

    def __init__(self, weights, hyperparams, name='trainer', params=None, seed=0):
        super(Trainer, self).__init__(name, params)
        self.weights = weights
        self.hyperparams = hyperparams
        self.seed = seed
        self.optimizer = Adam(weights.params, lr=hyperparams.initial_lr, l2=hyperparams.l2)

    def on_batch(self, epoch, grads):
        pass

    def on_epoch_end(self, epoch):
        pass

    def _check_dataset(self, dataset):
        if dataset is None or not len(dataset):
            raise ValueError("Training needs a non-empty dataset")
        rows = self.weights.config.output_rows
        if dataset.labels.shape[1] != rows:
            raise ShapeError("{} labels have {} rows, the network predicts {}".format(
                dataset.kind, dataset.labels.shape[1], rows))

    def train_epoch(self, epoch, dataset, rng):
        self.optimizer.lr = self.hyperparams.learning_rate(epoch)
        total, count = 0.0, 0
        for features, labels in dataset.batches(self.hyperparams.batch_size, rng):
            self.optimizer.zero_grad()
            loss = batch_loss(self.weights, features, labels, self.hyperparams)
            loss.backward()
            value = loss.item()
            if not math.isfinite(value):
                raise TrainingDivergedError(
                    "Loss became {} in epoch {} (lr {})".format(value, epoch, self.optimizer.lr))
            self.on_batch(epoch, {name: t.grad for name, t in self.weights.params.items()})
            self.optimizer.step(self.weights.masks)
            total += value * len(features)
            count += len(features)
        return total / count

    def train(self, train_set, val_set=None):
        """
        Run all epochs and restore the weights of the best validation epoch

        :rtype: TrainingResult
        """
        self._check_dataset(train_set)
        rng = make_rng(self.seed, 'shuffle')
        history = []
        best_loss, best_epoch, best_arrays = float('inf'), 0, None
        for epoch in range(1, self.hyperparams.max_epochs + 1):
            train_loss = self.train_epoch(epoch, train_set, rng)
            val_loss = evaluate(self.weights, val_set, self.hyperparams) if val_set else train_loss
            history.append((epoch, train_loss, val_loss, self.optimizer.lr))
            self.loginfo("epoch {}: train {:.6g} val {:.6g} lr {:g}".format(
                epoch, train_loss, val_loss, self.optimizer.lr))
            if val_loss < best_loss:
                best_loss, best_epoch = val_loss, epoch
                best_arrays = {n: a.copy() for n, a in self.weights.arrays().items()}
            self.on_epoch_end(epoch)
        if best_arrays is not None and best_epoch != self.hyperparams.max_epochs:
            self.loginfo("Restoring weights of epoch {}".format(best_epoch))
            self.weights.load_arrays(best_arrays)
        return TrainingResult(self.weights, history, best_epoch)


def train_offline(weights, dataset, hyperparams, seed=0, validation_fraction=0.05, params=None):
    """
    Split off the validation part and train

    :rtype: TrainingResult
    """
    if dataset is None or not len(dataset):
        raise ValueError("Training needs a non-empty dataset")
    train_set, val_set = dataset, None
    if len(dataset) > 1:
        train_set, val_set = dataset.split(validation_fraction)
    trainer = Trainer(weights, hyperparams, params=params, seed=seed)
    return trainer.train(train_set, val_set)
