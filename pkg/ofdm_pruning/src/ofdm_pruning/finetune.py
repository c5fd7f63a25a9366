#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Masked fine-tuning with gradient based reactivation
"""

from collections import OrderedDict

import numpy as np

from ofdm_common.core import make_rng
from ofdm_training.hyperparams import Hyperparams
from ofdm_training.trainer import Trainer, batch_loss, evaluate

from ofdm_pruning.pruning import check_masks, reactivation_check

FINE_TUNE_SAMPLES = 15000
REACTIVATION_FACTOR = 5.0


class FineTuneResult(object):

    """
    :param training: result of the epoch loop
    :type training: ofdm_training.trainer.TrainingResult
    :param reactivated: name -> number of reactivated entries
    """

    def __init__(self, training, reactivated, pruned_before):
        self.training = training
        self.reactivated = reactivated
        self.pruned_before = pruned_before

    @property
    def weights(self):
        return self.training.weights

    @property
    def reactivated_count(self):
        return int(sum(self.reactivated.values()))


class FineTuner(Trainer):

    """
    Trainer that keeps every gradient and updates only unpruned entries

    Gradients of pruned entries are recorded during the last epoch, or over
    one extra pass when training restored an earlier epoch. Pruned entries
    with persistently large gradients are then reactivated and trained for
    one more epoch, which is validated and appended to the history.
    """

    def __init__(self, weights, hyperparams=None, name='fine_tuner', params=None, seed=0):
        check_masks(weights)
        super(FineTuner, self).__init__(weights, hyperparams or Hyperparams.fine_tune(), name,
                                        params, seed)
        self.factor = float(self.get_param('pruning.reactivation_factor', REACTIVATION_FACTOR))
        self._grad_sums = OrderedDict()
        self._grad_batches = 0
        self.reactivated = OrderedDict()

    def on_batch(self, epoch, grads):
        if epoch == self.hyperparams.max_epochs:
            self._accumulate(grads)

    def _accumulate(self, grads):
        for name, grad in grads.items():
            if grad is None:
                continue
            if name in self._grad_sums:
                self._grad_sums[name] += np.abs(grad)
            else:
                self._grad_sums[name] = np.abs(grad)
        self._grad_batches += 1

    def collect_gradients(self, train_set):
        """
        Gradient statistics over one pass at the current weights, without updates
        """
        self._grad_sums = OrderedDict()
        self._grad_batches = 0
        for features, labels in train_set.batches(self.hyperparams.batch_size):
            self.optimizer.zero_grad()
            batch_loss(self.weights, features, labels, self.hyperparams).backward()
            self._accumulate({name: t.grad for name, t in self.weights.params.items()})
        self.optimizer.zero_grad()

    def reactivate(self):
        if not self._grad_batches or not self.weights.masks:
            return {}
        means = {name: total / self._grad_batches for name, total in self._grad_sums.items()}
        masks, counts = reactivation_check(means, self.weights.masks, self.factor)
        self.weights.masks = masks
        for name, count in counts.items():
            self.loginfo("Reactivated {} entries of {}".format(count, name))
        return counts

    def fine_tune(self, train_set, val_set=None):
        """
        :rtype: FineTuneResult
        """
        pruned_before = int(sum(np.sum(m == 0) for m in self.weights.masks.values()))
        result = self.train(train_set, val_set)
        if result.best_epoch != self.hyperparams.max_epochs:
            self.collect_gradients(train_set)
        self.reactivated = self.reactivate()
        if self.reactivated:
            self.train_reactivated(result, train_set, val_set)
        else:
            self.loginfo("No pruned parameter reactivated")
        return FineTuneResult(result, self.reactivated, pruned_before)

    def train_reactivated(self, result, train_set, val_set=None):
        """
        One more epoch with the reactivated entries, validated and added to the history
        """
        epoch = self.hyperparams.max_epochs + 1
        self.loginfo("Training {} reactivated entries for one epoch".format(
            sum(self.reactivated.values())))
        train_loss = self.train_epoch(epoch, train_set, make_rng(self.seed, 'reactivation'))
        val_loss = evaluate(self.weights, val_set, self.hyperparams) if val_set else train_loss
        best_loss = min(row[2] for row in result.history) if result.history else float('inf')
        result.history.append((epoch, train_loss, val_loss, self.optimizer.lr))
        self.loginfo("epoch {}: train {:.6g} val {:.6g} lr {:g}".format(
            epoch, train_loss, val_loss, self.optimizer.lr))
        if val_loss <= best_loss:
            result.best_epoch = epoch
        else:
            self.logwarn("Validation loss rose to {:.6g} after reactivation (best {:.6g})".format(
                val_loss, best_loss))


def fine_tune(weights, dataset, hyperparams=None, seed=0, params=None, validation_fraction=0.05):
    """
    Fine-tune a pruned network in place

    :type weights: ofdm_channelformer.model.ModelWeights
    :type dataset: ofdm_training.dataset.Dataset
    :rtype: FineTuneResult
    """
    if dataset is None or not len(dataset):
        raise ValueError("Fine tuning needs a non-empty dataset")
    train_set, val_set = dataset, None
    if len(dataset) > 1:
        train_set, val_set = dataset.split(validation_fraction)
    return FineTuner(weights, hyperparams, params=params, seed=seed).fine_tune(train_set, val_set)
