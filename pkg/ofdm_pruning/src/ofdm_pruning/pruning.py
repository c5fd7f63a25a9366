#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Region-wise magnitude pruning

The encoder and the decoder are pruned separately: within each region the
smallest-magnitude fraction of all parameters is removed, whatever tensor they
belong to.
"""

from collections import OrderedDict

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_common.logging import loginfo

from ofdm_channelformer.model import DECODER, ENCODER

REGIONS = OrderedDict([('encoder', ENCODER), ('decoder', DECODER)])


class PruneReport(object):

    """
    Target and achieved ratio per region

    :param regions: region -> (pruned count, region size)
    """

    def __init__(self, ratio, regions):
        self.ratio = ratio
        self.regions = regions

    def achieved(self, region):
        pruned, size = self.regions[region]
        return pruned / float(size) if size else 0.0

    def rows(self):
        for region, (pruned, size) in self.regions.items():
            yield region, self.ratio, pruned, size, self.achieved(region)

    def __repr__(self):
        return "PruneReport({})".format(", ".join(
            "{} {:.4f}".format(region, self.achieved(region)) for region in self.regions))


def check_ratio(ratio):
    if not 0.0 <= ratio < 1.0:
        raise ValueError("Pruning ratio must be in [0, 1), got {}".format(ratio))


def region_masks(weights, names, ratio):
    """
    Masks removing the round(ratio * size) smallest magnitudes of the named tensors

    Ties keep the tensor enumeration order: earlier entries are pruned first.

    :return: name -> 0/1 mask, and the pruned count
    """
    values = [weights[name].data.reshape(-1) for name in names]
    if not values:
        return {}, 0
    flat = np.abs(np.concatenate(values))
    count = int(round(ratio * flat.size))
    keep = np.ones(flat.size)
    keep[np.argsort(flat, kind='stable')[:count]] = 0.0
    masks = {}
    offset = 0
    for name in names:
        size = weights[name].size
        masks[name] = keep[offset:offset + size].reshape(weights[name].shape)
        offset += size
    return masks, count


def prune_by_magnitude(weights, ratio, regions=REGIONS):
    """
    Copy of the weights with region-wise magnitude masks applied

    :param weights: trained network, left untouched
    :type weights: ofdm_channelformer.model.ModelWeights
    :param ratio: fraction to prune in each region, [0, 1)
    :param regions: region name -> parameter name prefix
    :return: the pruned copy and the report
    :rtype: tuple(ModelWeights, PruneReport)
    """
    check_ratio(ratio)
    pruned = weights.copy()
    pruned.masks = {}
    counts = OrderedDict()
    for region, prefix in regions.items():
        names = pruned.names(prefix)
        masks, count = region_masks(pruned, names, ratio)
        pruned.masks.update(masks)
        counts[region] = (count, sum(pruned[n].size for n in names))
    pruned.apply_masks()
    report = PruneReport(ratio, counts)
    for region, target, count, size, achieved in report.rows():
        loginfo("Pruned {} of {} {} parameters (ratio {:.4f}, target {:g})".format(
            count, size, region, achieved, target))
    return pruned, report


def prune_without_finetune(weights, ratio):
    """
    Magnitude pruning of a trained network with no retraining afterwards
    """
    return prune_by_magnitude(weights, ratio)[0]


def check_masks(weights):
    """
    :raises ShapeError: a mask names an unknown tensor or has another shape
    """
    for name, mask in weights.masks.items():
        if name not in weights.params:
            raise ShapeError("Mask for unknown parameter {}".format(name))
        if mask.shape != weights[name].shape:
            raise ShapeError("Mask for {} has shape {}, parameter has {}".format(
                name, mask.shape, weights[name].shape))


def reactivation_check(mean_abs_grads, masks, factor=5.0):
    """
    Reactivate pruned parameters whose gradient stays large

    A pruned entry is reactivated when its mean |gradient| over the last epoch
    exceeds factor times the median mean |gradient| of all kept entries.

    :param mean_abs_grads: name -> mean |raw gradient| array
    :param masks: name -> 0/1 mask
    :return: updated masks and name -> number of reactivated entries
    """
    kept = [mean_abs_grads[name][mask > 0] for name, mask in masks.items()
            if name in mean_abs_grads]
    kept += [grads.reshape(-1) for name, grads in mean_abs_grads.items() if name not in masks]
    kept = np.concatenate(kept) if kept else np.zeros(0)
    if not kept.size:
        return dict(masks), {}
    threshold = factor * float(np.median(kept))
    updated, counts = {}, OrderedDict()
    for name, mask in masks.items():
        grads = mean_abs_grads.get(name)
        if grads is None:
            updated[name] = mask
            continue
        revive = (mask == 0) & (grads > threshold)
        updated[name] = np.where(revive, 1.0, mask)
        if np.any(revive):
            counts[name] = int(np.sum(revive))
    return updated, counts
