#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Training datasets: generation from simulated slots and the dataset file
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ofdm_common.binary_io import (expect_eof, read_array, read_header, read_string,
                                   read_struct, write_array, write_header, write_string,
                                   write_struct)
from ofdm_common.core import derive_seed, make_rng
from ofdm_common.exceptions import FormatError, ShapeError
from ofdm_common.logging import loginfo
from ofdm_estimators.ls import ls_estimate
from ofdm_link.frame import PilotPattern
from ofdm_link.link import apply_channel, build_slot, extract_pilot_ls_input

from ofdm_channelformer.config import OFFLINE, ONLINE
from ofdm_channelformer.marshalling import channel_to_output, input_from_ls

MAGIC = b"OFDMDS\0\0"
VERSION = 1
WHAT = "dataset"
KINDS = (OFFLINE, ONLINE)

SNR_RANGE_DB = (5.0, 25.0)
DOPPLER_RANGE_HZ = (0.0, 97.0)
DESK_SAMPLES = 20000
NOMINAL_SAMPLES = 125000
VALIDATION_FRACTION = 0.05


class Dataset(object):

    """
    Marshalled features and labels with per-sample metadata

    :param kind: OFFLINE (full slot labels) or ONLINE (pilot symbol labels)
    :param features: [n, 72, 2]
    :param labels: [n, rows, 2]
    :param snr_db: [n]
    :param f_d: [n] realized maximum Doppler
    :param seeds: [n] per-sample seeds
    :param profiles: n profile names
    """

    def __init__(self, kind, features, labels, snr_db, f_d, seeds, profiles):
        if kind not in KINDS:
            raise ValueError("Unknown dataset kind '{}'".format(kind))
        features = np.asarray(features, dtype=np.float64)
        labels = np.asarray(labels, dtype=np.float64)
        count = features.shape[0]
        if labels.shape[0] != count or any(len(v) != count for v in (snr_db, f_d, seeds,
                                                                      profiles)):
            raise ShapeError("Dataset columns have different lengths")
        if not np.all(np.isfinite(labels)):
            raise ValueError("Dataset labels must be finite")
        self.kind = kind
        self.features = features
        self.labels = labels
        self.snr_db = np.asarray(snr_db, dtype=np.float64)
        self.f_d = np.asarray(f_d, dtype=np.float64)
        self.seeds = np.asarray(seeds, dtype=np.uint64)
        self.profiles = list(profiles)

    def __len__(self):
        return self.features.shape[0]

    def __repr__(self):
        return "Dataset({}, {} samples)".format(self.kind, len(self))

    def subset(self, indices):
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(self.kind, self.features[indices], self.labels[indices],
                       self.snr_db[indices], self.f_d[indices], self.seeds[indices],
                       [self.profiles[i] for i in indices])

    def split(self, validation_fraction=VALIDATION_FRACTION):
        """
        Training and validation parts, the validation part taken from the end

        :rtype: tuple(Dataset, Dataset)
        """
        n_val = int(round(len(self) * validation_fraction))
        n_train = len(self) - n_val
        return self.subset(range(n_train)), self.subset(range(n_train, len(self)))

    def batches(self, batch_size, rng=None):
        """
        Mini-batches of (features, labels), shuffled when rng is given
        """
        order = np.arange(len(self))
        if rng is not None:
            order = rng.permutation(len(self))
        for start in range(0, len(self), batch_size):
            index = order[start:start + batch_size]
            yield self.features[index], self.labels[index]


def _simulate_sample(channel_spec, pattern, kind, snr_range, sample_seed, noise):
    rng = make_rng(sample_seed)
    snr_db = rng.uniform(*snr_range)
    realization = channel_spec.realize(rng)
    X = build_slot(None, pattern, rng)
    Y = apply_channel(X, realization.H, snr_db if noise else np.inf, rng)
    feature = input_from_ls(ls_estimate(*extract_pilot_ls_input(Y, pattern)))
    label = channel_to_output(realization.H, kind, pattern.frame)
    return feature, label, snr_db, realization.f_d


def generate_offline_dataset(channel_spec, count=DESK_SAMPLES, kind=OFFLINE,
                             snr_range=SNR_RANGE_DB, seed=0, noise=True, workers=1,
                             pattern=None):
    """
    Simulate count slots with uniformly drawn SNR and maximum Doppler

    Labels are the noise-free channel: the full slot for OFFLINE, the pilot
    symbols for ONLINE.

    :param channel_spec: profile and Doppler range
    :type channel_spec: ofdm_fading.fading.ChannelSpec
    :param noise: False keeps the receiver noise off (validation)
    :param workers: threads simulating samples, each sample seeded on its own
    :rtype: Dataset
    """
    if count < 1:
        raise ValueError("A dataset needs at least one sample, got {}".format(count))
    if kind not in KINDS:
        raise ValueError("Unknown dataset kind '{}'".format(kind))
    pattern = pattern or PilotPattern()
    loginfo("Generating {} {} samples on {}".format(count, kind, channel_spec))

    seeds = np.array([derive_seed(seed, 'sample', i) for i in range(count)], dtype=np.uint64)

    def simulate(sample_seed):
        return _simulate_sample(channel_spec, pattern, kind, snr_range, int(sample_seed), noise)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        samples = list(executor.map(simulate, seeds))
    features, labels, snr_db, f_d = (np.array(column) for column in zip(*samples))
    return Dataset(kind, features, labels, snr_db, f_d, seeds,
                   [channel_spec.pdp.name] * count)


def write_dataset(path, dataset):
    """
    :type dataset: Dataset
    """
    with open(path, "wb") as handle:
        write_header(handle, MAGIC, VERSION)
        write_struct(handle, "<BQII", KINDS.index(dataset.kind), len(dataset),
                     dataset.features.shape[1], dataset.labels.shape[1])
        for i in range(len(dataset)):
            write_struct(handle, "<ddQ", dataset.snr_db[i], dataset.f_d[i], dataset.seeds[i])
            write_string(handle, dataset.profiles[i])
            write_array(handle, dataset.features[i], "<f8")
            write_array(handle, dataset.labels[i], "<f8")


def read_dataset(path):
    """
    :rtype: Dataset
    :raises FormatError: bad magic, version mismatch or truncation
    """
    with open(path, "rb") as handle:
        read_header(handle, MAGIC, VERSION, WHAT)
        kind, count, feature_rows, label_rows = read_struct(handle, "<BQII", WHAT)
        if kind >= len(KINDS):
            raise FormatError("Unknown dataset kind {}".format(kind))
        features = np.zeros((count, feature_rows, 2))
        labels = np.zeros((count, label_rows, 2))
        snr_db, f_d = np.zeros(count), np.zeros(count)
        seeds = np.zeros(count, dtype=np.uint64)
        profiles = []
        for i in range(count):
            snr_db[i], f_d[i], seeds[i] = read_struct(handle, "<ddQ", WHAT)
            profiles.append(read_string(handle, WHAT))
            features[i] = read_array(handle, "<f8", (feature_rows, 2), WHAT)
            labels[i] = read_array(handle, "<f8", (label_rows, 2), WHAT)
        expect_eof(handle, WHAT)
    return Dataset(KINDS[kind], features, labels, snr_db, f_d, seeds, profiles)
