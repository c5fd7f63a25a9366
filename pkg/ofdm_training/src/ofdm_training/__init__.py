#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Dataset generation, offline training and online training
"""

from ofdm_training.hyperparams import Hyperparams  # noqa: F401
from ofdm_training.dataset import (  # noqa: F401
    Dataset, generate_offline_dataset, read_dataset, write_dataset)
from ofdm_training.trainer import Trainer, TrainingResult, evaluate, train_offline  # noqa: F401
from ofdm_training.labels import (  # noqa: F401
    OnlineSample, MmseLabelFilter, make_online_label_power_boost, make_online_label_mmse,
    make_online_sample)
from ofdm_training.online import OnlineTrainer, online_step  # noqa: F401
