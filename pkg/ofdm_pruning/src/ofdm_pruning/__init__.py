#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Weight-level pruning of the encoder and decoder with masked fine-tuning
"""

from ofdm_pruning.pruning import (  # noqa: F401
    REGIONS, PruneReport, prune_by_magnitude, prune_without_finetune, reactivation_check)
from ofdm_pruning.finetune import FineTuner, FineTuneResult, fine_tune  # noqa: F401
