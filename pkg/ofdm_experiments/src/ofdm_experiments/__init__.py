#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Metrics, sweeps and the online adaptation harness
"""

from ofdm_experiments.metrics import Accumulator, metric_dg, metric_mse  # noqa: F401
from ofdm_experiments.results import ExperimentResult  # noqa: F401
from ofdm_experiments.estimators import EstimatorSet, SlotBatch  # noqa: F401
from ofdm_experiments.sweeps import SweepSpec, SweepRunner, run_sweep  # noqa: F401
from ofdm_experiments.dynamic import DynamicAdaptation, run_dynamic_adaptation  # noqa: F401
