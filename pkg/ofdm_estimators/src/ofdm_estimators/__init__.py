#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Classical channel estimators: LS, DD-CE, 1D and 2D FD-MMSE
"""

from ofdm_estimators.ls import PilotEstimate, ls_estimate  # noqa: F401
from ofdm_estimators.interpolation import (  # noqa: F401
    bilinear_to_frame, linear_time_to_frame, frequency_to_band)
from ofdm_estimators.mmse import (  # noqa: F401
    mmse_matrix, wiener_filter, fd_mmse_1d, fd_mmse_1d_frame, fd_mmse_2d)
from ofdm_estimators.genie import GenieCorrelations, genie_correlations  # noqa: F401
from ofdm_estimators.ddce import dd_ce  # noqa: F401
