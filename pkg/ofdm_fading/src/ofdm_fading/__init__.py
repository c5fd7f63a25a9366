#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Time-varying Rayleigh multipath channels
"""

from ofdm_fading.profiles import (  # noqa: F401
    PowerDelayProfile, standard_pdp, load_profiles, available_profiles, resolve_profile)
from ofdm_fading.fading import (  # noqa: F401
    DopplerSpec, ChannelRealization, ChannelSpec, realize_channel)
from ofdm_fading.correlation import time_correlation, uniform_delay_correlation  # noqa: F401
