#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
QPSK/OFDM link with single and double symbol reference signals
"""

from ofdm_link.frame import (  # noqa: F401
    FrameConfig, PilotPattern, Slot, DEFAULT_FRAME, SINGLE_DMRS, DOUBLE_DMRS)
from ofdm_link.modulation import qpsk_modulate, qpsk_demodulate  # noqa: F401
from ofdm_link.link import (  # noqa: F401
    SnrSpec, build_slot, apply_channel, extract_pilot_ls_input, equalize_and_count_errors)
from ofdm_link.ofdm import ofdm_time_domain_roundtrip, time_domain_channel  # noqa: F401
