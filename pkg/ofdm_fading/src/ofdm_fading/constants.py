#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Numerology of the simulated slot (six resource blocks at 15 kHz spacing)
"""

SAMPLE_RATE_HZ = 1.08e6
NUM_SUBCARRIERS = 72
NUM_SYMBOLS = 14
CP_SAMPLES = 16
SYMBOL_SAMPLES = 72
SUBCARRIER_SPACING_HZ = 15e3

# one OFDM symbol including its cyclic prefix
SYMBOL_PERIOD_S = (SYMBOL_SAMPLES + CP_SAMPLES) / SAMPLE_RATE_HZ
