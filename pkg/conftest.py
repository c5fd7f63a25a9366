#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Puts every package source directory on the import path of the test run
"""

import glob
import os
import sys

ROOT = os.path.dirname(os.path.abspath(__file__))

for source in sorted(glob.glob(os.path.join(ROOT, 'ofdm_*', 'src'))):
    if source not in sys.path:
        sys.path.insert(0, source)
