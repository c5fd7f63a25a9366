#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#

__all__ = [
    'get_version', 'derive_seed', 'make_rng',
    'load_settings', 'config_hash',
    'logdebug', 'loginfo', 'logwarn', 'logerr', 'logfatal'
]

import ofdm_common.exceptions

from ofdm_common.config import load_settings, config_hash
from ofdm_common.core import get_version, derive_seed, make_rng
from ofdm_common.logging import logdebug, loginfo, logwarn, logerr, logfatal
