#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
YAML settings files
"""

import hashlib
import json
import os

import yaml

from ofdm_common.exceptions import ConfigurationError


def load_settings(path):
    """
    Read a settings file

    :param path: path of a YAML key-value file
    :type path: str
    :return: the settings
    :rtype: dict
    """
    if not path or not os.path.exists(path):
        raise ConfigurationError("Could not read settings from {}".format(path))
    with open(path) as handle:
        try:
            settings = yaml.safe_load(handle)
        except yaml.YAMLError as e:
            raise ConfigurationError("Malformed settings file {}: {}".format(
                path, str(e).replace("\n", " ")))
    if settings is None:
        settings = {}
    if not isinstance(settings, dict):
        raise ConfigurationError(
            "Settings file {} must contain a mapping at top level".format(path))
    return settings


def config_hash(settings):
    """
    SHA-256 of the canonical JSON dump of the settings
    """
    canonical = json.dumps(settings, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def merge_settings(base, override):
    """
    Recursive dict merge, values of override win
    """
    merged = dict(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_settings(merged[key], value)
        else:
            merged[key] = value
    return merged
