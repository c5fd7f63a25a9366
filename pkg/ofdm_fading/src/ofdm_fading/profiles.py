#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Power delay profiles of tapped-delay-line channels
"""

import os
import sys
from collections import OrderedDict

import numpy as np

from ofdm_common.config import load_settings
from ofdm_common.exceptions import ConfigurationError, UnknownNameError
from ofdm_fading.constants import CP_SAMPLES, SAMPLE_RATE_HZ


class PowerDelayProfile(object):

    """
    Named set of path delays (ns) and average path gains (dB)

    :raises ValueError: for empty, unsorted, negative or too long delays
    """

    def __init__(self, name, delays_ns, gains_db):
        self.name = str(name)
        self.delays_ns = np.array(delays_ns, dtype=np.float64)
        self.gains_db = np.array(gains_db, dtype=np.float64)
        if self.delays_ns.ndim != 1 or self.delays_ns.size == 0:
            raise ValueError("Profile {} needs at least one path".format(self.name))
        if self.delays_ns.shape != self.gains_db.shape:
            raise ValueError("Profile {} has {} delays but {} gains".format(
                self.name, self.delays_ns.size, self.gains_db.size))
        if self.delays_ns[0] < 0 or np.any(np.diff(self.delays_ns) <= 0):
            raise ValueError("Profile {} delays must be non-negative and strictly increasing: {}"
                             .format(self.name, self.delays_ns.tolist()))
        if self.max_delay_samples() >= CP_SAMPLES:
            raise ValueError("Profile {} max delay {} ns exceeds the {}-sample cyclic prefix"
                             .format(self.name, self.delays_ns[-1], CP_SAMPLES))

    def __repr__(self):
        return "PowerDelayProfile({}, {} paths, max {} ns)".format(
            self.name, self.num_paths, self.delays_ns[-1])

    @property
    def num_paths(self):
        return self.delays_ns.size

    def delays_samples(self, sample_rate=SAMPLE_RATE_HZ):
        return self.delays_ns * 1e-9 * sample_rate

    def max_delay_samples(self, sample_rate=SAMPLE_RATE_HZ):
        return float(self.delays_samples(sample_rate)[-1])

    def linear_gains(self):
        """
        Path powers on a linear scale, normalized to sum to one
        """
        linear = 10.0 ** (self.gains_db / 10.0)
        return linear / linear.sum()

    def to_dict(self):
        return OrderedDict([('name', self.name),
                            ('delays_ns', self.delays_ns.tolist()),
                            ('gains_db', self.gains_db.tolist())])


# 3GPP TS 36.101 extended pedestrian/vehicular/typical urban models plus the varied channel
STANDARD_PROFILES = OrderedDict([
    ('EPA', PowerDelayProfile('EPA',
                              [0, 30, 70, 90, 110, 190, 410],
                              [0.0, -1.0, -2.0, -3.0, -8.0, -17.2, -20.8])),
    ('EVA', PowerDelayProfile('EVA',
                              [0, 30, 150, 310, 370, 710, 1090, 1730, 2510],
                              [0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9])),
    ('ETU', PowerDelayProfile('ETU',
                              [0, 50, 120, 200, 230, 500, 1600, 2300, 5000],
                              [-1.0, -1.0, -1.0, 0.0, 0.0, 0.0, -3.0, -5.0, -7.0])),
    ('CUSTOM', PowerDelayProfile('CUSTOM',
                                 [0, 30, 200, 300, 500, 1500, 2500, 5000, 7000, 9000],
                                 [-1.0, 0.0, 0.0, -1.0, -2.0, -1.0, -1.0, -1.5, -3.0, -5.0])),
])


def standard_pdp(name):
    """
    One of the built-in profiles EPA, EVA, ETU, CUSTOM

    :raises UnknownNameError: for any other name
    """
    try:
        return STANDARD_PROFILES[name]
    except KeyError:
        raise UnknownNameError("Unknown profile '{}', known: {}".format(
            name, ", ".join(STANDARD_PROFILES)))


def load_profiles(path):
    """
    Read profiles from a YAML file with a top-level 'profiles' list

    :return: name -> PowerDelayProfile in file order
    :rtype: OrderedDict
    """
    settings = load_settings(path)
    entries = settings.get('profiles')
    if not isinstance(entries, list):
        raise ConfigurationError("{} has no 'profiles' list".format(path))
    profiles = OrderedDict()
    for entry in entries:
        try:
            profile = PowerDelayProfile(entry['name'], entry['delays_ns'], entry['gains_db'])
        except (KeyError, TypeError) as e:
            raise ConfigurationError("Invalid profile entry {} in {}: missing {}".format(
                entry, path, e))
        except ValueError as e:
            raise ConfigurationError("Invalid profile in {}: {}".format(path, e))
        profiles[profile.name] = profile
    return profiles


def bundled_profile_file():
    """
    Location of config/profiles.yaml in a source checkout or an installed share dir
    """
    candidates = [
        os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', '..', 'config',
                     'profiles.yaml'),
        os.path.join(sys.prefix, 'share', 'ofdm_fading', 'config', 'profiles.yaml'),
    ]
    for candidate in candidates:
        if os.path.exists(candidate):
            return os.path.normpath(candidate)
    return None


def available_profiles(profile_file=None, include_bundled=True):
    """
    Built-in profiles, followed by bundled and user supplied ones

    :param profile_file: optional YAML file with more profiles
    :rtype: OrderedDict
    """
    profiles = OrderedDict(STANDARD_PROFILES)
    bundled = bundled_profile_file() if include_bundled else None
    for path in (bundled, profile_file):
        if path:
            profiles.update(load_profiles(path))
    return profiles


def resolve_profile(name, profile_file=None):
    if isinstance(name, PowerDelayProfile):
        return name
    if name in STANDARD_PROFILES:
        return STANDARD_PROFILES[name]
    profiles = available_profiles(profile_file)
    if name not in profiles:
        raise UnknownNameError("Unknown profile '{}', known: {}".format(
            name, ", ".join(profiles)))
    return profiles[name]
