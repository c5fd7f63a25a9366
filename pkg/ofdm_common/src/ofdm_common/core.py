#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#

import zlib

import numpy as np

VERSION = "0.1.0"


def get_version():
    """
    Version string embedded in every result file
    """
    return "ofdm-chest {}".format(VERSION)


def _key_to_int(key):
    if isinstance(key, (int, np.integer)):
        if key < 0:
            raise ValueError("Seed keys must be non-negative, got {}".format(key))
        return int(key)
    return zlib.crc32(str(key).encode("utf-8"))


def derive_seed(master, *keys):
    """
    Derive an independent child seed from a master seed and a key path

    The same (master, keys) pair always yields the same seed, independent of the
    order in which other seeds were derived.

    :param master: master seed
    :type master: int
    :param keys: ints or strings identifying the consumer (point, realization, ...)
    :return: 63-bit seed
    :rtype: int
    """
    entropy = [_key_to_int(master)] + [_key_to_int(k) for k in keys]
    state = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 31) ^ int(state[1])


def make_rng(seed, *keys):
    """
    numpy Generator for derive_seed(seed, *keys)

    A Generator passed as seed is returned as is and takes no keys.
    """
    if isinstance(seed, np.random.Generator):
        if keys:
            raise ValueError("Keys {} cannot be applied to an existing Generator".format(keys))
        return seed
    return np.random.default_rng(derive_seed(seed, *keys))
