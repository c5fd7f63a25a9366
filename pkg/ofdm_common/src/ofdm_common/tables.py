#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
CSV result tables with a provenance block
"""

import pandas as pd

from ofdm_common.core import get_version
from ofdm_common.exceptions import FormatError

SCHEMA = "ofdm-result/1"


def provenance(config_hash_value, seed):
    """
    Ordered provenance entries written ahead of every table
    """
    return [('schema', SCHEMA), ('config_hash', config_hash_value), ('seed', seed),
            ('version', get_version())]


def write_table(path, rows, columns, provenance_entries=()):
    """
    Write rows as UTF-8 CSV, '#'-prefixed provenance lines first

    :param rows: sequence of tuples or dicts
    :param columns: fixed header
    :return: the written frame
    :rtype: pandas.DataFrame
    """
    frame = pd.DataFrame(list(rows), columns=list(columns))
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for key, value in provenance_entries:
            handle.write("# {}={}\n".format(key, value))
        frame.to_csv(handle, index=False)
    return frame


def read_table(path, columns=None):
    """
    Read a table written by write_table

    :return: the frame and the provenance mapping
    """
    entries = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition("=")
            entries[key] = value
    frame = pd.read_csv(path, comment="#")
    if columns is not None and list(frame.columns) != list(columns):
        raise FormatError("{} has columns {}, expected {}".format(
            path, list(frame.columns), list(columns)))
    return frame, entries
