#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Result tables of the experiments
"""

from ofdm_common.exceptions import UnknownNameError
from ofdm_common.tables import write_table

SWEEP_COLUMNS = ['axis', 'value', 'estimator', 'mean', 'stderr', 'n']
DYNAMIC_COLUMNS = ['realization', 'segment', 'profile', 'model', 'mse']
PROBE_COLUMNS = ['head', 'channel', 'index', 'mean_abs']


class ExperimentResult(object):

    """
    Rows of one experiment plus the provenance needed to reproduce them

    :param kind: experiment kind
    :param columns: fixed header of the table
    :param rows: tuples in column order
    :param provenance_entries: (key, value) pairs, see ofdm_common.tables.provenance
    """

    def __init__(self, kind, columns, rows, provenance_entries=()):
        self.kind = kind
        self.columns = list(columns)
        self.rows = [tuple(row) for row in rows]
        self.provenance = list(provenance_entries)
        self.summaries = []

    def __repr__(self):
        return "ExperimentResult({}, {} rows)".format(self.kind, len(self.rows))

    def __len__(self):
        return len(self.rows)

    def records(self):
        for row in self.rows:
            yield dict(zip(self.columns, row))

    def estimators(self):
        seen = []
        for record in self.records():
            if record['estimator'] not in seen:
                seen.append(record['estimator'])
        return seen

    def series(self, estimator, field='mean'):
        """
        Values of one estimator in axis order

        :return: list of (axis value, field value)
        """
        points = [(r['value'], r[field]) for r in self.records() if r['estimator'] == estimator]
        if not points:
            raise UnknownNameError("No rows for estimator '{}'".format(estimator))
        return points

    def point(self, estimator, value):
        for record in self.records():
            if record['estimator'] == estimator and record['value'] == value:
                return record
        raise UnknownNameError("No row for estimator '{}' at {}".format(estimator, value))

    def write(self, path):
        """
        Write the table as CSV with its provenance lines

        :return: the written pandas.DataFrame
        """
        return write_table(path, self.rows, self.columns, self.provenance)
