#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Least-squares estimates at the pilot resource elements
"""

import numpy as np

from ofdm_common.exceptions import ShapeError

LS = 'LS'
MMSE = 'MMSE'
NETWORK = 'network'


class PilotEstimate(object):

    """
    Channel estimate at the pilot resource elements, [..., 36, 2]

    :param values: complex estimates, rows by subcarrier, columns by pilot symbol
    :param source: LS, MMSE or network
    """

    def __init__(self, values, source=LS):
        values = np.asarray(values, dtype=np.complex128)
        if values.ndim < 2:
            raise ShapeError("Pilot estimate needs [..., pilots, symbols], got {}".format(
                values.shape))
        self.values = values
        self.source = source

    def __repr__(self):
        return "PilotEstimate(source={}, shape={})".format(self.source, self.values.shape)


def ls_estimate(Y_pilot, X_pilot):
    """
    Element-wise H_LS = Y_p / X_p

    :rtype: PilotEstimate
    """
    Y_pilot, X_pilot = np.asarray(Y_pilot), np.asarray(X_pilot)
    if Y_pilot.shape[-2:] != X_pilot.shape[-2:]:
        raise ShapeError("Received pilots {} and pilot values {} differ".format(
            Y_pilot.shape, X_pilot.shape))
    return PilotEstimate(Y_pilot / X_pilot, LS)
