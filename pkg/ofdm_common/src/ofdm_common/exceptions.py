#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#


class OfdmException(Exception):
    pass


class ShapeError(OfdmException, ValueError):
    pass


class ConfigurationError(OfdmException):
    pass


class FormatError(OfdmException):
    pass


class TrainingDivergedError(OfdmException):
    pass


class UnknownNameError(OfdmException, KeyError):

    def __str__(self):
        # KeyError quotes its argument, keep the plain message
        return str(self.args[0]) if self.args else ""
