#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#

from ofdm_common.logging import get_logger


class ConfigurableNode(object):

    """
    Base class of the long-running simulation objects (trainers, runners)

    Provides parameter lookup into a settings mapping and logging under the node name.
    """

    def __init__(self, name, params=None):
        self.name = name
        self.params = dict(params or {})
        self._logger = get_logger(name)

    def get_param(self, name, alternative_value=None):
        """
        Look up a parameter, nested keys separated by '.'

        :param name: parameter name, e.g. "online.batch_size"
        :type name: str
        :param alternative_value: value returned when the parameter is not set
        """
        if name.startswith('/'):
            raise RuntimeError("Only relative parameter names are supported.")
        value = self.params
        for key in name.split('.'):
            if not isinstance(value, dict) or key not in value:
                return alternative_value
            value = value[key]
        return value

    def logdebug(self, msg):
        self._logger.debug(msg)

    def loginfo(self, msg):
        self._logger.info(msg)

    def logwarn(self, msg):
        self._logger.warning(msg)

    def logerr(self, msg):
        self._logger.error(msg)

    def logfatal(self, msg):
        self._logger.critical(msg)
