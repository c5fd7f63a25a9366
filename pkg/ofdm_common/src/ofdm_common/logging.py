#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#

import json
import logging
import sys

LOGGER_NAME = "ofdm"

_handler = None


class JsonLineFormatter(logging.Formatter):

    """
    One JSON object per record, without timestamps to keep logs reproducible
    """

    def format(self, record):
        return json.dumps({
            "level": record.levelname,
            "name": record.name,
            "message": record.getMessage()
        }, sort_keys=True)


def get_logger(name=None):
    if name:
        return logging.getLogger("{}.{}".format(LOGGER_NAME, name))
    return logging.getLogger(LOGGER_NAME)


def configure(quiet=False, json_log=False, level=logging.INFO, stream=None):
    """
    Install the single stderr handler of the ofdm logger

    :param quiet: only warnings and errors
    :type quiet: bool
    :param json_log: emit JSON lines instead of plain text
    :type json_log: bool
    """
    global _handler
    logger = get_logger()
    if _handler is not None:
        logger.removeHandler(_handler)
    _handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    if json_log:
        _handler.setFormatter(JsonLineFormatter())
    else:
        _handler.setFormatter(logging.Formatter("[%(levelname)s] [%(name)s]: %(message)s"))
    logger.addHandler(_handler)
    logger.setLevel(logging.WARNING if quiet else level)
    logger.propagate = False
    return logger


def logdebug(msg):
    get_logger().debug(msg)


def loginfo(msg):
    get_logger().info(msg)


def logwarn(msg):
    get_logger().warning(msg)


def logerr(msg):
    get_logger().error(msg)


def logfatal(msg):
    get_logger().critical(msg)
