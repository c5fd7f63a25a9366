#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Network configurations
"""

from ofdm_common.exceptions import UnknownNameError
from ofdm_link.frame import DEFAULT_FRAME

OFFLINE = 'offline'
ONLINE = 'online'


class ModelConfig(object):

    """
    Hyper-structure of one network

    :param mode: OFFLINE predicts the whole slot, ONLINE the two pilot symbols
    :param blocks: residual blocks K of the decoder
    :param encoder_filters: filters of the encoder pre-network
    :param decoder_filters: filters of the decoder convolutions
    :param kernel: square kernel extent of the decoder convolutions
    """

    def __init__(self, mode, blocks, encoder_filters, decoder_filters, kernel, n_heads=2,
                 encoder_kernel=2, frame=DEFAULT_FRAME):
        if mode not in (OFFLINE, ONLINE):
            raise UnknownNameError("Unknown model mode '{}'".format(mode))
        for name, value in (('blocks', blocks), ('encoder_filters', encoder_filters),
                            ('decoder_filters', decoder_filters), ('kernel', kernel),
                            ('n_heads', n_heads), ('encoder_kernel', encoder_kernel)):
            if value < 1:
                raise ValueError("{} must be >= 1, got {}".format(name, value))
        self.mode = mode
        self.blocks = blocks
        self.encoder_filters = encoder_filters
        self.decoder_filters = decoder_filters
        self.kernel = kernel
        self.n_heads = n_heads
        self.encoder_kernel = encoder_kernel
        self.frame = frame

    def __repr__(self):
        return ("ModelConfig(mode={}, K={}, N_enc={}, N_dec={}, kernel={})"
                .format(self.mode, self.blocks, self.encoder_filters, self.decoder_filters,
                        self.kernel))

    @classmethod
    def offline(cls):
        return cls(OFFLINE, blocks=3, encoder_filters=5, decoder_filters=12, kernel=5)

    @classmethod
    def online(cls):
        return cls(ONLINE, blocks=1, encoder_filters=5, decoder_filters=2, kernel=2)

    @classmethod
    def for_mode(cls, mode):
        if mode == OFFLINE:
            return cls.offline()
        if mode == ONLINE:
            return cls.online()
        raise UnknownNameError("Unknown model mode '{}'".format(mode))

    @property
    def input_rows(self):
        """
        Pilots of all pilot symbols stacked: N_pilot * N_f / L_s
        """
        return self.frame.num_pilot_symbols * self.frame.pilots_per_symbol

    @property
    def output_rows(self):
        if self.mode == OFFLINE:
            return self.frame.num_subcarriers * self.frame.num_symbols
        return self.frame.num_subcarriers * self.frame.num_pilot_symbols
