#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Slot layout: frame numerology, pilot patterns and resource grids

Symbol and subcarrier indices are 0-based in code. The two feature pilot symbols
are the first and the thirteenth OFDM symbol of the slot (indices 0 and 12).
"""

import numpy as np

from ofdm_common.exceptions import ShapeError
from ofdm_fading import constants
from ofdm_link.modulation import random_qpsk

SINGLE_DMRS = 'single_dmrs'
DOUBLE_DMRS = 'double_dmrs'
PILOT_SEED = 2024


class FrameConfig(object):

    """
    Slot numerology
    """

    def __init__(self, num_subcarriers=constants.NUM_SUBCARRIERS,
                 num_symbols=constants.NUM_SYMBOLS, pilot_symbols=(0, 12), comb_spacing=2,
                 cp_samples=constants.CP_SAMPLES, symbol_samples=constants.SYMBOL_SAMPLES,
                 sample_rate=constants.SAMPLE_RATE_HZ):
        if num_subcarriers % comb_spacing:
            raise ValueError("{} subcarriers are not divisible by the comb spacing {}".format(
                num_subcarriers, comb_spacing))
        if any(not 0 <= s < num_symbols for s in pilot_symbols):
            raise ValueError("Pilot symbols {} outside the slot of {} symbols".format(
                pilot_symbols, num_symbols))
        self.num_subcarriers = num_subcarriers
        self.num_symbols = num_symbols
        self.pilot_symbols = tuple(pilot_symbols)
        self.comb_spacing = comb_spacing
        self.cp_samples = cp_samples
        self.symbol_samples = symbol_samples
        self.sample_rate = sample_rate

    @property
    def num_pilot_symbols(self):
        return len(self.pilot_symbols)

    @property
    def pilots_per_symbol(self):
        return self.num_subcarriers // self.comb_spacing

    @property
    def grid_shape(self):
        return (self.num_subcarriers, self.num_symbols)


DEFAULT_FRAME = FrameConfig()


class Slot(object):

    """
    Complex resource grid [N_f x N_s] tagged with what it holds
    """

    TRANSMITTED = 'X'
    RECEIVED = 'Y'
    CHANNEL = 'H'
    ESTIMATE = 'H_hat'

    def __init__(self, grid, role, frame=DEFAULT_FRAME):
        grid = np.asarray(grid, dtype=np.complex128)
        if grid.shape[-2:] != frame.grid_shape:
            raise ShapeError("Slot grid must be {}, got {}".format(frame.grid_shape, grid.shape))
        self.grid = grid
        self.role = role
        self.frame = frame

    def __repr__(self):
        return "Slot(role={}, shape={})".format(self.role, self.grid.shape)


def as_grid(value):
    return value.grid if isinstance(value, Slot) else np.asarray(value)


class PilotPattern(object):

    """
    Reference signal layout of a slot

    single_dmrs: comb pilots on the two pilot symbols, even subcarriers on the
    first and odd subcarriers on the second, the rest of those symbols zero.
    double_dmrs: additionally a full-band label symbol label_offset symbols after
    each pilot symbol, boosted by boost_db.

    :param kind: SINGLE_DMRS or DOUBLE_DMRS
    :param boost_db: label symbol power boost
    :param seed: seed of the pilot QPSK sequence, shared by all slots
    """

    def __init__(self, kind=SINGLE_DMRS, frame=DEFAULT_FRAME, boost_db=5.0, seed=PILOT_SEED,
                 label_offset=1):
        if kind not in (SINGLE_DMRS, DOUBLE_DMRS):
            raise ValueError("Unknown pilot pattern '{}'".format(kind))
        self.kind = kind
        self.frame = frame
        self.boost_db = float(boost_db)
        self.label_offset = int(label_offset)
        rng = np.random.default_rng(seed)
        self.pilot_subcarriers = {}
        self.pilot_values = {}
        for i, symbol in enumerate(frame.pilot_symbols):
            self.pilot_subcarriers[symbol] = np.arange(i % frame.comb_spacing,
                                                       frame.num_subcarriers, frame.comb_spacing)
            self.pilot_values[symbol] = random_qpsk(rng, frame.pilots_per_symbol)
        self.label_symbols = ()
        self.label_values = {}
        if kind == DOUBLE_DMRS:
            self.label_symbols = tuple(s + self.label_offset for s in frame.pilot_symbols)
            taken = set(frame.pilot_symbols)
            for symbol in self.label_symbols:
                if not 0 <= symbol < frame.num_symbols or symbol in taken:
                    raise ValueError("Label offset {} puts a label symbol at {}".format(
                        self.label_offset, symbol))
                taken.add(symbol)
            for symbol in self.label_symbols:
                self.label_values[symbol] = random_qpsk(rng, frame.num_subcarriers)
        reserved = set(frame.pilot_symbols) | set(self.label_symbols)
        self.data_symbols = tuple(s for s in range(frame.num_symbols) if s not in reserved)

    @property
    def label_amplitude(self):
        return 10.0 ** (self.boost_db / 20.0)

    @property
    def num_data_res(self):
        return len(self.data_symbols) * self.frame.num_subcarriers

    @property
    def num_data_bits(self):
        return 2 * self.num_data_res

    def pilot_grid(self):
        """
        Grid holding the pilot and boosted label values, zero elsewhere
        """
        grid = np.zeros(self.frame.grid_shape, dtype=np.complex128)
        for symbol in self.frame.pilot_symbols:
            grid[self.pilot_subcarriers[symbol], symbol] = self.pilot_values[symbol]
        for symbol in self.label_symbols:
            grid[:, symbol] = self.label_amplitude * self.label_values[symbol]
        return grid

    def known_mask(self):
        """
        True on resource elements whose transmitted value is known to the receiver
        """
        mask = np.zeros(self.frame.grid_shape, dtype=bool)
        for symbol in self.frame.pilot_symbols:
            mask[self.pilot_subcarriers[symbol], symbol] = True
        for symbol in self.label_symbols:
            mask[:, symbol] = True
        return mask

    def data_mask(self):
        mask = np.zeros(self.frame.grid_shape, dtype=bool)
        mask[:, list(self.data_symbols)] = True
        return mask

    def pilot_matrix(self):
        """
        Transmitted pilot values [pilots_per_symbol x N_pilot]
        """
        return np.stack([self.pilot_values[s] for s in self.frame.pilot_symbols], axis=1)

    def average_power_delta_db(self):
        """
        Average slot power of this pattern relative to the single-symbol pattern
        """
        reference = PilotPattern(SINGLE_DMRS, self.frame)
        return 10.0 * np.log10(self._average_power() / reference._average_power())

    def _average_power(self):
        total = np.sum(np.abs(self.pilot_grid()) ** 2) + self.num_data_res
        return total / float(np.prod(self.frame.grid_shape))
