#!/usr/bin/env python
#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Marshalling, weight files and the attention probe
"""
import os
import shutil
import tempfile
import unittest

import numpy as np

from ofdm_common.exceptions import FormatError, ShapeError
from ofdm_estimators.ls import PilotEstimate
from ofdm_channelformer.config import ModelConfig, OFFLINE, ONLINE
from ofdm_channelformer.marshalling import (channel_to_output, input_from_ls, ls_from_input,
                                            output_to_channel)
from ofdm_channelformer.model import build, predict
from ofdm_channelformer.probe import attention_probe_run
from ofdm_channelformer.weights_io import MAGIC, load_weights, save_weights


def random_complex(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


class TestMarshalling(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(4)

    def test_layout(self):
        """
        Element (k, second pilot symbol) lands at row 36 + k, real in channel 0
        """
        values = random_complex(self.rng, 36, 2)
        x = input_from_ls(PilotEstimate(values))
        self.assertEqual(x.shape, (72, 2))
        for k in (0, 17, 35):
            self.assertEqual(x[36 + k, 0], values[k, 1].real)
            self.assertEqual(x[36 + k, 1], values[k, 1].imag)
            self.assertEqual(x[k, 0], values[k, 0].real)

    def test_real_input(self):
        """
        A purely real estimate has an all-zero imaginary channel
        """
        x = input_from_ls(PilotEstimate(self.rng.normal(size=(36, 2))))
        np.testing.assert_array_equal(x[:, 1], 0.0)

    def test_input_round_trip(self):
        """
        Unmarshalling recovers the pilot estimate, also batched
        """
        values = random_complex(self.rng, 5, 36, 2)
        np.testing.assert_array_equal(ls_from_input(input_from_ls(values)).values, values)

    def test_offline_output(self):
        """
        Offline row l * 72 + k is subcarrier k of symbol l
        """
        H = random_complex(self.rng, 72, 14)
        y = channel_to_output(H, OFFLINE)
        self.assertEqual(y.shape, (1008, 2))
        self.assertEqual(y[5 * 72 + 3, 0], H[3, 5].real)
        np.testing.assert_array_equal(output_to_channel(y, OFFLINE), H)

    def test_online_output(self):
        """
        Online labels keep the pilot symbols only
        """
        H = random_complex(self.rng, 72, 14)
        y = channel_to_output(H, ONLINE)
        self.assertEqual(y.shape, (144, 2))
        np.testing.assert_array_equal(output_to_channel(y, ONLINE), H[:, [0, 12]])

    def test_imaginary_zero(self):
        """
        A zero imaginary channel gives a real channel
        """
        y = np.zeros((144, 2))
        y[:, 0] = self.rng.normal(size=144)
        self.assertTrue(np.all(np.isreal(output_to_channel(y, ONLINE))))

    def test_wrong_rows(self):
        """
        Outputs of the other mode are rejected
        """
        with self.assertRaises(ShapeError):
            output_to_channel(np.zeros((144, 2)), OFFLINE)
        with self.assertRaises(ValueError):
            output_to_channel(np.zeros((144, 2)), 'hybrid')


class TestWeightFiles(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.path = os.path.join(self.directory, 'model.cfw')

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_round_trip(self):
        """
        Saved weights load back bit-exact with the same structure
        """
        for config in (ModelConfig.online(), ModelConfig.offline()):
            weights = build(config, seed=6)
            save_weights(self.path, weights)
            loaded = load_weights(self.path)
            self.assertEqual(loaded.mode, config.mode)
            self.assertEqual(list(loaded.params), list(weights.params))
            for name, tensor in weights.params.items():
                np.testing.assert_array_equal(loaded[name].data, tensor.data)
            self.assertEqual(loaded.config.blocks, config.blocks)
            self.assertEqual(loaded.config.kernel, config.kernel)

    def test_mask_round_trip(self):
        """
        Pruning masks survive a save and load
        """
        weights = build(ModelConfig.online(), seed=6)
        mask = (np.random.default_rng(1).random(weights['dec.fc_up.W'].shape) > 0.7)
        weights.masks['dec.fc_up.W'] = mask.astype(np.float64)
        weights.apply_masks()
        save_weights(self.path, weights)
        loaded = load_weights(self.path)
        self.assertEqual(list(loaded.masks), ['dec.fc_up.W'])
        np.testing.assert_array_equal(loaded.masks['dec.fc_up.W'], mask)
        np.testing.assert_array_equal(predict(np.ones((72, 2)), loaded),
                                      predict(np.ones((72, 2)), weights))

    def test_bad_magic(self):
        """
        Files with foreign magic are rejected
        """
        save_weights(self.path, build(ModelConfig.online()))
        with open(self.path, 'r+b') as handle:
            handle.write(b'XXXXXXXX')
        with self.assertRaises(FormatError):
            load_weights(self.path)

    def test_truncated(self):
        """
        Truncated files are rejected
        """
        save_weights(self.path, build(ModelConfig.online()))
        with open(self.path, 'rb') as handle:
            data = handle.read()
        self.assertTrue(data.startswith(MAGIC))
        with open(self.path, 'wb') as handle:
            handle.write(data[:len(data) // 2])
        with self.assertRaises(FormatError):
            load_weights(self.path)


class TestAttentionProbe(unittest.TestCase):

    def setUp(self):
        self.weights = build(ModelConfig.online(), seed=9)
        self.x = np.random.default_rng(2).normal(size=(72, 2))

    def test_identical_inputs(self):
        """
        Averaging identical inputs equals the single pass
        """
        single = attention_probe_run(self.weights, self.x)
        repeated = attention_probe_run(self.weights, np.stack([self.x] * 4))
        self.assertEqual(repeated.count, 4)
        for head in range(2):
            np.testing.assert_allclose(repeated.magnitudes[head], single.magnitudes[head],
                                       atol=1e-14)

    def test_shapes_and_rows(self):
        """
        Two heads of 36 x 36 probabilities whose rows sum to one
        """
        probe = attention_probe_run(self.weights, self.x)
        self.assertEqual(probe.n_heads, 2)
        for head in range(2):
            self.assertEqual(probe.probabilities[head].shape, (36, 36))
            np.testing.assert_allclose(probe.probabilities[head].sum(axis=-1), 1.0, atol=1e-12)
            self.assertEqual(probe.profile(head, 1).shape, (36,))
        self.assertEqual(len(list(probe.rows())), 2 * 2 * 36)

    def test_empty_batch(self):
        """
        An empty batch is rejected
        """
        with self.assertRaises(ShapeError):
            attention_probe_run(self.weights, np.zeros((0, 72, 2)))


if __name__ == '__main__':
    unittest.main()
