# Copyright The thermodmn Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License"). You
# may not use this file except in compliance with the License. A copy of
# the License is located at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
# ANY KIND, either express or implied. See the License for the specific
# language governing permissions and limitations under the License.
import unittest

import numpy as np

from thermodmn_cli.config import SamplingConfig
from thermodmn_cli.service.sample_dataset import SampleDataset


class TestSampleDataset(unittest.TestCase):
    def setUp(self):
        self.sample_dataset = SampleDataset()

    def test_sample_dataset(self):
        config = SamplingConfig(samples=20, seed=3, histogram_bins=5)
        samples, edges, counts = self.sample_dataset.sample_dataset(config)

        self.assertEqual(len(samples), 20)
        self.assertTrue(all(sample.effective is None for sample in samples))
        self.assertEqual(edges.shape, (6,))
        self.assertEqual(counts.shape, (5,))
        self.assertEqual(int(np.sum(counts)), 20)
        contrasts = [sample.contrast for sample in samples]
        self.assertAlmostEqual(edges[0], min(contrasts))
        self.assertAlmostEqual(edges[-1], max(contrasts))

    def test_sample_dataset_is_reproducible(self):
        config = SamplingConfig(samples=4, seed=11)
        first, _, _ = self.sample_dataset.sample_dataset(config)
        second, _, _ = self.sample_dataset.sample_dataset(config)
        for a, b in zip(first, second):
            np.testing.assert_array_equal(a.stiffness_1, b.stiffness_1)
            np.testing.assert_array_equal(a.stiffness_2, b.stiffness_2)
