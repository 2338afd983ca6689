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
from thermodmn_cli.tensor.mandel import eig_sym, isotropic_stiffness, trace
from thermodmn_cli.training.sampling import (
    StiffnessSample,
    contrast_histogram,
    material_contrast,
    perturbed_stiffness,
    random_deviatoric_direction,
    sample_dataset,
    sample_pair,
    stack_samples,
)


class TestSampling(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(61)

    def test_deviatoric_direction(self):
        for _ in range(20):
            direction = random_deviatoric_direction(self.rng)
            self.assertAlmostEqual(float(trace(direction)), 0.0, places=12)
            self.assertAlmostEqual(float(np.linalg.norm(direction)), 1.0, places=12)

    def test_perturbation_softens_one_direction(self):
        direction = random_deviatoric_direction(self.rng)
        stiffness = perturbed_stiffness(2.0, 1.0, 0.75, direction)
        self.assertAlmostEqual(float(direction @ stiffness @ direction), 0.5, places=12)
        self.assertAlmostEqual(eig_sym(stiffness)[0], 0.5, places=12)
        with self.assertRaises(ValueError):
            perturbed_stiffness(2.0, 1.0, 1.0, direction)

    def test_pairs_are_positive_definite(self):
        config = SamplingConfig(modulus_range_GPa=[0.1, 100.0])
        for _ in range(50):
            stiffness_1, stiffness_2 = sample_pair(self.rng, config)
            for stiffness in (stiffness_1, stiffness_2):
                np.testing.assert_allclose(stiffness, stiffness.T, atol=1e-12)
                self.assertGreater(eig_sym(stiffness)[0], 0.0)
                self.assertLessEqual(eig_sym(stiffness)[-1], 3.0 * 100.0 + 1e-9)

    def test_material_contrast(self):
        soft = isotropic_stiffness(1.0, 1.0)
        stiff = isotropic_stiffness(10.0, 10.0)
        self.assertAlmostEqual(material_contrast(soft, stiff), 15.0)
        self.assertAlmostEqual(material_contrast(stiff, soft), 15.0)
        self.assertAlmostEqual(material_contrast(soft, soft), 1.5)
        with self.assertRaises(ValueError):
            material_contrast(-soft, stiff)

    def test_dataset_is_reproducible(self):
        config = SamplingConfig(samples=8, seed=7)
        first, second = sample_dataset(config), sample_dataset(config)
        self.assertEqual(len(first), 8)
        for a, b in zip(first, second):
            np.testing.assert_array_equal(a.stiffness_2, b.stiffness_2)
            self.assertEqual(a.contrast, b.contrast)
            self.assertGreaterEqual(a.contrast, 1.0)

    def test_histogram(self):
        edges, counts = contrast_histogram([1.0, 10.0, 100.0, 1000.0], bins=3)
        np.testing.assert_allclose(edges, [1.0, 10.0, 100.0, 1000.0])
        self.assertEqual(int(np.sum(counts)), 4)
        edges, counts = contrast_histogram([5.0, 5.0], bins=4)
        self.assertEqual(edges.size, 5)
        self.assertEqual(int(np.sum(counts)), 2)
        with self.assertRaises(ValueError):
            contrast_histogram([])

    def test_stack_requires_effective_stiffness(self):
        stiffness = isotropic_stiffness(1.0, 1.0)
        with self.assertRaises(ValueError):
            stack_samples([StiffnessSample(stiffness, stiffness)])
        stiffness_1, stiffness_2, effective = stack_samples([StiffnessSample(stiffness, stiffness, stiffness)] * 3)
        self.assertEqual(effective.shape, (3, 6, 6))


if __name__ == "__main__":
    unittest.main()
