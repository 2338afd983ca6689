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

from thermodmn_cli.templates.load_programs import (
    biaxial_program,
    build_preset,
    cyclic_program,
    hysteresis_program,
    mandel_component,
    monotonic_program,
    parse_direction,
    preset_strain_rates,
)


class TestDirections(unittest.TestCase):
    def test_mandel_component(self):
        self.assertEqual(mandel_component((1, 1)), 0)
        self.assertEqual(mandel_component((2, 2)), 1)
        self.assertEqual(mandel_component((2, 1)), 3)
        self.assertEqual(mandel_component((2, 3)), 5)
        with self.assertRaises(ValueError):
            mandel_component((4, 4))

    def test_parse_direction(self):
        self.assertEqual(parse_direction("22"), (2, 2))
        self.assertEqual(parse_direction("1,2"), (1, 2))
        with self.assertRaises(ValueError):
            parse_direction("2")


class TestPresets(unittest.TestCase):
    def test_strain_rates(self):
        np.testing.assert_allclose(preset_strain_rates(), [5e-4, 5e-3, 5e-2, 5e-1])

    def test_monotonic(self):
        program = monotonic_program((2, 2), rate=5e-4, strain=0.04, steps=40)
        self.assertEqual(program.steps, 40)
        self.assertEqual(program.control, ["S", "E", "S", "S", "S", "S"])
        np.testing.assert_allclose(program.dt, 2.0)
        self.assertAlmostEqual(program.strain[-1, 1], 0.04)
        np.testing.assert_array_equal(program.stress, 0.0)

    def test_shear_targets_carry_the_mandel_factor(self):
        program = monotonic_program((1, 2), rate=1e-2, strain=0.01, steps=10)
        self.assertEqual(program.control[3], "E")
        self.assertAlmostEqual(program.strain[-1, 3], 0.01 * np.sqrt(2.0))

    def test_hysteresis(self):
        program = hysteresis_program((2, 2), rate=1e-2, amplitude=0.02, steps=8)
        np.testing.assert_allclose(program.strain[:, 1], [0.0, 0.01, 0.02, 0.01, 0.0, -0.01, -0.02, -0.01, 0.0], atol=1e-15)
        np.testing.assert_allclose(program.dt, 1.0)
        with self.assertRaises(ValueError):
            hysteresis_program((2, 2), rate=1e-2, steps=10)

    def test_biaxial(self):
        program = biaxial_program(((2, 2), (1, 1)), rate=1e-2, strain=0.02, steps=4)
        self.assertEqual(program.steps, 8)
        self.assertEqual(program.control[:2], ["E", "E"])
        np.testing.assert_allclose(program.strain[4:, 1], 0.02)
        np.testing.assert_allclose(program.strain[:5, 0], 0.0)
        self.assertAlmostEqual(program.strain[-1, 0], 0.02)
        with self.assertRaises(ValueError):
            biaxial_program(((2, 2), (2, 2)), rate=1e-2)

    def test_cyclic(self):
        program = cyclic_program((2, 2), amplitude_MPa=40.0, frequency=10.0, steps_per_cycle=20, cycles=3)
        self.assertEqual(program.steps, 60)
        self.assertEqual(program.control, ["S"] * 6)
        self.assertAlmostEqual(program.cycle_period_s, 0.1)
        self.assertAlmostEqual(program.stress[5, 1], 40.0)
        self.assertAlmostEqual(program.stress[15, 1], -40.0)
        self.assertEqual(program.stress[0, 1], 0.0)

    def test_build_preset(self):
        self.assertEqual(build_preset("monotonic").steps, 40)
        self.assertEqual(build_preset("hysteresis", amplitude=0.01).steps, 80)
        self.assertEqual(build_preset("biaxial", direction="11", second_direction="22").steps, 80)
        cyclic = build_preset("cyclic", cycles=2, theta0_K=300.0)
        self.assertEqual(cyclic.steps, 40)
        self.assertEqual(cyclic.theta0_K, 300.0)
        with self.assertRaises(ValueError):
            build_preset("creep")


if __name__ == "__main__":
    unittest.main()
