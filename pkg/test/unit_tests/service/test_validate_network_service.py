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
from unittest import mock

import numpy as np

from thermodmn_cli.driver.metrics import EtaRecord
from thermodmn_cli.driver.program import LoadProgram
from thermodmn_cli.materials.pa66 import Pa66Material
from thermodmn_cli.materials.parameters import glass_params, pa66_params
from thermodmn_cli.materials.thermoelastic import ThermoelasticMaterial
from thermodmn_cli.network.topology import DmnTopology
from thermodmn_cli.service.validate_network import ValidateNetwork
from thermodmn_cli.templates.load_programs import cyclic_program


def strain_ramp(steps=3, peak=2e-3):
    strain = np.zeros((steps + 1, 6))
    strain[:, 0] = np.linspace(0.0, peak, steps + 1)
    return LoadProgram(
        dt=np.full(steps, 0.1),
        control=["E"] * 6,
        strain=strain,
        stress=np.zeros((steps + 1, 6)),
    )


class TestValidateNetwork(unittest.TestCase):
    def setUp(self):
        self.validate_network = ValidateNetwork()
        self.topology = DmnTopology.random(2, np.random.default_rng(8))
        self.materials = [ThermoelasticMaterial(glass_params()), Pa66Material(pa66_params())]

    def test_network_agrees_with_recursive_laminate(self):
        records, passed = self.validate_network.validate_network(
            self.topology, self.materials, strain_ramp(), tolerance=1e-6
        )

        self.assertTrue(passed)
        self.assertTrue(records)
        self.assertTrue(all(record.eta_max < 1e-6 for record in records if not record.skipped))

    def test_cyclic_program_adds_cycle_errors(self):
        program = cyclic_program((2, 2), 20.0, steps_per_cycle=8, cycles=2)
        records, passed = self.validate_network.validate_network(
            self.topology, self.materials, program, tolerance=1e-6
        )

        self.assertTrue(passed)
        self.assertEqual(len(records), 12)
        cycle_quantities = [record.quantity for record in records[-3:]]
        self.assertEqual(cycle_quantities, ["eps_ampl", "dtheta_cycle", "dissipation_cycle"])
        self.assertEqual(records[-3].eta_max, 0.0)

    @mock.patch("thermodmn_cli.service.validate_network.cycle_error_metrics")
    @mock.patch("thermodmn_cli.service.validate_network.error_metrics")
    def test_cycle_errors_decide_the_result(self, mock_error_metrics, mock_cycle_error_metrics):
        mock_error_metrics.return_value = [EtaRecord("stress", "22", 1e-10, 1e-9, False)]
        mock_cycle_error_metrics.return_value = [EtaRecord("dissipation_cycle", "-", 1e-4, 1e-3, False)]
        program = cyclic_program((2, 2), 20.0, steps_per_cycle=4, cycles=1)
        records, passed = self.validate_network.validate_network(
            self.topology, self.materials, program, tolerance=1e-6
        )
        self.assertFalse(passed)
        self.assertEqual(len(records), 2)

    @mock.patch("thermodmn_cli.service.validate_network.cycle_error_metrics")
    def test_programs_without_cycles_skip_cycle_errors(self, mock_cycle_error_metrics):
        self.validate_network.validate_network(self.topology, self.materials, strain_ramp(steps=1))
        mock_cycle_error_metrics.assert_not_called()
    @mock.patch("thermodmn_cli.service.validate_network.error_metrics")
    def test_validate_network_fails_above_tolerance(self, mock_error_metrics):
        mock_error_metrics.return_value = [
            EtaRecord("stress", "11", 1e-3, 5e-2, False),
            EtaRecord("stress", "12", float("nan"), float("nan"), True),
        ]
        records, passed = self.validate_network.validate_network(
            self.topology, self.materials, strain_ramp(steps=1), tolerance=1e-2
        )
        self.assertFalse(passed)
        self.assertEqual(len(records), 2)

    @mock.patch("thermodmn_cli.service.validate_network.error_metrics")
    def test_skipped_components_are_ignored(self, mock_error_metrics):
        mock_error_metrics.return_value = [
            EtaRecord("stress", "11", 1e-9, 1e-8, False),
            EtaRecord("stress", "12", float("nan"), float("nan"), True),
        ]
        _, passed = self.validate_network.validate_network(
            self.topology, self.materials, strain_ramp(steps=1), tolerance=1e-6
        )
        self.assertTrue(passed)

    @mock.patch("thermodmn_cli.service.validate_network.error_metrics")
    def test_non_finite_error_fails(self, mock_error_metrics):
        mock_error_metrics.return_value = [EtaRecord("theta", "-", float("inf"), float("inf"), False)]
        _, passed = self.validate_network.validate_network(
            self.topology, self.materials, strain_ramp(steps=1)
        )
        self.assertFalse(passed)
