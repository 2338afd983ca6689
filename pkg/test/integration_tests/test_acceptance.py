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
import pytest

from thermodmn_cli.config import BenchConfig, TrainingConfig
from thermodmn_cli.driver.metrics import cyclic_metrics
from thermodmn_cli.driver.program import LoadProgram
from thermodmn_cli.driver.runner import THERMAL_TOLERANCE, ProgramRunner
from thermodmn_cli.materials.pa66 import Pa66Material
from thermodmn_cli.materials.parameters import glass_params, pa66_params
from thermodmn_cli.materials.thermoelastic import ThermoelasticMaterial
from thermodmn_cli.network.laminate import homogenize_linear
from thermodmn_cli.network.solver import DmnSolver
from thermodmn_cli.network.topology import DmnTopology
from thermodmn_cli.service.benchmark_network import BenchmarkNetwork
from thermodmn_cli.service.validate_network import ValidateNetwork
from thermodmn_cli.templates.load_programs import cyclic_program, monotonic_program, preset_strain_rates
from thermodmn_cli.training.loss import TrainingBatch
from thermodmn_cli.training.sampling import sample_pair
from thermodmn_cli.training.trainer import NetworkTrainer


def composite_materials():
    return [ThermoelasticMaterial(glass_params()), Pa66Material(pa66_params())]


def random_strain_path(rng, steps=10, scale=4e-3):
    increments = rng.normal(scale=scale / np.sqrt(steps), size=(steps, 6))
    # one reversal per path
    increments[steps // 2 :] *= -1.5
    strain = np.vstack([np.zeros(6), np.cumsum(increments, axis=0)])
    return LoadProgram(
        dt=np.full(steps, rng.uniform(0.01, 1.0)),
        control=["E"] * 6,
        strain=strain,
        stress=np.zeros((steps + 1, 6)),
    )


@pytest.mark.slow
class TestTrainingAcceptance(unittest.TestCase):
    def test_student_recovers_hidden_network(self):
        rng = np.random.default_rng(2024)
        hidden = DmnTopology.random(2, rng)
        pairs = [sample_pair(rng) for _ in range(200)]
        stiffness_1 = np.stack([pair[0] for pair in pairs])
        stiffness_2 = np.stack([pair[1] for pair in pairs])
        data = TrainingBatch(stiffness_1, stiffness_2, homogenize_linear(hidden, stiffness_1, stiffness_2))

        result = NetworkTrainer(TrainingConfig(depth=3, epochs=500, seed=7)).train(data)

        self.assertLess(result.validation_error, 1e-2)
        self.assertLess(abs(result.weight_sum - 1.0), 1e-3)


@pytest.mark.slow
class TestOnlineAcceptance(unittest.TestCase):
    def test_network_matches_recursive_laminate_at_all_rates(self):
        topology = DmnTopology.random(3, np.random.default_rng(31))
        service = ValidateNetwork()
        for rate in preset_strain_rates():
            program = monotonic_program((1, 1), float(rate), strain=0.04, steps=40)
            records, passed = service.validate_network(topology, composite_materials(), program, tolerance=1e-8)
            self.assertTrue(passed, [record.as_row() for record in records])

    def test_dissipation_is_non_negative_on_random_paths(self):
        rng = np.random.default_rng(5)
        solver = DmnSolver(DmnTopology.random(2, rng), composite_materials())
        runner = ProgramRunner(solver)
        for _ in range(100):
            trajectory = runner.run(random_strain_path(rng))
            self.assertGreaterEqual(float(np.min(trajectory.dissipation)), -1e-10)

    def assert_amplitude_dips_then_grows(self, amplitudes):
        lowest = int(np.argmin(amplitudes))
        self.assertTrue(0 < lowest < len(amplitudes) - 1, amplitudes)
        self.assertLess(amplitudes[lowest], amplitudes[0])
        self.assertLess(amplitudes[lowest], amplitudes[-1])

    def test_cyclic_self_heating_orders_with_amplitude(self):
        solver = DmnSolver(DmnTopology.random(4, np.random.default_rng(12)), composite_materials())
        runner = ProgramRunner(solver)
        heating = []
        for amplitude in (20.0, 40.0, 60.0, 80.0):
            program = cyclic_program((2, 2), amplitude, frequency=10.0, steps_per_cycle=20, cycles=100)
            trajectory = runner.run(program)

            supplied, stored = trajectory.energy_balance()
            slack = trajectory.steps * THERMAL_TOLERANCE * trajectory.heat_capacity_mpa * np.max(trajectory.theta)
            self.assertAlmostEqual(supplied, stored, delta=1e-10 * abs(stored) + 2.0 * slack)

            records = cyclic_metrics(trajectory, program.cycle_period_s, component=1)
            self.assertEqual(len(records), 100)
            heating.append(records[-1].dtheta_cycle)
            if amplitude >= 60.0:
                self.assert_amplitude_dips_then_grows([record.eps_ampl for record in records])
        self.assertTrue(all(low < high for low, high in zip(heating, heating[1:])), heating)
        self.assertGreater(heating[0], 0.0)

    def test_converged_evaluation_at_depth_eight_is_fast(self):
        result = BenchmarkNetwork().benchmark_network(BenchConfig(depth=8, repeats=5))
        self.assertLessEqual(result["unknowns"], 765)
        self.assertLess(result["median_ms"], 50.0)
