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

from thermodmn_cli.constants.material_constants import GPA_TO_MPA
from thermodmn_cli.exceptions import MaterialUpdateError
from thermodmn_cli.materials.gsm import MaterialState
from thermodmn_cli.materials.pa66 import (
    Pa66Material,
    pa66_update,
    solve_plastic_rate,
    temperature_degradation,
    wlf_shift,
)
from thermodmn_cli.materials.parameters import pa66_params
from thermodmn_cli.tensor.mandel import IDENTITY2, deviator, isotropic_stiffness, trace


def random_states(rng, count, branches):
    eps_v = rng.normal(0.0, 2e-3, (count, branches, 6))
    return MaterialState(
        eps_p=rng.uniform(0.0, 5e-3, count),
        eps_vp=deviator(rng.normal(0.0, 2e-3, (count, 6))),
        eps_v=eps_v,
    )


class TestShiftFunctions(unittest.TestCase):
    def setUp(self):
        self.params = pa66_params()

    def test_wlf_shift(self):
        p = self.params
        self.assertAlmostEqual(float(wlf_shift(p.theta_ref_K, p.wlf_C1, p.wlf_C2_K, p.theta_ref_K)), 1.0)
        hotter = float(wlf_shift(p.theta_ref_K + 10.0, p.wlf_C1, p.wlf_C2_K, p.theta_ref_K))
        self.assertAlmostEqual(np.log10(hotter), -0.57439, places=5)
        self.assertAlmostEqual(hotter, 0.26641, places=4)
        colder = float(wlf_shift(p.theta_ref_K - 10.0, p.wlf_C1, p.wlf_C2_K, p.theta_ref_K))
        self.assertAlmostEqual(np.log10(colder), 26.21 * 10.0 / 436.31, places=10)

    def test_wlf_shift_singular(self):
        with self.assertRaises(ValueError):
            wlf_shift(300.0 - 446.31, 26.21, 446.31, 300.0)

    def test_temperature_degradation(self):
        self.assertAlmostEqual(float(temperature_degradation(298.15, 0.011, 298.15)), 1.0)
        self.assertAlmostEqual(float(temperature_degradation(318.15, 0.011, 298.15)), 0.80252, places=5)
        self.assertEqual(float(temperature_degradation(400.0, 0.0, 298.15)), 1.0)


class TestPa66Material(unittest.TestCase):
    def setUp(self):
        self.params = pa66_params()
        self.material = Pa66Material(self.params)
        self.rng = np.random.default_rng(2024)

    def test_virgin_state_at_rest(self):
        response = pa66_update(np.zeros(6), self.params.theta0_K, 0.1, np.zeros(6), None, self.params)
        np.testing.assert_allclose(response.stress, np.zeros(6), atol=1e-12)
        self.assertEqual(response.dissipation, 0.0)
        self.assertEqual(response.state.eps_p, 0.0)
        np.testing.assert_allclose(response.state.eps_v, np.zeros((12, 6)), atol=1e-15)

    def test_long_time_limit_is_long_term_spring(self):
        p = self.params
        strain = np.array([1e-3, 0.0, 0.0, 0.0, 0.0, 0.0])
        theta = p.theta_ref_K
        response = pa66_update(strain, theta, 1e12 * np.max(p.tau_i), np.zeros(6), None, p)
        expected = isotropic_stiffness(self.material.bulk_inf, self.material.shear_inf) @ (
            strain - p.alpha0_per_K * (theta - p.theta0_K) * IDENTITY2
        )
        np.testing.assert_allclose(response.stress, expected, atol=1e-4)
        self.assertEqual(response.state.eps_p, 0.0)

    def test_single_maxwell_branch_frequency_response(self):
        nu = 0.42
        params = pa66_params(E_i_MPa=[300.0], tau_log10_s=[0.0], sigma_Y0_MPa=1e9, nu=nu)
        material = Pa66Material(params)
        for offset in (0.0, 10.0):
            theta = params.theta_ref_K + offset
            shift = float(wlf_shift(theta, params.wlf_C1, params.wlf_C2_K, params.theta_ref_K))
            tau = shift * 2.0 * (1.0 + nu)
            omega = 10.0 / tau
            steps_per_cycle, cycles = 100, 20
            dt = 2.0 * np.pi / omega / steps_per_cycle
            amplitude = 1e-3
            state = material.initial_state(1)
            previous = np.zeros((1, 6))
            times, stresses = [], []
            for n in range(1, steps_per_cycle * cycles + 1):
                strain = np.zeros((1, 6))
                strain[0, 3] = amplitude * np.sin(omega * n * dt)
                response = material.update(strain, theta, state, dt, previous)
                state, previous = response.state, strain
                times.append(n * dt)
                stresses.append(response.stress[0, 3])
            t = np.array(times[-steps_per_cycle:])
            design = np.stack([np.sin(omega * t), np.cos(omega * t), np.ones_like(t)], axis=1)
            (in_phase, out_of_phase, _), *_ = np.linalg.lstsq(design, np.array(stresses[-steps_per_cycle:]), rcond=None)
            storage = in_phase / (2.0 * amplitude) - material.shear_inf
            loss = out_of_phase / (2.0 * amplitude)
            branch_shear = 300.0 / (2.0 * (1.0 + nu))
            product = omega * tau
            self.assertAlmostEqual(storage, branch_shear * product**2 / (1 + product**2), delta=0.01 * branch_shear * product**2 / (1 + product**2))
            self.assertAlmostEqual(loss, branch_shear * product / (1 + product**2), delta=0.01 * branch_shear * product / (1 + product**2))

    def finite_difference_check(self, strain, theta, state, dt, strain_prev):
        response = self.material.update(strain, theta, state, dt, strain_prev)
        h = 1e-7
        stress_fd = np.zeros((strain.shape[0], 6, 6))
        coupling_fd = np.zeros((strain.shape[0], 6))
        for j in range(6):
            step = np.zeros(6)
            step[j] = h
            plus = self.material.update(strain + step, theta, state, dt, strain_prev)
            minus = self.material.update(strain - step, theta, state, dt, strain_prev)
            stress_fd[:, :, j] = (plus.stress - minus.stress) / (2 * h)
            coupling_fd[:, j] = (plus.coupling - minus.coupling) / (2 * h)
        plus = self.material.update(strain, theta + 1e-4, state, dt, strain_prev)
        minus = self.material.update(strain, theta - 1e-4, state, dt, strain_prev)
        theta_fd = (plus.stress - minus.stress) / 2e-4
        for point in range(strain.shape[0]):
            scale = np.linalg.norm(response.dstress_dstrain[point])
            self.assertLess(np.linalg.norm(response.dstress_dstrain[point] - stress_fd[point]) / scale, 1e-5)
            scale = max(np.linalg.norm(response.dstress_dtheta[point]), 1e-3)
            self.assertLess(np.linalg.norm(response.dstress_dtheta[point] - theta_fd[point]) / scale, 1e-5)
            scale = max(np.linalg.norm(response.dcoupling_dstrain[point]), 1.0)
            self.assertLess(np.linalg.norm(response.dcoupling_dstrain[point] - coupling_fd[point]) / scale, 1e-4)
        return response

    def test_tangents_match_finite_differences(self):
        count = 50
        scales = np.logspace(-4.0, np.log10(1.5e-2), count)
        strain = self.rng.normal(0.0, 1.0, (count, 6)) * scales[:, None]
        strain_prev = strain - self.rng.normal(0.0, 2e-3, (count, 6))
        theta = self.rng.uniform(285.0, 320.0, count)
        state = random_states(self.rng, count, self.params.branch_count)
        response = self.finite_difference_check(strain, theta, state, 0.05, strain_prev)
        self.assertTrue(np.any(response.state.eps_p > state.eps_p), "sample should include plastic points")
        self.assertTrue(np.any(response.state.eps_p == state.eps_p), "sample should include elastic points")

    def test_frozen_state_tangent_equals_full_update_tangent(self):
        strain = self.rng.normal(0.0, 1.5e-2, (10, 6))
        state = random_states(self.rng, 10, self.params.branch_count)
        stress, tangent = self.material.stress_update(strain, 300.0, state, 0.05)
        response = self.material.update(strain, 300.0, state, 0.05, np.zeros((10, 6)))
        np.testing.assert_allclose(stress, response.stress, rtol=1e-12, atol=1e-10)
        np.testing.assert_allclose(tangent, response.dstress_dstrain, rtol=1e-8, atol=1e-6)

    def test_dissipation_non_negative_and_plastic_flow_deviatoric(self):
        count = 100
        state = self.material.initial_state(count)
        strain = np.zeros((count, 6))
        for _ in range(100):
            new_strain = strain + self.rng.normal(0.0, 4e-3, (count, 6))
            theta = self.rng.uniform(280.0, 340.0, count)
            response = self.material.update(new_strain, theta, state, 0.05, strain)
            self.assertTrue(np.all(response.dissipation >= -1e-10 * (1.0 + np.abs(response.coupling))))
            self.assertTrue(np.all(response.state.eps_p >= state.eps_p))
            np.testing.assert_allclose(trace(response.state.eps_vp), 0.0, atol=1e-10)
            state, strain = response.state, new_strain
        self.assertGreater(np.max(state.eps_p), 0.0)

    def test_time_temperature_superposition(self):
        params = pa66_params(sigma_Y0_MPa=1e9, alpha0_per_K=0.0)
        material = Pa66Material(params)
        state = random_states(self.rng, 4, params.branch_count)
        strain = self.rng.normal(0.0, 5e-3, (4, 6))
        log_two = np.log10(2.0)
        offset = -params.wlf_C2_K * log_two / (params.wlf_C1 + log_two)
        theta_doubled = params.theta_ref_K + offset
        self.assertAlmostEqual(
            float(wlf_shift(theta_doubled, params.wlf_C1, params.wlf_C2_K, params.theta_ref_K)), 2.0, places=10
        )
        base = material.update(strain, params.theta_ref_K, state, 0.1, strain)
        shifted = material.update(strain, theta_doubled, state, 0.2, strain)
        np.testing.assert_allclose(
            shifted.state.eps_v - state.eps_v, base.state.eps_v - state.eps_v, rtol=1e-10, atol=1e-16
        )

    def test_heat_capacity(self):
        self.assertEqual(self.material.heat_capacity, 1.9e6)
        self.assertAlmostEqual(self.material.heat_capacity_mpa, 1.9)

    def test_instantaneous_stiffness_exceeds_long_term(self):
        gap = self.material.instantaneous_stiffness() - self.material.elastic_stiffness()
        self.assertGreater(np.min(np.linalg.eigvalsh(gap)), 0.0)
        self.assertAlmostEqual(
            self.material.elastic_stiffness()[0, 0] / GPA_TO_MPA,
            self.material.bulk_inf / GPA_TO_MPA + 4.0 / 3.0 * self.material.shear_inf / GPA_TO_MPA,
        )

    def test_return_mapping_budget_exceeded(self):
        with pytest.raises(MaterialUpdateError):
            solve_plastic_rate(
                np.array([np.nan]), np.array([15.0]), np.array([74.0]), np.array([103.0]),
                0.32, 2.0, np.array([500.0]), np.array([0.0]), 0.1,
            )

    def test_rejects_non_positive_temperature(self):
        with self.assertRaises(ValueError):
            pa66_update(np.zeros(6), -1.0, 0.1, np.zeros(6), None, self.params)


if __name__ == "__main__":
    unittest.main()
