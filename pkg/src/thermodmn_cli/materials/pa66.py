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
"""
Thermo-viscoelastic, thermo-viscoplastic PA66 matrix model.

A generalized Maxwell body with N branches in parallel with a long-term
spring, all acting on the strain left after J2 viscoplastic flow. The
implicit-Euler update condenses to a radial return on the trial deviatoric
stress with the reduced shear modulus G∞ + Σ G_i / (1 + Δt/(a_θ τ_G,i)),
so the local problem is a single scalar equation per material point.
"""
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from thermodmn_cli.constants.material_constants import (
    GPA_TO_MPA,
    HARDENING_STRAIN_FLOOR,
    LOCAL_NEWTON_MAX_ITERATIONS,
    LOCAL_NEWTON_TOLERANCE,
)
from thermodmn_cli.exceptions import MaterialUpdateError
from thermodmn_cli.materials.gsm import (
    GsmMaterial,
    GsmResponse,
    MaterialState,
    as_batch,
    check_increment,
    response_from_duals,
    seed_strain_temperature,
)
from thermodmn_cli.materials.parameters import Pa66Params
from thermodmn_cli.tensor import dual
from thermodmn_cli.tensor.dual import ArrayOrDual, Dual
from thermodmn_cli.tensor.mandel import (
    IDENTITY2,
    bulk_shear_from_young,
    deviator,
    isotropic_projectors,
    isotropic_stiffness,
    trace,
)

SQRT_3_2 = float(np.sqrt(1.5))
LN10 = float(np.log(10.0))


def wlf_shift(theta: ArrayOrDual, c1: float, c2: float, theta_ref: float) -> ArrayOrDual:
    """
    Williams-Landel-Ferry shift factor, log10 a = -C1 (θ - θref) / (C2 + θ - θref).

    Raises:
        ValueError: If C2 + θ - θref vanishes.
    """
    offset = theta - theta_ref
    denominator = c2 + offset
    if np.any(np.abs(dual.value_of(denominator)) < 1e-12 * max(1.0, abs(c2))):
        raise ValueError("WLF shift is singular at C2 + (theta - theta_ref) = 0")
    log10_shift = -c1 * offset / denominator
    return dual.exp(LN10 * log10_shift)


def temperature_degradation(theta: ArrayOrDual, beta: float, theta_ref: float) -> ArrayOrDual:
    return dual.exp(-beta * (theta - theta_ref))


def _trace(vector: ArrayOrDual) -> ArrayOrDual:
    return vector[..., 0] + vector[..., 1] + vector[..., 2]


def _deviator(vector: ArrayOrDual) -> ArrayOrDual:
    return vector - (_trace(vector) / 3.0)[..., None] * IDENTITY2


def _hardening(coefficient: ArrayOrDual, eps_p: ArrayOrDual, exponent: float) -> ArrayOrDual:
    floored = dual.where(dual.value_of(eps_p) > HARDENING_STRAIN_FLOOR, eps_p, HARDENING_STRAIN_FLOOR)
    return coefficient * floored**exponent


def _rate_residual(y, q_trial, sigma_y, eta, hard_coef, hard_exp, rate_exp, shear, eps_p, dt):
    # y = Δε_p^(1/m); overstress σ_Y (η Δε_p / (Δt σ_Y))^(1/m) must equal q - σ_Y - H
    rate_coef = (eta / (dt * sigma_y)) ** (1.0 / rate_exp)
    increment = y**rate_exp
    return (
        sigma_y * rate_coef * y
        + 3.0 * shear * increment
        + sigma_y
        + _hardening(hard_coef, eps_p + increment, hard_exp)
        - q_trial
    )


def solve_plastic_rate(
    q_trial: np.ndarray,
    sigma_y: np.ndarray,
    eta: np.ndarray,
    hard_coef: np.ndarray,
    hard_exp: float,
    rate_exp: float,
    shear: np.ndarray,
    eps_p: np.ndarray,
    dt: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Safeguarded Newton for y = Δε_p^(1/m) on plastically loaded points.

    The residual is increasing in y, negative at 0 and non-negative at the
    elastic-predictor bound ((q - σ_Y - H_n) / 3G)^(1/m), so bisection on that
    bracket backs up every rejected Newton step.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Root y and the residual slope dg/dy at it.

    Raises:
        MaterialUpdateError: If any point misses the tolerance within the iteration budget.
    """
    args = (q_trial, sigma_y, eta, hard_coef, hard_exp, rate_exp, shear, eps_p, dt)
    rate_coef = (eta / (dt * sigma_y)) ** (1.0 / rate_exp)
    overstress = q_trial - sigma_y - _hardening(hard_coef, eps_p, hard_exp)
    lower = np.zeros_like(q_trial)
    upper = (np.maximum(overstress, 0.0) / (3.0 * shear)) ** (1.0 / rate_exp)
    width0 = np.maximum(upper, np.finfo(float).tiny)
    scale = np.maximum(q_trial, sigma_y)
    y = 0.5 * upper
    history = []
    for _ in range(LOCAL_NEWTON_MAX_ITERATIONS):
        residual = _rate_residual(y, *args)
        increment = y**rate_exp
        total_strain = eps_p + increment
        floored = np.maximum(total_strain, HARDENING_STRAIN_FLOOR)
        hard_slope = np.where(
            total_strain > HARDENING_STRAIN_FLOOR,
            hard_coef * hard_exp * floored ** (hard_exp - 1.0),
            0.0,
        )
        slope = sigma_y * rate_coef + (3.0 * shear + hard_slope) * rate_exp * y ** (rate_exp - 1.0)
        error = np.abs(residual) / scale
        history.append(float(np.max(error)))
        done = (error <= LOCAL_NEWTON_TOLERANCE) | (upper - lower <= 1e-15 * width0)
        if np.all(done):
            return y, slope
        lower = np.where(residual < 0.0, y, lower)
        upper = np.where(residual > 0.0, y, upper)
        newton = y - residual / slope
        inside = (newton > lower) & (newton < upper)
        y = np.where(done, y, np.where(inside, newton, 0.5 * (lower + upper)))
    raise MaterialUpdateError(
        "Local viscoplastic return mapping did not converge",
        iterations=LOCAL_NEWTON_MAX_ITERATIONS,
        residuals=history,
    )


@dataclass
class Pa66Step:
    stress: ArrayOrDual
    eps_p: ArrayOrDual
    eps_vp: ArrayOrDual
    eps_v: ArrayOrDual
    bulk_alg: ArrayOrDual
    shear_alg: ArrayOrDual
    q_trial: np.ndarray
    direction: np.ndarray
    increment: np.ndarray
    rate_root: np.ndarray
    rate_slope: np.ndarray
    plastic: np.ndarray
    coupling: Optional[ArrayOrDual] = None
    dissipation: Optional[ArrayOrDual] = None


class Pa66Material(GsmMaterial):
    def __init__(self, params: Pa66Params):
        super().__init__(params)
        nu = params.nu
        self.bulk_inf, self.shear_inf = bulk_shear_from_young(params.E_inf_GPa * GPA_TO_MPA, nu)
        self.bulk_i = params.E_i / (3.0 * (1.0 - 2.0 * nu))
        self.shear_i = params.E_i / (2.0 * (1.0 + nu))
        # τ_K,i = τ_i E_i / K_i and τ_G,i = τ_i E_i / G_i
        self.tau_bulk = params.tau_i * 3.0 * (1.0 - 2.0 * nu)
        self.tau_shear = params.tau_i * 2.0 * (1.0 + nu)

    @property
    def branches(self) -> int:
        return self.params.branch_count

    def elastic_stiffness(self) -> np.ndarray:
        return isotropic_stiffness(self.bulk_inf, self.shear_inf)

    def instantaneous_stiffness(self) -> np.ndarray:
        return isotropic_stiffness(
            self.bulk_inf + np.sum(self.bulk_i), self.shear_inf + np.sum(self.shear_i)
        )

    def _evaluate(
        self,
        strain: ArrayOrDual,
        theta: ArrayOrDual,
        state: MaterialState,
        dt: float,
        strain_prev: Optional[np.ndarray] = None,
    ) -> Pa66Step:
        p = self.params
        shift = wlf_shift(theta, p.wlf_C1, p.wlf_C2_K, p.theta_ref_K)
        softening = temperature_degradation(theta, p.beta1_per_K, p.theta_ref_K)
        sigma_y = softening * p.sigma_Y0_MPa
        hard_coef = softening * p.k_MPa
        eta = temperature_degradation(theta, p.beta2_per_K, p.theta_ref_K) * p.eta0_MPa_s

        x_bulk = dt / (shift[:, None] * self.tau_bulk)
        x_shear = dt / (shift[:, None] * self.tau_shear)
        reduced_bulk = self.bulk_i / (1.0 + x_bulk)
        reduced_shear = self.shear_i / (1.0 + x_shear)
        bulk_alg = self.bulk_inf + dual.total(reduced_bulk, -1)
        shear_alg = self.shear_inf + dual.total(reduced_shear, -1)

        vol = _trace(strain) / 3.0 - p.alpha0_per_K * (theta - p.theta0_K)
        dev = _deviator(strain)
        vol_v = trace(state.eps_v) / 3.0
        dev_v = deviator(state.eps_v)

        s_trial = 2.0 * shear_alg[:, None] * (dev - state.eps_vp) - 2.0 * dual.total(
            reduced_shear[:, :, None] * dev_v, 1
        )
        pressure = 3.0 * bulk_alg * vol - 3.0 * dual.total(reduced_bulk * vol_v, -1)

        squared = dual.total(s_trial * s_trial, -1)
        loaded = dual.value_of(squared) > 0.0
        s_norm = dual.sqrt(dual.where(loaded, squared, 1.0))
        q_trial = dual.where(loaded, SQRT_3_2 * s_norm, 0.0)
        f_trial = q_trial - sigma_y - _hardening(hard_coef, state.eps_p, p.n)
        plastic = dual.value_of(f_trial) > 0.0

        count = plastic.shape[0]
        root = np.zeros(count)
        slope = np.ones(count)
        y: ArrayOrDual = root
        if np.any(plastic):
            values = [dual.value_of(v)[plastic] for v in (q_trial, sigma_y, eta, hard_coef)]
            root[plastic], slope[plastic] = solve_plastic_rate(
                *values,
                p.n,
                p.m,
                dual.value_of(shear_alg)[plastic],
                state.eps_p[plastic],
                dt,
            )
            residual = _rate_residual(
                root, q_trial, sigma_y, eta, hard_coef, p.n, p.m, shear_alg, state.eps_p, dt
            )
            if isinstance(residual, Dual):
                # implicit function theorem on g(y; ε, θ) = 0
                implicit = Dual(root, -residual.grad / slope[:, None])
                y = dual.where(plastic, implicit, 0.0 * implicit)
        increment = y**p.m

        direction = s_trial / s_norm[:, None]
        flow = SQRT_3_2 * increment[:, None] * direction
        eps_vp = state.eps_vp + flow
        eps_p = state.eps_p + increment
        stress = s_trial - 2.0 * shear_alg[:, None] * flow + pressure[:, None] * IDENTITY2

        elastic_dev = dev - eps_vp
        vol_v_new = (vol_v + x_bulk * vol[:, None]) / (1.0 + x_bulk)
        dev_v_new = (dev_v + x_shear[:, :, None] * elastic_dev[:, None, :]) / (1.0 + x_shear)[
            :, :, None
        ]
        eps_v = dev_v_new + vol_v_new[:, :, None] * IDENTITY2

        step = Pa66Step(
            stress=stress,
            eps_p=eps_p,
            eps_vp=eps_vp,
            eps_v=eps_v,
            bulk_alg=bulk_alg,
            shear_alg=shear_alg,
            q_trial=dual.value_of(q_trial),
            direction=dual.value_of(direction),
            increment=dual.value_of(increment),
            rate_root=root,
            rate_slope=slope,
            plastic=plastic,
        )
        if strain_prev is None:
            return step

        branch_stress = (3.0 * self.bulk_i * (vol[:, None] - vol_v_new))[
            :, :, None
        ] * IDENTITY2 + 2.0 * self.shear_i[:, None] * (elastic_dev[:, None, :] - dev_v_new)
        rate_trace = _trace(strain - strain_prev) / dt
        viscous_rate = (eps_v - state.eps_v) / dt
        plastic_rate = increment / dt
        gough_joule = -theta * p.alpha0_per_K * (
            3.0 * self.bulk_inf * rate_trace
            + dual.total(3.0 * self.bulk_i * (rate_trace[:, None] - _trace(viscous_rate)), -1)
        )
        softening_term = -theta * p.beta1_per_K * _hardening(hard_coef, eps_p, p.n) * plastic_rate
        dissipation = sigma_y * plastic_rate + dual.total(
            dual.total(branch_stress * viscous_rate, -1), -1
        )
        step.coupling = gough_joule + softening_term + dissipation
        step.dissipation = dissipation
        return step

    def _tangent(self, step: Pa66Step) -> np.ndarray:
        p1, p2 = isotropic_projectors()
        bulk = step.bulk_alg[:, None, None]
        shear = step.shear_alg[:, None, None]
        tangent = 3.0 * bulk * p1 + 2.0 * shear * p2
        if not np.any(step.plastic):
            return tangent
        q_trial = np.where(step.plastic, step.q_trial, 1.0)
        ratio = np.where(step.plastic, 3.0 * step.shear_alg * step.increment / q_trial, 0.0)
        root = np.where(step.plastic, step.rate_root, 1.0)
        increment_slope = np.where(
            step.plastic, self.params.m * root ** (self.params.m - 1.0) / step.rate_slope, 0.0
        )
        outer = np.einsum("ni,nj->nij", step.direction, step.direction)
        tangent = tangent - 2.0 * shear * ratio[:, None, None] * p2
        correction = 2.0 * step.shear_alg * (ratio - 3.0 * step.shear_alg * increment_slope)
        return tangent + correction[:, None, None] * outer

    def stress_update(
        self,
        strain: np.ndarray,
        theta: Union[float, np.ndarray],
        state: MaterialState,
        dt: float,
    ) -> Tuple[np.ndarray, np.ndarray]:
        check_increment(theta, dt)
        strain, theta = as_batch(strain, theta)
        step = self._evaluate(strain, theta, state, dt)
        return step.stress, self._tangent(step)

    def update(
        self,
        strain: np.ndarray,
        theta: Union[float, np.ndarray],
        state: MaterialState,
        dt: float,
        strain_prev: np.ndarray,
    ) -> GsmResponse:
        check_increment(theta, dt)
        strain, theta = as_batch(strain, theta)
        strain_prev = np.broadcast_to(np.asarray(strain_prev, dtype=float), strain.shape)
        strain_dual, theta_dual = seed_strain_temperature(strain, theta)
        step = self._evaluate(strain_dual, theta_dual, state, dt, strain_prev)
        new_state = MaterialState(
            eps_p=dual.value_of(step.eps_p).copy(),
            eps_vp=dual.value_of(step.eps_vp).copy(),
            eps_v=dual.value_of(step.eps_v).copy(),
        )
        return response_from_duals(step.stress, step.coupling, step.dissipation, new_state)


def pa66_update(
    strain: np.ndarray,
    theta: float,
    dt: float,
    strain_prev: np.ndarray,
    state_prev: Optional[MaterialState],
    params: Pa66Params,
) -> GsmResponse:
    """
    Single-point PA66 update with all derivatives.

    Args:
        strain (np.ndarray): Mandel strain ε^{n+1}.
        theta (float): θ^{n+1} in K; the WLF shift and softening use it fully implicitly.
        dt (float): Time increment in s.
        strain_prev (np.ndarray): Mandel strain ε^n.
        state_prev (MaterialState): Internal variables of one point, or None for a virgin state.
        params (Pa66Params): Phase parameters.

    Raises:
        ValueError: If theta <= 0 or dt <= 0.
        MaterialUpdateError: If the scalar return mapping does not converge.
    """
    material = Pa66Material(params)
    if state_prev is None:
        state_prev = material.initial_state(1)
    elif state_prev.eps_p.ndim == 0:
        state_prev = MaterialState(
            np.atleast_1d(state_prev.eps_p), state_prev.eps_vp[None], state_prev.eps_v[None]
        )
    response = material.update(
        np.atleast_2d(strain), theta, state_prev, dt, np.atleast_2d(strain_prev)
    )
    return response.item(0)
