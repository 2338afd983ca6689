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
Online evaluation of a deep material network as a thermomechanical material point.

Given the macroscopic strain and temperature at the end of a time step, the
solver finds the interface jumps a with Aᵀ W σ⃗(ε̄ + A a) = 0 by Newton's method
with backtracking, then averages stress, coupling term and dissipation over
the leaves and assembles the four algorithmic tangents from one factorization.
"""
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy import linalg, sparse

from thermodmn_cli.config import SolverConfig
from thermodmn_cli.constants.material_constants import HEAT_CAPACITY_TO_MPA
from thermodmn_cli.exceptions import ConvergenceError, IndefiniteSystemError
from thermodmn_cli.materials.gsm import GsmMaterial, GsmResponse, MaterialState
from thermodmn_cli.network.topology import DmnTopology, GradientOperator, build_gradient_operator
from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class DmnState:
    """
    Converged state of a network after a time step.

    Attributes:
        material_states (Tuple[MaterialState, MaterialState]): Internal variables of the
            active leaves of phase 1 and phase 2.
        jumps (np.ndarray): Interface jumps of the active nodes, warm start of the next step.
        phase_strains (np.ndarray): Strains of the active leaves.
        macro_strain (np.ndarray): Macroscopic strain.
    """

    material_states: Tuple[MaterialState, MaterialState]
    jumps: np.ndarray
    phase_strains: np.ndarray
    macro_strain: np.ndarray


@dataclass(frozen=True)
class DmnOutput:
    stress: np.ndarray
    coupling: float
    dissipation: float
    tangent_strain: np.ndarray
    tangent_theta: np.ndarray
    coupling_strain: np.ndarray
    coupling_theta: float
    iterations: int
    evaluations: int
    residual: float
    residual_history: List[float] = field(default_factory=list)


@dataclass(frozen=True)
class BacktrackResult:
    jumps: np.ndarray
    residual: float
    payload: object
    step_size: float
    evaluations: int


def factorize(system: np.ndarray) -> tuple:
    """
    Cholesky factorization of the network Newton matrix.

    Raises:
        IndefiniteSystemError: If the matrix is not positive definite.
    """
    try:
        return linalg.cho_factor(system)
    except linalg.LinAlgError as e:
        raise IndefiniteSystemError(f"Network Newton matrix is not positive definite: {e}") from e


def newton_step(system: np.ndarray, residual: np.ndarray) -> np.ndarray:
    """Solve [AᵀW J A] Δa = -AᵀWσ⃗."""
    return -linalg.cho_solve(factorize(system), residual)


def backtrack(
    jumps: np.ndarray,
    step: np.ndarray,
    residual: float,
    evaluate: Callable[[np.ndarray], Tuple[float, object]],
    max_backtrack: int,
    factor: float,
) -> BacktrackResult:
    """
    Try a + Δa, then a + γΔa, a + γ²Δa, ... until the residual drops below `residual`.

    Args:
        jumps (np.ndarray): Current iterate a.
        step (np.ndarray): Newton step Δa.
        residual (float): Residual at a.
        evaluate: Maps an iterate to (residual, payload).
        max_backtrack (int): Number of step reductions allowed.
        factor (float): Reduction factor γ in (0, 1).

    Returns:
        BacktrackResult: The first improving iterate, or the last one tried.
    """
    size = 1.0
    trial = jumps + step
    trial_residual, payload = evaluate(trial)
    evaluations = 1
    for _ in range(max_backtrack):
        if trial_residual < residual:
            break
        size *= factor
        trial = jumps + size * step
        trial_residual, payload = evaluate(trial)
        evaluations += 1
    return BacktrackResult(trial, trial_residual, payload, size, evaluations)


def effective_outputs(
    weights: np.ndarray, responses: Sequence[Tuple[np.ndarray, GsmResponse]]
) -> Tuple[np.ndarray, float, float]:
    """
    Volume averages σ̄ = Σ wσ, ρ̄ = Σ wD and 𝒟̄ = Σ w𝒟.

    Args:
        weights (np.ndarray): Weights of the active leaves.
        responses: Pairs of (leaf positions, phase response) covering all active leaves.
    """
    stress = np.zeros(6)
    coupling = 0.0
    dissipation = 0.0
    for positions, response in responses:
        w = weights[positions]
        stress += w @ response.stress
        coupling += float(w @ response.coupling)
        dissipation += float(w @ response.dissipation)
    return stress, coupling, dissipation


def algorithmic_tangents(
    operator: GradientOperator,
    weights: np.ndarray,
    factor: tuple,
    stiffness: np.ndarray,
    stress_theta: np.ndarray,
    coupling_strain: np.ndarray,
    coupling_theta: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """
    Chain-rule tangents of (σ̄, ρ̄) with respect to (ε̄, θ̄).

    Both sensitivity systems K da/dε̄ = -AᵀW J 𝕀 and K da/dθ̄ = -AᵀW ∂σ⃗/∂θ share
    the factorization of the converged Newton matrix K.

    Args:
        operator (GradientOperator): Pruned gradient operator.
        weights (np.ndarray): Active leaf weights (L,).
        factor (tuple): Cholesky factor of K from the same evaluation, or None without jumps.
        stiffness (np.ndarray): Leaf tangents ∂σ/∂ε (L, 6, 6).
        stress_theta (np.ndarray): Leaf ∂σ/∂θ (L, 6).
        coupling_strain (np.ndarray): Leaf ∂D/∂ε (L, 6).
        coupling_theta (np.ndarray): Leaf ∂D/∂θ (L,).

    Returns:
        Tuple: C_algo_ε (6, 6), C_algo_θ (6,), D_algo_ε (6,), D_algo_θ.
    """
    leaves = weights.shape[0]
    strain_sensitivity = np.broadcast_to(np.eye(6), (leaves, 6, 6)).copy()
    theta_sensitivity = np.zeros((leaves, 6))
    if factor is not None and operator.shape[1] > 0:
        weighted = weights[:, None, None] * stiffness
        rhs_strain = operator.matrix.T @ weighted.reshape(6 * leaves, 6)
        rhs_theta = operator.matrix.T @ (weights[:, None] * stress_theta).reshape(-1)
        jumps_strain = -linalg.cho_solve(factor, rhs_strain)
        jumps_theta = -linalg.cho_solve(factor, rhs_theta)
        strain_sensitivity += (operator.matrix @ jumps_strain).reshape(leaves, 6, 6)
        theta_sensitivity += (operator.matrix @ jumps_theta).reshape(leaves, 6)
    tangent_strain = np.einsum("l,lij,ljk->ik", weights, stiffness, strain_sensitivity)
    tangent_theta = np.einsum("l,lij,lj->i", weights, stiffness, theta_sensitivity) + weights @ stress_theta
    rho_strain = np.einsum("l,li,lij->j", weights, coupling_strain, strain_sensitivity)
    rho_theta = float(
        np.einsum("l,li,li->", weights, coupling_strain, theta_sensitivity) + weights @ coupling_theta
    )
    return tangent_strain, tangent_theta, rho_strain, rho_theta


def effective_heat_capacity(topology: DmnTopology, capacities: Sequence[float]) -> float:
    """c̄ = Σ w_i c_i over the leaves, in the unit of `capacities`."""
    capacities = np.asarray(capacities, dtype=float)
    return float(topology.weights @ capacities[topology.leaf_phases])


class DmnSolver:
    """
    Material-point solver of a two-phase network.

    Args:
        topology (DmnTopology): Network; zero-weight leaves and nodes are pruned.
        materials (Sequence[GsmMaterial]): Laws of phase 1 (even leaves) and phase 2 (odd leaves).
        config (SolverConfig): Tolerance, iteration and backtracking budgets.
    """

    def __init__(
        self,
        topology: DmnTopology,
        materials: Sequence[GsmMaterial],
        config: SolverConfig = None,
    ):
        if len(materials) != 2:
            raise ValueError(f"Expected two phase materials, got {len(materials)}")
        self.topology = topology
        self.materials = tuple(materials)
        self.config = config or SolverConfig()
        self.operator = build_gradient_operator(topology)
        self.weights = topology.weights[self.operator.leaves]
        phases = topology.leaf_phases[self.operator.leaves]
        self.positions = tuple(np.flatnonzero(phases == phase) for phase in (0, 1))
        self.normalizer = float(topology.node_count)

    @property
    def heat_capacity(self) -> float:
        """Effective heat capacity in J m⁻³ K⁻¹."""
        return effective_heat_capacity(
            self.topology, [material.heat_capacity for material in self.materials]
        )

    @property
    def heat_capacity_mpa(self) -> float:
        return self.heat_capacity * HEAT_CAPACITY_TO_MPA

    def initial_state(self) -> DmnState:
        return DmnState(
            material_states=tuple(
                material.initial_state(positions.size)
                for material, positions in zip(self.materials, self.positions)
            ),
            jumps=np.zeros((self.operator.nodes.size, 3)),
            phase_strains=np.zeros((self.operator.leaves.size, 6)),
            macro_strain=np.zeros(6),
        )

    def phase_strains(self, macro_strain: np.ndarray, jumps: np.ndarray) -> np.ndarray:
        return macro_strain[None, :] + self.operator.apply(jumps)

    def _stresses(self, strains, theta, state, dt) -> Tuple[np.ndarray, np.ndarray]:
        stresses = np.zeros_like(strains)
        tangents = np.zeros(strains.shape + (6,))
        for material, positions, material_state in zip(
            self.materials, self.positions, state.material_states
        ):
            if positions.size:
                stresses[positions], tangents[positions] = material.stress_update(
                    strains[positions], theta, material_state, dt
                )
        return stresses, tangents

    def _residual(self, stresses: np.ndarray) -> Tuple[np.ndarray, float]:
        weighted = self.weights[:, None] * stresses
        balance = self.operator.adjoint(weighted)
        mean_stress = np.sum(weighted, axis=0)
        scale = self.normalizer * max(np.linalg.norm(mean_stress), 1.0)
        return balance, float(np.linalg.norm(balance) / scale)

    def newton_matrix(self, tangents: np.ndarray) -> np.ndarray:
        """AᵀW J A, assembled sparse and returned dense for the factorization."""
        count = self.weights.size
        blocks = sparse.bsr_matrix(
            (self.weights[:, None, None] * tangents, np.arange(count), np.arange(count + 1)),
            shape=(6 * count, 6 * count),
        )
        matrix = self.operator.matrix
        return (matrix.T @ blocks @ matrix).toarray()

    def evaluate(
        self,
        state: DmnState,
        macro_strain: np.ndarray,
        theta: float,
        dt: float,
    ) -> Tuple[DmnOutput, DmnState]:
        """
        Advance the network to (ε̄^{n+1}, θ̄^{n+1}).

        Args:
            state (DmnState): Converged state of the previous step; not modified.
            macro_strain (np.ndarray): Macroscopic Mandel strain.
            theta (float): Macroscopic temperature in K.
            dt (float): Time increment in s.

        Returns:
            Tuple[DmnOutput, DmnState]: Effective response and the advanced state.

        Raises:
            ConvergenceError: If the balance residual stays above tolerance.
            IndefiniteSystemError: If the Newton matrix loses positive definiteness.
            MaterialUpdateError: If a phase update fails.
        """
        if dt <= 0.0:
            raise ValueError(f"Time increment must be positive, got {dt}")
        if theta <= 0.0:
            raise ValueError(f"Absolute temperature must be positive, got {theta}")
        config = self.config
        macro_strain = np.asarray(macro_strain, dtype=float)

        def residual_at(jumps):
            strains = self.phase_strains(macro_strain, jumps)
            stresses, tangents = self._stresses(strains, theta, state, dt)
            balance, norm = self._residual(stresses)
            return norm, (strains, tangents, balance)

        jumps = state.jumps.copy()
        residual, (strains, tangents, balance) = residual_at(jumps)
        history = [residual]
        iterations = 0
        evaluations = 1
        logger.debug(f"initial residual {residual:.3e}")
        while residual >= config.tolerance and jumps.size:
            if iterations >= config.max_iterations:
                logger.error(
                    f"Network Newton did not converge, residual {residual:.3e} "
                    f"after {iterations} Newton iterations"
                )
                raise ConvergenceError(
                    "Network balance did not converge", iterations=iterations, residuals=history
                )
            step = newton_step(self.newton_matrix(tangents), balance.reshape(-1))
            result = backtrack(
                jumps.reshape(-1),
                step,
                residual,
                residual_at,
                config.max_backtrack,
                config.backtrack_factor,
            )
            jumps = result.jumps.reshape(-1, 3)
            residual = result.residual
            strains, tangents, balance = result.payload
            iterations += 1
            evaluations += result.evaluations
            history.append(residual)
            logger.debug(
                f"iteration {iterations}: residual {residual:.3e}, step size {result.step_size:g}"
            )

        responses = []
        stiffness = np.zeros_like(tangents)
        stress_theta = np.zeros_like(strains)
        coupling_strain = np.zeros_like(strains)
        coupling_theta = np.zeros(strains.shape[0])
        new_states = []
        for material, positions, material_state in zip(
            self.materials, self.positions, state.material_states
        ):
            if not positions.size:
                new_states.append(material_state)
                continue
            response = material.update(
                strains[positions], theta, material_state, dt, state.phase_strains[positions]
            )
            responses.append((positions, response))
            stiffness[positions] = response.dstress_dstrain
            stress_theta[positions] = response.dstress_dtheta
            coupling_strain[positions] = response.dcoupling_dstrain
            coupling_theta[positions] = response.dcoupling_dtheta
            new_states.append(response.state)

        factor = None
        if jumps.size:
            factor = factorize(self.newton_matrix(stiffness))
        stress, coupling, dissipation = effective_outputs(self.weights, responses)
        tangent_strain, tangent_theta, rho_strain, rho_theta = algorithmic_tangents(
            self.operator,
            self.weights,
            factor,
            stiffness,
            stress_theta,
            coupling_strain,
            coupling_theta,
        )
        output = DmnOutput(
            stress=stress,
            coupling=coupling,
            dissipation=dissipation,
            tangent_strain=tangent_strain,
            tangent_theta=tangent_theta,
            coupling_strain=rho_strain,
            coupling_theta=rho_theta,
            iterations=iterations,
            evaluations=evaluations,
            residual=residual,
            residual_history=history,
        )
        new_state = DmnState(
            material_states=tuple(new_states),
            jumps=jumps,
            phase_strains=strains,
            macro_strain=macro_strain.copy(),
        )
        return output, new_state
