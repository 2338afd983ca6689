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
Virtual experiments on a single macroscopic material point.

Each step solves the mixed control problem together with the lumped heat
balance c̄ (θ̄ⁿ⁺¹ - θ̄ⁿ) = Δt (ρ̄ⁿ⁺¹ - h A/V (θ̄ⁿ⁺¹ - θ̄₀)) by Newton's method on
the coupled tangent of the network. Failed steps are bisected.
"""
import dataclasses
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from thermodmn_cli.config import DriverConfig
from thermodmn_cli.constants.command_constants import ThermalMode
from thermodmn_cli.driver.program import LoadProgram
from thermodmn_cli.exceptions import ConvergenceError, IndefiniteSystemError
from thermodmn_cli.materials.gsm import GsmMaterial
from thermodmn_cli.network.reference import RecursiveLaminateSolver
from thermodmn_cli.network.solver import DmnSolver, DmnState
from thermodmn_cli.network.topology import DmnTopology
from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)

# heat balance residual relative to c̄ θ̄
THERMAL_TOLERANCE = 1e-13


@dataclass
class Trajectory:
    time: np.ndarray
    strain: np.ndarray
    stress: np.ndarray
    theta: np.ndarray
    coupling: np.ndarray
    dissipation: np.ndarray
    iterations: np.ndarray
    heat_capacity_mpa: float
    thermal_mode: str = ThermalMode.ADIABATIC.value
    film_coefficient: float = 0.0
    theta0_K: float = 293.15
    cycle_period_s: Optional[float] = None
    # film loss per step, time averaged over the substeps of a bisected step
    heat_loss: Optional[np.ndarray] = None

    @property
    def steps(self) -> int:
        return self.time.size - 1

    @property
    def dt(self) -> np.ndarray:
        return np.diff(self.time)

    def rows(self) -> List[List[float]]:
        table = np.column_stack(
            [self.time, self.strain, self.stress, self.theta, self.coupling, self.dissipation, self.iterations]
        )
        return [row[:-1].tolist() + [int(row[-1])] for row in table]

    def energy_balance(self) -> Tuple[float, float]:
        """(Σ Δt (ρ̄ - heat loss), c̄ (θ̄_final - θ̄_initial)), equal up to the heat balance tolerance."""
        if self.heat_loss is not None:
            loss = self.heat_loss[1:]
        else:
            loss = self.film_coefficient * (self.theta[1:] - self.theta0_K)
        supplied = float(np.sum(self.dt * (self.coupling[1:] - loss)))
        return supplied, self.heat_capacity_mpa * float(self.theta[-1] - self.theta[0])


@dataclass
class StepResult:
    state: DmnState
    strain: np.ndarray
    stress: np.ndarray
    theta: float
    # time averages over the substeps of a bisected step
    coupling: float
    dissipation: float
    heat_loss: float
    iterations: int


def _empty_trajectory(program: LoadProgram, heat_capacity_mpa: float) -> Trajectory:
    steps = program.steps
    return Trajectory(
        time=program.times,
        strain=np.zeros((steps + 1, 6)),
        stress=np.zeros((steps + 1, 6)),
        theta=np.full(steps + 1, program.initial_theta()),
        coupling=np.zeros(steps + 1),
        dissipation=np.zeros(steps + 1),
        iterations=np.zeros(steps + 1, dtype=int),
        heat_capacity_mpa=heat_capacity_mpa,
        thermal_mode=program.thermal.mode,
        film_coefficient=program.thermal.film_coefficient if program.thermal.mode == ThermalMode.CONVECTION.value else 0.0,
        theta0_K=program.theta0_K,
        cycle_period_s=program.cycle_period_s,
        heat_loss=np.zeros(steps + 1),
    )


class ProgramRunner:
    """
    Args:
        solver (DmnSolver): Network with its phase laws.
        config (DriverConfig): Control tolerance and iteration budgets.
        progress (bool): Show a progress bar over load steps.
    """

    def __init__(self, solver: DmnSolver, config: Optional[DriverConfig] = None, progress: bool = False):
        self.solver = solver
        self.config = config or DriverConfig()
        self.progress = progress
        self.heat_capacity = solver.heat_capacity_mpa

    def _solve_step(
        self,
        state: DmnState,
        strain_prev: np.ndarray,
        theta_prev: float,
        dt: float,
        program: LoadProgram,
        strain_target: np.ndarray,
        stress_target: np.ndarray,
        theta_target: float,
    ) -> StepResult:
        free = program.stress_controlled
        thermal_free = program.thermal.mode != ThermalMode.PRESCRIBED.value
        film = program.thermal.film_coefficient if program.thermal.mode == ThermalMode.CONVECTION.value else 0.0
        strain = np.where(free, strain_prev, strain_target)
        theta = theta_prev if thermal_free else theta_target
        capacity = self.heat_capacity
        stress_scale = self.config.stress_tolerance * np.maximum(1.0, np.abs(stress_target[free]))
        thermal_scale = THERMAL_TOLERANCE * capacity * theta_prev

        warm = state
        iterations = 0
        for _ in range(self.config.max_iterations):
            output, new_state = self.solver.evaluate(warm, strain, theta, dt)
            warm = dataclasses.replace(state, jumps=new_state.jumps)
            iterations += output.iterations
            stress_residual = output.stress[free] - stress_target[free]
            heat_residual = capacity * (theta - theta_prev) - dt * (output.coupling - film * (theta - program.theta0_K))
            converged = np.all(np.abs(stress_residual) <= stress_scale) and (
                not thermal_free or abs(heat_residual) <= thermal_scale
            )
            if converged:
                return StepResult(
                    new_state,
                    strain,
                    output.stress,
                    theta,
                    output.coupling,
                    output.dissipation,
                    film * (theta - program.theta0_K),
                    iterations,
                )

            tangent = output.tangent_strain[np.ix_(free, free)]
            if thermal_free:
                size = tangent.shape[0]
                jacobian = np.zeros((size + 1, size + 1))
                jacobian[:size, :size] = tangent
                jacobian[:size, size] = output.tangent_theta[free]
                jacobian[size, :size] = -dt * output.coupling_strain[free]
                jacobian[size, size] = capacity - dt * (output.coupling_theta - film)
                correction = np.linalg.solve(jacobian, -np.append(stress_residual, heat_residual))
                strain = strain.copy()
                strain[free] += correction[:size]
                theta += correction[size]
            else:
                strain = strain.copy()
                strain[free] += np.linalg.solve(tangent, -stress_residual)
            if theta <= 0.0:
                raise ConvergenceError("Control loop drove the temperature below zero", iterations)
            logger.debug(
                f"control iteration: stress residual {np.max(np.abs(stress_residual), initial=0.0):.3e}, "
                f"heat residual {heat_residual:.3e}"
            )
        logger.error(f"Control loop did not converge within {self.config.max_iterations} iterations")
        raise ConvergenceError("Mixed control loop did not converge", self.config.max_iterations)

    def _advance(
        self,
        state: DmnState,
        strain_prev: np.ndarray,
        theta_prev: float,
        dt: float,
        program: LoadProgram,
        start: Tuple[np.ndarray, np.ndarray, float],
        end: Tuple[np.ndarray, np.ndarray, float],
        level: int = 0,
    ) -> StepResult:
        try:
            return self._solve_step(state, strain_prev, theta_prev, dt, program, *end)
        except (ConvergenceError, IndefiniteSystemError, np.linalg.LinAlgError) as e:
            if level >= self.config.max_bisections:
                raise ConvergenceError(f"Load step failed after {level} bisections: {e}") from e
            logger.debug(f"Bisecting step of {dt:g} s at level {level + 1}: {e}")
        middle = tuple(0.5 * (np.asarray(a) + np.asarray(b)) for a, b in zip(start, end))
        middle = (middle[0], middle[1], float(middle[2]))
        first = self._advance(state, strain_prev, theta_prev, 0.5 * dt, program, start, middle, level + 1)
        second = self._advance(
            first.state, first.strain, first.theta, 0.5 * dt, program, middle, end, level + 1
        )
        return StepResult(
            state=second.state,
            strain=second.strain,
            stress=second.stress,
            theta=second.theta,
            coupling=0.5 * (first.coupling + second.coupling),
            dissipation=0.5 * (first.dissipation + second.dissipation),
            heat_loss=0.5 * (first.heat_loss + second.heat_loss),
            iterations=first.iterations + second.iterations,
        )

    def run(self, program: LoadProgram) -> Trajectory:
        """
        Raises:
            ConvergenceError: If a step fails even after the allowed bisections.
        """
        trajectory = _empty_trajectory(program, self.heat_capacity)
        theta_targets = (
            program.thermal.theta_K
            if program.thermal.mode == ThermalMode.PRESCRIBED.value
            else np.full(program.steps + 1, program.theta0_K)
        )
        state = self.solver.initial_state()
        strain = np.zeros(6)
        theta = program.initial_theta()
        for step in tqdm(range(program.steps), desc="evaluate", unit="step", disable=not self.progress):
            start = (program.strain[step], program.stress[step], float(theta_targets[step]))
            end = (program.strain[step + 1], program.stress[step + 1], float(theta_targets[step + 1]))
            result = self._advance(state, strain, theta, float(program.dt[step]), program, start, end)
            state, strain, theta = result.state, result.strain, result.theta
            row = step + 1
            trajectory.strain[row] = strain
            trajectory.stress[row] = result.stress
            trajectory.theta[row] = theta
            trajectory.coupling[row] = result.coupling
            trajectory.dissipation[row] = result.dissipation
            trajectory.heat_loss[row] = result.heat_loss
            trajectory.iterations[row] = result.iterations
        return trajectory


def replay_reference(reference: RecursiveLaminateSolver, trajectory: Trajectory) -> Trajectory:
    """
    Run the recursive laminate solver along the strain and temperature history
    of a network trajectory.

    The reference temperature is rebuilt from its own coupling term through
    the same lumped heat balance, so temperature differences expose coupling
    differences.
    """
    state = reference.initial_state()
    replayed = dataclasses.replace(
        trajectory,
        stress=np.zeros_like(trajectory.stress),
        theta=trajectory.theta.copy(),
        coupling=np.zeros_like(trajectory.coupling),
        dissipation=np.zeros_like(trajectory.dissipation),
        iterations=np.zeros_like(trajectory.iterations),
    )
    rebuilt = float(trajectory.theta[0])
    for step, dt in enumerate(trajectory.dt):
        row = step + 1
        output, state = reference.evaluate(state, trajectory.strain[row], float(trajectory.theta[row]), float(dt))
        replayed.stress[row] = output.stress
        replayed.coupling[row] = output.coupling
        replayed.dissipation[row] = output.dissipation
        replayed.iterations[row] = output.evaluations
        if trajectory.thermal_mode != ThermalMode.PRESCRIBED.value:
            loss = trajectory.film_coefficient * (trajectory.theta[row] - trajectory.theta0_K)
            rebuilt += dt * (output.coupling - loss) / trajectory.heat_capacity_mpa
            replayed.theta[row] = rebuilt
    return replayed


def run_program(
    topology: DmnTopology,
    materials: Sequence[GsmMaterial],
    program: LoadProgram,
    config: Optional[DriverConfig] = None,
    progress: bool = False,
) -> Trajectory:
    config = config or DriverConfig()
    solver = DmnSolver(topology, materials, config.solver)
    return ProgramRunner(solver, config, progress).run(program)
