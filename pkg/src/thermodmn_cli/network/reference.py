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
Recursive-laminate reference solver.

Rebuilds the phase strains top-down through the tree, one laminate at a time,
and asks a generic trust-region least-squares solver for jumps that equalize
the tractions of the two averaged child stresses at every active node. It
shares no assembly code with the network solver and serves as its
independent check.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares

from thermodmn_cli.exceptions import ConvergenceError
from thermodmn_cli.materials.gsm import GsmMaterial, MaterialState
from thermodmn_cli.network.topology import DmnTopology, leaf_range, node_index, node_location
from thermodmn_cli.tensor.mandel import sym_outer, sym_outer_matrix
from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)

REFERENCE_TOLERANCE = 1e-15


@dataclass(frozen=True)
class ReferenceState:
    material_states: Tuple[MaterialState, MaterialState]
    jumps: np.ndarray
    leaf_strains: np.ndarray


@dataclass(frozen=True)
class ReferenceOutput:
    stress: np.ndarray
    coupling: float
    dissipation: float
    residual: float
    evaluations: int


class RecursiveLaminateSolver:
    """
    Args:
        topology (DmnTopology): Network to reproduce.
        materials (Sequence[GsmMaterial]): Laws of phase 1 and phase 2.
    """

    def __init__(self, topology: DmnTopology, materials: Sequence[GsmMaterial]):
        self.topology = topology
        self.materials = tuple(materials)
        self.leaves = topology.active_leaves
        self.nodes = topology.active_nodes
        self.weights = topology.weights
        phases = topology.leaf_phases[self.leaves]
        self.positions = tuple(np.flatnonzero(phases == phase) for phase in (0, 1))

    def initial_state(self) -> ReferenceState:
        return ReferenceState(
            material_states=tuple(
                material.initial_state(positions.size)
                for material, positions in zip(self.materials, self.positions)
            ),
            jumps=np.zeros((self.nodes.size, 3)),
            leaf_strains=np.zeros((self.leaves.size, 6)),
        )

    def leaf_strains(self, macro_strain: np.ndarray, jumps: np.ndarray) -> np.ndarray:
        """Strains of all 2^K leaves, laminate by laminate from the root down."""
        depth = self.topology.depth
        fractions = self.topology.tree.first_fraction
        jump_of_node = dict(zip(self.nodes.tolist(), np.asarray(jumps).reshape(-1, 3)))
        level_strains = np.asarray(macro_strain, dtype=float)[None, :]
        for level in range(1, depth + 1):
            children = np.repeat(level_strains, 2, axis=0)
            for position in range(1, 2 ** (level - 1) + 1):
                node = node_index(depth, level, position)
                if node not in jump_of_node:
                    continue
                jump = sym_outer(jump_of_node[node], self.topology.directions[node])
                children[2 * position - 2] += (1.0 - fractions[node]) * jump
                children[2 * position - 1] -= fractions[node] * jump
            level_strains = children
        return level_strains

    def _stresses(self, strains, theta, state, dt) -> np.ndarray:
        stresses = np.zeros((self.topology.leaf_count, 6))
        active = strains[self.leaves]
        for material, positions, material_state in zip(
            self.materials, self.positions, state.material_states
        ):
            if positions.size:
                stresses[self.leaves[positions]], _ = material.stress_update(
                    active[positions], theta, material_state, dt
                )
        return stresses

    def traction_jumps(self, stresses: np.ndarray) -> np.ndarray:
        """(σ̄_first - σ̄_second) n for every active node, σ̄ averaged over each child subtree."""
        depth = self.topology.depth
        weighted = self.weights[:, None] * stresses
        residual = np.zeros((self.nodes.size, 3))
        for row, node in enumerate(self.nodes):
            start, stop = leaf_range(depth, *node_location(depth, int(node)))
            middle = (start + stop) // 2
            first = np.sum(weighted[start:middle], axis=0) / np.sum(self.weights[start:middle])
            second = np.sum(weighted[middle:stop], axis=0) / np.sum(self.weights[middle:stop])
            residual[row] = sym_outer_matrix(self.topology.directions[node]).T @ (first - second)
        return residual

    def evaluate(
        self,
        state: ReferenceState,
        macro_strain: np.ndarray,
        theta: float,
        dt: float,
    ) -> Tuple[ReferenceOutput, ReferenceState]:
        """
        Raises:
            ConvergenceError: If the least-squares solve reports failure.
        """
        evaluations = [0]

        def residual(flat_jumps):
            evaluations[0] += 1
            strains = self.leaf_strains(macro_strain, flat_jumps)
            return self.traction_jumps(self._stresses(strains, theta, state, dt)).reshape(-1)

        jumps = state.jumps.reshape(-1)
        final_residual = 0.0
        if jumps.size:
            result = least_squares(
                residual,
                jumps,
                method="trf",
                jac="3-point",
                xtol=REFERENCE_TOLERANCE,
                ftol=REFERENCE_TOLERANCE,
                gtol=REFERENCE_TOLERANCE,
            )
            if result.status < 0:
                logger.error(f"Reference laminate solve failed: {result.message}")
                raise ConvergenceError(
                    f"Reference laminate solve failed: {result.message}",
                    iterations=evaluations[0],
                    residuals=[float(np.linalg.norm(result.fun))],
                )
            if result.status == 0:
                logger.warning(
                    f"Reference laminate solve hit its evaluation budget, residual {np.linalg.norm(result.fun):.3e}"
                )
            jumps = result.x
            final_residual = float(np.linalg.norm(result.fun))

        strains = self.leaf_strains(macro_strain, jumps)[self.leaves]
        stress = np.zeros(6)
        coupling = 0.0
        dissipation = 0.0
        new_states = []
        weights = self.weights[self.leaves]
        for material, positions, material_state in zip(
            self.materials, self.positions, state.material_states
        ):
            if not positions.size:
                new_states.append(material_state)
                continue
            response = material.update(
                strains[positions], theta, material_state, dt, state.leaf_strains[positions]
            )
            stress += weights[positions] @ response.stress
            coupling += float(weights[positions] @ response.coupling)
            dissipation += float(weights[positions] @ response.dissipation)
            new_states.append(response.state)
        output = ReferenceOutput(stress, coupling, dissipation, final_residual, evaluations[0])
        return output, ReferenceState(tuple(new_states), jumps.reshape(-1, 3), strains)
