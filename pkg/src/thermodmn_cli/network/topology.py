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
Direct deep material network topology.

A perfect binary tree of depth K. Nodes are stored level-major, deepest level
first and the root last: node (k, i), k = 1..K, i = 1..2^(k-1), sits at flat
index 2^K - 2^k + i - 1. Node (k, i) covers the leaves
[(i-1) 2^(K+1-k), i 2^(K+1-k)); its first child covers the first half.
Leaves with even 0-based index carry phase 1, odd ones phase 2.
"""
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy import sparse

from thermodmn_cli.constants.command_constants import PRUNING_THRESHOLD
from thermodmn_cli.tensor.mandel import check_unit, sym_outer_matrix

WEIGHT_SUM_TOLERANCE = 1e-10


def node_index(depth: int, level: int, position: int) -> int:
    """Flat index of node (level, position), both 1-based."""
    return 2**depth - 2**level + position - 1


def node_location(depth: int, index: int) -> Tuple[int, int]:
    """Inverse of node_index."""
    for level in range(depth, 0, -1):
        offset = 2**depth - 2**level
        if index < offset + 2 ** (level - 1):
            return level, index - offset + 1
    raise IndexError(f"Node index {index} out of range for depth {depth}")


def leaf_range(depth: int, level: int, position: int) -> Tuple[int, int]:
    span = 2 ** (depth + 1 - level)
    return (position - 1) * span, position * span


def leaf_phases(depth: int) -> np.ndarray:
    """Phase id (0 for phase 1, 1 for phase 2) of every leaf."""
    return np.arange(2**depth) % 2


@dataclass(frozen=True)
class WeightTree:
    """
    Weights and volume fractions of every tree level.

    Attributes:
        level_weights (List[np.ndarray]): Entry k-1 holds the 2^(k-1) weights of level k,
            the last entry the 2^K leaf weights.
        node_weights (np.ndarray): Node weights in flat node order.
        first_fraction (np.ndarray): c1 of every node; 0.5 on degenerate nodes.
        degenerate (np.ndarray): Nodes whose weight is below the pruning threshold.
    """

    level_weights: List[np.ndarray]
    node_weights: np.ndarray
    first_fraction: np.ndarray
    degenerate: np.ndarray

    @property
    def second_fraction(self) -> np.ndarray:
        return 1.0 - self.first_fraction


def propagate_weights(weights: np.ndarray) -> WeightTree:
    """
    Pairwise summation of leaf weights up to the root, volume fractions by normalization.

    Raises:
        ValueError: On negative weights, a zero total or a length that is not 2^K.
    """
    weights = np.asarray(weights, dtype=float)
    count = weights.shape[0]
    depth = int(np.log2(count)) if count > 0 else 0
    if depth < 1 or 2**depth != count:
        raise ValueError(f"Expected 2^K leaf weights with K >= 1, got {count}")
    if np.any(weights < 0.0):
        raise ValueError("Leaf weights must be non-negative")
    if np.sum(weights) <= 0.0:
        raise ValueError("Leaf weights sum to zero")

    levels = [weights]
    for _ in range(depth):
        levels.append(levels[-1][0::2] + levels[-1][1::2])
    # levels[j] belongs to level K+1-j; reverse to root-first
    levels = levels[::-1]

    node_weights = np.concatenate([levels[k - 1] for k in range(depth, 0, -1)])
    children = np.concatenate([levels[k] for k in range(depth, 0, -1)])
    first_child = children[0::2]
    degenerate = node_weights < PRUNING_THRESHOLD
    safe = np.where(degenerate, 1.0, node_weights)
    first_fraction = np.where(degenerate, 0.5, first_child / safe)
    return WeightTree(
        level_weights=levels,
        node_weights=node_weights,
        first_fraction=first_fraction,
        degenerate=degenerate,
    )


def canonical_direction(directions: np.ndarray) -> np.ndarray:
    """Flip n to -n where needed so that the first nonzero component is positive."""
    directions = np.array(directions, dtype=float)
    for row in directions.reshape(-1, 3):
        nonzero = np.flatnonzero(np.abs(row) > 0.0)
        if nonzero.size and row[nonzero[0]] < 0.0:
            row *= -1.0
    return directions


@dataclass(frozen=True)
class DmnTopology:
    depth: int
    directions: np.ndarray
    weights: np.ndarray
    tree: WeightTree = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError(f"Depth must be at least 1, got {self.depth}")
        directions = np.asarray(self.directions, dtype=float).reshape(-1, 3)
        if directions.shape[0] != self.node_count:
            raise ValueError(
                f"Depth {self.depth} needs {self.node_count} directions, got {directions.shape[0]}"
            )
        check_unit(directions)
        directions = directions / np.linalg.norm(directions, axis=-1, keepdims=True)
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (self.leaf_count,):
            raise ValueError(f"Depth {self.depth} needs {self.leaf_count} weights")
        if abs(np.sum(weights) - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise ValueError(f"Leaf weights sum to {np.sum(weights)}, expected 1")
        object.__setattr__(self, "directions", directions)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "tree", propagate_weights(weights))

    @classmethod
    def random(cls, depth: int, rng: np.random.Generator) -> "DmnTopology":
        """Directions uniform on the sphere, weights uniform on [0, 1] rescaled to unit sum."""
        directions = rng.standard_normal((2**depth - 1, 3))
        directions /= np.linalg.norm(directions, axis=-1, keepdims=True)
        weights = rng.uniform(0.0, 1.0, 2**depth)
        return cls(depth, directions, weights / np.sum(weights))

    @classmethod
    def laminate(cls, direction: np.ndarray, first_fraction: float) -> "DmnTopology":
        """Depth-1 network, a single two-phase laminate."""
        return cls(1, np.asarray(direction, dtype=float)[None], np.array([first_fraction, 1.0 - first_fraction]))

    @property
    def node_count(self) -> int:
        return 2**self.depth - 1

    @property
    def leaf_count(self) -> int:
        return 2**self.depth

    @property
    def leaf_phases(self) -> np.ndarray:
        return leaf_phases(self.depth)

    @property
    def active_leaves(self) -> np.ndarray:
        return np.flatnonzero(self.weights >= PRUNING_THRESHOLD)

    @property
    def active_nodes(self) -> np.ndarray:
        """Nodes whose children both carry weight; only they own jump unknowns."""
        children = np.concatenate(
            [self.tree.level_weights[k] for k in range(self.depth, 0, -1)]
        )
        return np.flatnonzero(
            (children[0::2] >= PRUNING_THRESHOLD) & (children[1::2] >= PRUNING_THRESHOLD)
        )

    def phase_fractions(self) -> Tuple[float, float]:
        phases = self.leaf_phases
        return float(np.sum(self.weights[phases == 0])), float(np.sum(self.weights[phases == 1]))

    def canonical_directions(self) -> np.ndarray:
        return canonical_direction(self.directions)


@dataclass(frozen=True)
class GradientOperator:
    """
    Sparse map from jumps a (one 3-vector per active node) to phase-strain
    perturbations (one Mandel vector per active leaf), A a = ε⃗ - ε̄.
    """

    matrix: sparse.csr_matrix
    leaves: np.ndarray
    nodes: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def apply(self, jumps: np.ndarray) -> np.ndarray:
        return (self.matrix @ np.asarray(jumps).reshape(-1)).reshape(-1, 6)

    def adjoint(self, stresses: np.ndarray) -> np.ndarray:
        return (self.matrix.T @ np.asarray(stresses).reshape(-1)).reshape(-1, 3)


def build_gradient_operator(topology: DmnTopology, prune: bool = True) -> GradientOperator:
    """
    Assemble A node by node: leaves of the first child get +c2 sym(a ⊗ n),
    leaves of the second child -c1 sym(a ⊗ n).

    Args:
        topology (DmnTopology): Network.
        prune (bool): Drop zero-weight leaves and nodes without two weighted children.

    Returns:
        GradientOperator: Rows ordered like `leaves`, column blocks like `nodes`.
    """
    depth = topology.depth
    if prune:
        leaves, nodes = topology.active_leaves, topology.active_nodes
    else:
        leaves, nodes = np.arange(topology.leaf_count), np.arange(topology.node_count)
    row_of_leaf = np.full(topology.leaf_count, -1)
    row_of_leaf[leaves] = np.arange(leaves.size)
    blocks = sym_outer_matrix(topology.directions[nodes])
    first = topology.tree.first_fraction[nodes]

    rows, cols, values = [], [], []
    local_rows, local_cols = np.meshgrid(np.arange(6), np.arange(3), indexing="ij")
    for column, (node, block) in enumerate(zip(nodes, blocks)):
        level, position = node_location(depth, int(node))
        start, stop = leaf_range(depth, level, position)
        middle = (start + stop) // 2
        for leaf_start, leaf_stop, coefficient in (
            (start, middle, 1.0 - first[column]),
            (middle, stop, -first[column]),
        ):
            targets = row_of_leaf[leaf_start:leaf_stop]
            targets = targets[targets >= 0]
            for target in targets:
                rows.append(6 * target + local_rows.ravel())
                cols.append(3 * column + local_cols.ravel())
                values.append(coefficient * block.ravel())
    shape = (6 * leaves.size, 3 * nodes.size)
    if not rows:
        return GradientOperator(sparse.csr_matrix(shape), leaves, nodes)
    matrix = sparse.coo_matrix(
        (np.concatenate(values), (np.concatenate(rows), np.concatenate(cols))), shape=shape
    ).tocsr()
    return GradientOperator(matrix, leaves, nodes)
