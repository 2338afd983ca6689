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
Two-phase laminate homogenization and the bottom-up stiffness propagation
of a direct deep material network.

The kernels are written against the dual-number helpers, so the same code
yields plain stiffnesses for evaluation and forward-mode derivatives with
respect to lamination directions and leaf weights for training.
"""
from typing import Optional, Tuple

import numpy as np

from thermodmn_cli.constants.command_constants import PRUNING_THRESHOLD
from thermodmn_cli.network.topology import DmnTopology, leaf_phases, node_index
from thermodmn_cli.tensor import dual
from thermodmn_cli.tensor.dual import ArrayOrDual, Dual
from thermodmn_cli.tensor.mandel import IDENTITY4, SQRT2, check_symmetric, check_unit

INV_SQRT2 = float(1.0 / SQRT2)


def sym_outer_blocks(n: ArrayOrDual) -> ArrayOrDual:
    """B(n) of shape (..., 6, 3) for plain or dual normals."""
    zero = 0.0 * n[..., 0]
    rows = [
        [n[..., 0], zero, zero],
        [zero, n[..., 1], zero],
        [zero, zero, n[..., 2]],
        [INV_SQRT2 * n[..., 1], INV_SQRT2 * n[..., 0], zero],
        [INV_SQRT2 * n[..., 2], zero, INV_SQRT2 * n[..., 0]],
        [zero, INV_SQRT2 * n[..., 2], INV_SQRT2 * n[..., 1]],
    ]
    return dual.stack([dual.stack(row, axis=-1) for row in rows], axis=-2)


def projector(n: ArrayOrDual) -> ArrayOrDual:
    """
    P(n) = B (BᵀB)⁻¹ Bᵀ for unit n, where (BᵀB)⁻¹ = 2·1 - n ⊗ n.

    Agrees with the Cartesian formula of `mandel.lamination_projector` and
    propagates derivatives of n.
    """
    blocks = sym_outer_blocks(n)
    metric = 2.0 * np.eye(3) - dual.einsum("...a,...b->...ab", n, n)
    return dual.einsum("...ia,...ab,...jb->...ij", blocks, metric, blocks)


def default_lambda(stiffness_1: np.ndarray, stiffness_2: np.ndarray) -> np.ndarray:
    """Twice the largest eigenvalue of both phases, per batch entry."""
    top_1 = np.linalg.eigvalsh(dual.value_of(stiffness_1))[..., -1]
    top_2 = np.linalg.eigvalsh(dual.value_of(stiffness_2))[..., -1]
    return 2.0 * np.maximum(top_1, top_2)


def laminate_kernel(
    stiffness_1: ArrayOrDual,
    stiffness_2: ArrayOrDual,
    proj: ArrayOrDual,
    fraction_1: ArrayOrDual,
    lam: np.ndarray,
) -> ArrayOrDual:
    """
    Solve (P + λ[C - λ𝕀]⁻¹)⁻¹ = c1 (P + λ[C1 - λ𝕀]⁻¹)⁻¹ + c2 (P + λ[C2 - λ𝕀]⁻¹)⁻¹ for C.

    λ enters as a constant; every other argument may be dual.
    """
    scale = lam[..., None, None]
    shifted = scale * IDENTITY4

    def compliance_like(stiffness):
        return dual.inv(proj + scale * dual.inv(stiffness - shifted))

    fraction_1 = fraction_1[..., None, None]
    mixed = fraction_1 * compliance_like(stiffness_1) + (1.0 - fraction_1) * compliance_like(stiffness_2)
    effective = shifted + scale * dual.inv(dual.inv(mixed) - proj)
    return 0.5 * (effective + dual.einsum("...ij->...ji", effective))


def laminate_stiffness(
    stiffness_1: np.ndarray,
    stiffness_2: np.ndarray,
    n: np.ndarray,
    fraction_1,
    lam: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Effective stiffness of a rank-one laminate with normal n.

    Args:
        stiffness_1 (np.ndarray): Phase-1 stiffness (..., 6, 6).
        stiffness_2 (np.ndarray): Phase-2 stiffness (..., 6, 6).
        n (np.ndarray): Unit normal (..., 3).
        fraction_1: Volume fraction c1 of phase 1 in [0, 1].
        lam: Shift λ; defaults to twice the largest phase eigenvalue.

    Returns:
        np.ndarray: Symmetric effective stiffness.

    Raises:
        ValueError: On non-unit n, c1 outside [0, 1], asymmetric input or when
            λ hits an eigenvalue.
    """
    stiffness_1 = check_symmetric(stiffness_1)
    stiffness_2 = check_symmetric(stiffness_2)
    fraction_1 = np.asarray(fraction_1, dtype=float)
    if np.any(fraction_1 < 0.0) or np.any(fraction_1 > 1.0):
        raise ValueError("Volume fraction must lie in [0, 1]")
    proj = projector(check_unit(n))
    if lam is None:
        lam = default_lambda(stiffness_1, stiffness_2)
    lam = np.asarray(lam, dtype=float)
    try:
        return laminate_kernel(stiffness_1, stiffness_2, proj, fraction_1, lam)
    except np.linalg.LinAlgError as e:
        raise ValueError(f"Singular laminate system, lambda collides with an eigenvalue: {e}") from e


def leaf_stiffnesses(depth: int, stiffness_1: np.ndarray, stiffness_2: np.ndarray) -> np.ndarray:
    """Alternating phase assignment at the leaf level, shape (..., 2^K, 6, 6)."""
    phases = leaf_phases(depth)
    stiffness_1 = np.asarray(stiffness_1, dtype=float)[..., None, :, :]
    stiffness_2 = np.asarray(stiffness_2, dtype=float)[..., None, :, :]
    return np.where(phases[:, None, None] == 0, stiffness_1, stiffness_2)


def homogenize_linear(topology: DmnTopology, stiffness_1: np.ndarray, stiffness_2: np.ndarray) -> np.ndarray:
    """
    Linear homogenization function of the network.

    Args:
        topology (DmnTopology): Network.
        stiffness_1 (np.ndarray): Phase-1 stiffness, optionally with leading sample axes.
        stiffness_2 (np.ndarray): Phase-2 stiffness, same leading axes.

    Returns:
        np.ndarray: Root stiffness.
    """
    depth = topology.depth
    current = leaf_stiffnesses(depth, stiffness_1, stiffness_2)
    children_weights = topology.tree.level_weights[depth]
    for level in range(depth, 0, -1):
        start = node_index(depth, level, 1)
        nodes = slice(start, start + 2 ** (level - 1))
        first, second = current[..., 0::2, :, :], current[..., 1::2, :, :]
        lam = default_lambda(first, second)
        try:
            merged = laminate_kernel(
                first,
                second,
                projector(topology.directions[nodes]),
                topology.tree.first_fraction[nodes],
                lam,
            )
        except np.linalg.LinAlgError as e:
            raise ValueError(f"Singular laminate system on level {level}: {e}") from e
        merged = _pass_through(merged, first, second, children_weights)
        current = merged
        children_weights = topology.tree.level_weights[level - 1]
    return current[..., 0, :, :]


def _pass_through(merged, first, second, children_weights):
    # a node with a single weighted child takes that child's stiffness unchanged
    first_empty = children_weights[0::2] < PRUNING_THRESHOLD
    second_empty = children_weights[1::2] < PRUNING_THRESHOLD
    merged = dual.where((first_empty & ~second_empty)[:, None, None], second, merged)
    return dual.where((second_empty & ~first_empty)[:, None, None], first, merged)


def _embed(x: Dual, offset: int, size: int) -> Dual:
    grad = np.zeros(x.value.shape + (size,))
    grad[..., offset : offset + x.size] = x.grad
    return Dual(x.value, grad)


def parameter_layout(depth: int) -> np.ndarray:
    """
    Global parameter index of every local derivative slot at the root.

    Global parameters are the 2^K raw weights v followed by the 3(2^K - 1)
    unconstrained direction coordinates, node-major. A node's local layout is
    its first child's, then its second child's, then its own three direction
    coordinates.
    """
    leaves = 2**depth
    layouts = [np.array([leaf]) for leaf in range(leaves)]
    for level in range(depth, 0, -1):
        merged = []
        for position in range(1, 2 ** (level - 1) + 1):
            own = leaves + 3 * node_index(depth, level, position) + np.arange(3)
            merged.append(np.concatenate([layouts[2 * position - 2], layouts[2 * position - 1], own]))
        layouts = merged
    return layouts[0]


def homogenize_linear_dual(
    depth: int,
    raw_directions: np.ndarray,
    raw_weights: np.ndarray,
    stiffness_1: np.ndarray,
    stiffness_2: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Root stiffness of a network given unconstrained parameters, with its gradient.

    Directions enter normalized, n = u / |u|, and leaf weights as ⟨v⟩₊. The
    gradient is propagated level by level with seeds restricted to each node's
    subtree, so the derivative arrays stay proportional to 2^K per level.

    Args:
        depth (int): Tree depth K.
        raw_directions (np.ndarray): Unconstrained directions u, shape (2^K - 1, 3).
        raw_weights (np.ndarray): Raw weights v, shape (2^K,).
        stiffness_1 (np.ndarray): Phase-1 stiffnesses (S, 6, 6).
        stiffness_2 (np.ndarray): Phase-2 stiffnesses (S, 6, 6).

    Returns:
        Tuple[np.ndarray, np.ndarray, np.ndarray]: Root stiffness (S, 6, 6), its derivative
        (S, 6, 6, P) in root-local slot order, and the global index of every slot.
    """
    raw_directions = np.asarray(raw_directions, dtype=float)
    raw_weights = np.asarray(raw_weights, dtype=float)
    lengths = np.linalg.norm(raw_directions, axis=-1)
    if np.any(lengths <= 0.0):
        raise ValueError("Direction parameters must be nonzero")
    unit = raw_directions / lengths[:, None]
    # dn/du = (1 - n ⊗ n) / |u|
    direction_jacobian = (np.eye(3) - np.einsum("na,nb->nab", unit, unit)) / lengths[:, None, None]

    positive = raw_weights > 0.0
    weights = Dual(np.where(positive, raw_weights, 0.0), positive.astype(float)[:, None])
    leaves = leaf_stiffnesses(depth, stiffness_1, stiffness_2)
    current = Dual(leaves, np.zeros(leaves.shape + (1,)))

    for level in range(depth, 0, -1):
        child_size = current.size
        size = 2 * child_size + 3
        start = node_index(depth, level, 1)
        nodes = slice(start, start + 2 ** (level - 1))
        first = _embed(current[..., 0::2, :, :], 0, size)
        second = _embed(current[..., 1::2, :, :], child_size, size)
        weight_first = _embed(weights[0::2], 0, size)
        weight_second = _embed(weights[1::2], child_size, size)
        direction_grad = np.zeros(unit[nodes].shape + (size,))
        direction_grad[..., 2 * child_size :] = direction_jacobian[nodes]
        direction = Dual(unit[nodes], direction_grad)

        total_weight = weight_first + weight_second
        empty = dual.value_of(total_weight) < PRUNING_THRESHOLD
        fraction = dual.where(
            empty, 0.5 + 0.0 * total_weight, weight_first / dual.where(empty, 1.0 + 0.0 * total_weight, total_weight)
        )
        merged = laminate_kernel(
            first, second, projector(direction), fraction, default_lambda(first, second)
        )
        current = _pass_through(
            merged,
            first,
            second,
            np.stack([dual.value_of(weight_first), dual.value_of(weight_second)], axis=-1).reshape(-1),
        )
        weights = total_weight
    root = current[..., 0, :, :]
    return root.value, root.grad, parameter_layout(depth)
