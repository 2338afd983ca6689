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
Symmetric second- and fourth-order tensors in orthonormal Mandel coordinates.

Component ordering is (11, 22, 33, 12, 13, 23). Off-diagonal components carry
a factor sqrt(2), so the 6-vector dot product equals the double contraction
and 6x6 matrices act on 6-vectors like fourth-order tensors act on Sym(3).
All functions accept leading batch dimensions.
"""
from typing import Tuple

import numpy as np

SymTensor = np.ndarray
StiffnessMatrix = np.ndarray
UnitVector3 = np.ndarray

SQRT2 = np.sqrt(2.0)
MANDEL_INDICES = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))
MANDEL_FACTORS = np.array([1.0, 1.0, 1.0, SQRT2, SQRT2, SQRT2])
IDENTITY2 = np.array([1.0, 1.0, 1.0, 0.0, 0.0, 0.0])
IDENTITY4 = np.eye(6)

UNIT_NORM_TOLERANCE = 1e-8
SYMMETRY_TOLERANCE = 1e-10

_ROWS = np.array([i for i, _ in MANDEL_INDICES])
_COLS = np.array([j for _, j in MANDEL_INDICES])


def to_mandel(tensor: np.ndarray) -> SymTensor:
    """
    Convert (..., 3, 3) symmetric matrices to (..., 6) Mandel vectors.

    Args:
        tensor (np.ndarray): Symmetric 3x3 matrices; only the symmetric part is kept.

    Returns:
        np.ndarray: Mandel 6-vectors.
    """
    tensor = np.asarray(tensor, dtype=float)
    sym = 0.5 * (tensor + np.swapaxes(tensor, -1, -2))
    return sym[..., _ROWS, _COLS] * MANDEL_FACTORS


def from_mandel(vector: SymTensor) -> np.ndarray:
    """Convert (..., 6) Mandel vectors to (..., 3, 3) symmetric matrices."""
    vector = np.asarray(vector, dtype=float)
    values = vector / MANDEL_FACTORS
    tensor = np.zeros(vector.shape[:-1] + (3, 3))
    tensor[..., _ROWS, _COLS] = values
    tensor[..., _COLS, _ROWS] = values
    return tensor


def tensor4_to_mandel(tensor: np.ndarray) -> StiffnessMatrix:
    """Convert (..., 3, 3, 3, 3) tensors with minor symmetries to (..., 6, 6) matrices."""
    tensor = np.asarray(tensor, dtype=float)
    block = tensor[..., _ROWS[:, None], _COLS[:, None], _ROWS[None, :], _COLS[None, :]]
    return block * np.outer(MANDEL_FACTORS, MANDEL_FACTORS)


def mandel_basis() -> np.ndarray:
    """Orthonormal basis of Sym(3) as a (6, 3, 3) array, matching the component order."""
    return from_mandel(np.eye(6))


def double_contraction(a: SymTensor, b: SymTensor) -> np.ndarray:
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


def trace(vector: SymTensor) -> np.ndarray:
    vector = np.asarray(vector)
    return vector[..., 0] + vector[..., 1] + vector[..., 2]


def spherical(vector: SymTensor) -> SymTensor:
    return trace(vector)[..., None] / 3.0 * IDENTITY2


def deviator(vector: SymTensor) -> SymTensor:
    return np.asarray(vector) - spherical(vector)


def frobenius_norm(vector: SymTensor) -> np.ndarray:
    return np.linalg.norm(vector, axis=-1)


def sym_outer_matrix(n: np.ndarray) -> np.ndarray:
    """
    Matrix B(n) of shape (..., 6, 3) such that B(n) @ a is the Mandel vector of sym(a ⊗ n).
    """
    n = np.asarray(n, dtype=float)
    out = np.zeros(n.shape[:-1] + (6, 3))
    inv_sqrt2 = 1.0 / SQRT2
    out[..., 0, 0] = n[..., 0]
    out[..., 1, 1] = n[..., 1]
    out[..., 2, 2] = n[..., 2]
    out[..., 3, 0] = n[..., 1] * inv_sqrt2
    out[..., 3, 1] = n[..., 0] * inv_sqrt2
    out[..., 4, 0] = n[..., 2] * inv_sqrt2
    out[..., 4, 2] = n[..., 0] * inv_sqrt2
    out[..., 5, 1] = n[..., 2] * inv_sqrt2
    out[..., 5, 2] = n[..., 1] * inv_sqrt2
    return out


def sym_outer(a: np.ndarray, n: np.ndarray) -> SymTensor:
    """Mandel vector of sym(a ⊗ n)."""
    return np.einsum("...ij,...j->...i", sym_outer_matrix(n), np.asarray(a, dtype=float))


def isotropic_projectors() -> Tuple[StiffnessMatrix, StiffnessMatrix]:
    """
    Projectors onto the spherical and deviatoric subspaces of Sym(3).

    Returns:
        Tuple[np.ndarray, np.ndarray]: P1 = (1/3) 1 ⊗ 1 and P2 = I - P1.
    """
    p1 = np.outer(IDENTITY2, IDENTITY2) / 3.0
    p2 = IDENTITY4 - p1
    return p1, p2


def check_unit(n: np.ndarray) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    if n.shape[-1] != 3:
        raise ValueError(f"Expected 3-vectors, got shape {n.shape}")
    deviation = np.max(np.abs(np.linalg.norm(n, axis=-1) - 1.0))
    if deviation > UNIT_NORM_TOLERANCE:
        raise ValueError(f"Lamination direction is not a unit vector (norm deviation {deviation:.3e})")
    return n


def lamination_projector(n: UnitVector3) -> StiffnessMatrix:
    """
    Projector P(n) onto strains of the form sym(a ⊗ n).

    Assembled from the Cartesian formula
    P_mnop = 1/2 (n_m δ_no n_p + n_n δ_mo n_p + n_m δ_np n_o + n_n δ_mp n_o) - n_m n_n n_o n_p.

    Args:
        n (np.ndarray): Unit normal(s) of shape (..., 3).

    Returns:
        np.ndarray: Matrices of shape (..., 6, 6).

    Raises:
        ValueError: If a normal deviates from unit length by more than 1e-8.
    """
    return projector_from_unit(check_unit(n))


def projector_from_unit(n: np.ndarray) -> StiffnessMatrix:
    # unchecked variant, also used for the Fourier-space compatibility projection
    delta = np.eye(3)
    nn = np.einsum("...i,...j->...ij", n, n)
    tensor = 0.5 * (
        np.einsum("...mp,no->...mnop", nn, delta)
        + np.einsum("...np,mo->...mnop", nn, delta)
        + np.einsum("...mo,np->...mnop", nn, delta)
        + np.einsum("...no,mp->...mnop", nn, delta)
    ) - np.einsum("...mn,...op->...mnop", nn, nn)
    return tensor4_to_mandel(tensor)


def bulk_shear_from_young(young: float, poisson: float) -> Tuple[float, float]:
    """Bulk and shear modulus from Young's modulus and Poisson's ratio."""
    if young <= 0.0 or not -1.0 < poisson < 0.5:
        raise ValueError(f"Inadmissible elastic constants E={young}, nu={poisson}")
    return young / (3.0 * (1.0 - 2.0 * poisson)), young / (2.0 * (1.0 + poisson))


def isotropic_stiffness(bulk, shear) -> StiffnessMatrix:
    """
    Isotropic stiffness 3K P1 + 2G P2.

    Args:
        bulk: Bulk modulus (scalar or array for a batch).
        shear: Shear modulus (scalar or array for a batch).

    Returns:
        np.ndarray: Stiffness matrices of shape (..., 6, 6).
    """
    bulk = np.asarray(bulk, dtype=float)
    shear = np.asarray(shear, dtype=float)
    if np.any(bulk <= 0.0) or np.any(shear <= 0.0):
        raise ValueError("Bulk and shear moduli must be positive")
    p1, p2 = isotropic_projectors()
    return 3.0 * bulk[..., None, None] * p1 + 2.0 * shear[..., None, None] * p2


def check_symmetric(matrix: StiffnessMatrix) -> StiffnessMatrix:
    matrix = np.asarray(matrix, dtype=float)
    skew = np.linalg.norm(matrix - np.swapaxes(matrix, -1, -2), axis=(-2, -1))
    scale = np.linalg.norm(matrix, axis=(-2, -1))
    if np.any(skew > SYMMETRY_TOLERANCE * np.maximum(scale, np.finfo(float).tiny)):
        raise ValueError("Matrix is not symmetric")
    return matrix


def eig_sym(matrix: StiffnessMatrix, vectors: bool = False):
    """
    Ascending spectrum of symmetric 6x6 matrices.

    Args:
        matrix (np.ndarray): Symmetric matrices of shape (..., 6, 6).
        vectors (bool): Also return the orthonormal eigenvectors as columns.

    Returns:
        np.ndarray or Tuple[np.ndarray, np.ndarray]: Eigenvalues, and eigenvectors if requested.

    Raises:
        ValueError: If ‖M - Mᵀ‖ exceeds 1e-10 ‖M‖.
    """
    matrix = check_symmetric(matrix)
    sym = 0.5 * (matrix + np.swapaxes(matrix, -1, -2))
    if vectors:
        return np.linalg.eigh(sym)
    return np.linalg.eigvalsh(sym)


def rotation_mandel(rotation: np.ndarray) -> np.ndarray:
    """
    Orthogonal 6x6 matrix Q with Q @ mandel(T) = mandel(R T Rᵀ) for a rotation R.
    """
    basis = mandel_basis()
    rotated = np.einsum("ij,bjk,lk->bil", rotation, basis, rotation)
    return to_mandel(rotated).T


def rotate_stiffness(stiffness: StiffnessMatrix, rotation: np.ndarray) -> StiffnessMatrix:
    q = rotation_mandel(rotation)
    return q @ stiffness @ q.T


def rotation_about_axis(axis: np.ndarray, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    cross = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    return np.eye(3) + np.sin(angle) * cross + (1.0 - np.cos(angle)) * cross @ cross
