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
Linear elastic FFT homogenization on periodic voxel grids.

Small-strain variant of the projection scheme: the strain fluctuation is
the unknown, and the compatibility projection G is independent of any
reference medium. The system G[C : (E + e)] = 0 is solved with conjugate
gradients, once per Mandel unit macro strain.
"""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import scipy.sparse.linalg as sp

from thermodmn_cli.exceptions import ConvergenceError
from thermodmn_cli.fft.voxels import VoxelGrid
from thermodmn_cli.tensor.mandel import eig_sym, sym_outer_matrix
from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)

FFT_AXES = (1, 2, 3)


@dataclass
class FftSolveReport:
    load_case: int
    iterations: int
    residual: float
    column: np.ndarray


class _IterationCounter:
    def __init__(self):
        self.count = 0

    def __call__(self, _):
        self.count += 1


def compatibility_projection(dims, lengths) -> np.ndarray:
    """
    Fourier multiplier of the projection onto compatible zero-mean strains,
    B(ξ) (2·1 - ξ ⊗ ξ) B(ξ)ᵀ for the unit wave direction ξ, zero at ξ = 0
    and at Nyquist bins that are not aligned with a coordinate axis.

    Returns:
        np.ndarray: Multipliers of shape (6, 6, N1, N2, N3 // 2 + 1).
    """
    frequencies = [
        np.fft.fftfreq(dims[0], lengths[0] / dims[0]),
        np.fft.fftfreq(dims[1], lengths[1] / dims[1]),
        np.fft.rfftfreq(dims[2], lengths[2] / dims[2]),
    ]
    waves = np.stack(np.meshgrid(*frequencies, indexing="ij"), axis=-1)
    norms = np.linalg.norm(waves, axis=-1, keepdims=True)
    unit = np.divide(waves, norms, out=np.zeros_like(waves), where=norms > 0.0)
    blocks = sym_outer_matrix(unit)
    metric = 2.0 * np.eye(3) - np.einsum("...a,...b->...ab", unit, unit)
    multiplier = np.einsum("...ia,...ab,...jb->...ij", blocks, metric, blocks)

    # Nyquist bins mixed with other frequencies have no sign-consistent ξ on even grids
    nyquist = np.zeros(waves.shape[:-1], dtype=bool)
    for axis, count in enumerate(dims):
        if count % 2 == 0:
            index = [slice(None)] * 3
            index[axis] = count // 2
            nyquist[tuple(index)] = True
    mixed = nyquist & (np.count_nonzero(waves, axis=-1) > 1)
    multiplier[mixed] = 0.0
    return np.moveaxis(multiplier, (-2, -1), (0, 1))


class FftHomogenizer:
    """
    Effective stiffness of a two-phase voxel grid.

    Args:
        grid (VoxelGrid): Microstructure, phase ids 0 and 1.
        tolerance (float): Equilibrium residual |G[σ]|_rms / |σ̄| to reach.
        max_iterations (int): Budget of residual evaluations per load case.
    """

    def __init__(self, grid: VoxelGrid, tolerance: float = 1e-10, max_iterations: int = 1000):
        self.grid = grid
        self.tolerance = tolerance
        self.max_iterations = max_iterations
        self.dims = grid.dims
        self.shape = (6,) + self.dims
        self.second = (grid.phases == 1)[None]
        self.projection = compatibility_projection(self.dims, grid.lengths_um)

    def project(self, field: np.ndarray) -> np.ndarray:
        transformed = np.fft.rfftn(field, axes=FFT_AXES)
        projected = np.einsum("ij...,j...->i...", self.projection, transformed)
        return np.fft.irfftn(projected, s=self.dims, axes=FFT_AXES)

    def stress(self, strain: np.ndarray, stiffness_0: np.ndarray, stiffness_1: np.ndarray) -> np.ndarray:
        first = np.einsum("ij,j...->i...", stiffness_0, strain)
        second = np.einsum("ij,j...->i...", stiffness_1, strain)
        return np.where(self.second, second, first)

    def equilibrium_residual(self, stress: np.ndarray) -> float:
        mean = np.linalg.norm(stress.mean(axis=FFT_AXES))
        rms = np.sqrt(np.mean(np.sum(self.project(stress) ** 2, axis=0)))
        return float(rms / max(mean, np.finfo(float).tiny))

    def solve(
        self, stiffness_0: np.ndarray, stiffness_1: np.ndarray, macro_strain: np.ndarray, load_case: int = 0
    ) -> Tuple[np.ndarray, FftSolveReport]:
        """
        Strain field for a prescribed mean strain.

        Returns:
            Tuple[np.ndarray, FftSolveReport]: Strain field (6, N1, N2, N3) and the solve report,
            whose column is the mean stress.

        Raises:
            ConvergenceError: If CG stagnates before the residual reaches the tolerance.
        """
        size = int(np.prod(self.shape))
        macro = np.broadcast_to(np.asarray(macro_strain, dtype=float)[:, None, None, None], self.shape)

        def apply(vector):
            fluctuation = vector.reshape(self.shape)
            return self.project(self.stress(fluctuation, stiffness_0, stiffness_1)).reshape(-1)

        operator = sp.LinearOperator(shape=(size, size), matvec=apply, dtype=float)
        rhs = -self.project(self.stress(macro, stiffness_0, stiffness_1)).reshape(-1)
        fluctuation = np.zeros(size)
        strain = macro
        stress = self.stress(strain, stiffness_0, stiffness_1)
        residual = self.equilibrium_residual(stress)
        residuals = [residual]
        iterations = 1

        while residual > self.tolerance and iterations < self.max_iterations:
            counter = _IterationCounter()
            mean_norm = np.linalg.norm(stress.mean(axis=FFT_AXES))
            fluctuation, _ = sp.cg(
                operator,
                rhs,
                x0=fluctuation,
                rtol=0.0,
                atol=0.5 * self.tolerance * mean_norm * np.sqrt(np.prod(self.dims)),
                maxiter=self.max_iterations - iterations,
                callback=counter,
            )
            iterations += max(counter.count, 1)
            strain = macro + fluctuation.reshape(self.shape)
            stress = self.stress(strain, stiffness_0, stiffness_1)
            residual = self.equilibrium_residual(stress)
            residuals.append(residual)
            logger.debug(f"load case {load_case}: {iterations} iterations, residual {residual:.3e}")
            if counter.count == 0:
                break

        if residual > self.tolerance:
            logger.error(f"FFT solve of load case {load_case} stagnated at residual {residual:.3e}")
            raise ConvergenceError(
                f"FFT solve of load case {load_case} did not reach tolerance {self.tolerance:.1e}",
                iterations,
                residuals,
            )
        report = FftSolveReport(load_case, iterations, residual, stress.mean(axis=FFT_AXES))
        return strain, report

    def homogenize(self, stiffness_0: np.ndarray, stiffness_1: np.ndarray) -> Tuple[np.ndarray, List[FftSolveReport]]:
        """Six unit-macrostrain solves, one effective stiffness column each."""
        for stiffness in (stiffness_0, stiffness_1):
            if eig_sym(stiffness)[0] <= 0.0:
                raise ValueError("Phase stiffnesses must be positive definite")
        reports = []
        for load_case, macro_strain in enumerate(np.eye(6)):
            _, report = self.solve(stiffness_0, stiffness_1, macro_strain, load_case)
            reports.append(report)
        effective = np.stack([report.column for report in reports], axis=1)
        return effective, reports


def homogenize_fft(
    grid: VoxelGrid,
    stiffness_0: np.ndarray,
    stiffness_1: np.ndarray,
    tolerance: float = 1e-10,
    max_iterations: int = 1000,
) -> Tuple[np.ndarray, List[FftSolveReport]]:
    return FftHomogenizer(grid, tolerance, max_iterations).homogenize(stiffness_0, stiffness_1)
