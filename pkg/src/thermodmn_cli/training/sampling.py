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
Sampling of stiffness pairs for offline training.

Phase 1 is isotropic, phase 2 isotropic minus a rank-one perturbation along a
deviatoric direction, so the pair set spans a wide range of anisotropy and
material contrast.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from thermodmn_cli.config import SamplingConfig
from thermodmn_cli.tensor.mandel import eig_sym, isotropic_projectors, isotropic_stiffness, to_mandel


@dataclass
class StiffnessSample:
    stiffness_1: np.ndarray
    stiffness_2: np.ndarray
    effective: Optional[np.ndarray] = None
    contrast: float = 1.0


def random_deviatoric_direction(rng: np.random.Generator) -> np.ndarray:
    """Unit deviatoric Mandel vector from a symmetric Gaussian matrix."""
    gaussian = rng.standard_normal((3, 3))
    direction = to_mandel(0.5 * (gaussian + gaussian.T))
    direction[:3] -= np.sum(direction[:3]) / 3.0
    return direction / np.linalg.norm(direction)


def perturbed_stiffness(bulk: float, shear: float, amplitude: float, direction: np.ndarray) -> np.ndarray:
    """3K P1 + 2G (P2 - a N' ⊗ N')."""
    if not 0.0 <= amplitude < 1.0:
        raise ValueError(f"Perturbation amplitude must lie in [0, 1), got {amplitude}")
    p1, p2 = isotropic_projectors()
    return 3.0 * bulk * p1 + 2.0 * shear * (p2 - amplitude * np.outer(direction, direction))


def sample_pair(
    rng: np.random.Generator, config: Optional[SamplingConfig] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Draw one stiffness pair in GPa.

    Bulk and shear moduli are log-uniform on the configured range, the
    perturbation amplitude uniform on [0, max_perturbation].
    """
    config = config or SamplingConfig()
    low, high = np.log(config.modulus_range_GPa[0]), np.log(config.modulus_range_GPa[1])
    bulk_1, shear_1, bulk_2, shear_2 = np.exp(rng.uniform(low, high, 4))
    amplitude = rng.uniform(0.0, config.max_perturbation)
    direction = random_deviatoric_direction(rng)
    return (
        isotropic_stiffness(bulk_1, shear_1),
        perturbed_stiffness(bulk_2, shear_2, amplitude, direction),
    )


def material_contrast(stiffness_1: np.ndarray, stiffness_2: np.ndarray) -> float:
    """
    max(λ1,max / λ2,min, λ2,max / λ1,min).

    Raises:
        ValueError: If a stiffness is not positive definite.
    """
    spectrum_1 = eig_sym(stiffness_1)
    spectrum_2 = eig_sym(stiffness_2)
    if spectrum_1[0] <= 0.0 or spectrum_2[0] <= 0.0:
        raise ValueError("Material contrast needs positive definite stiffnesses")
    return float(max(spectrum_1[-1] / spectrum_2[0], spectrum_2[-1] / spectrum_1[0]))


def sample_dataset(config: SamplingConfig) -> List[StiffnessSample]:
    rng = np.random.default_rng(config.seed)
    samples = []
    for _ in range(config.samples):
        stiffness_1, stiffness_2 = sample_pair(rng, config)
        samples.append(
            StiffnessSample(
                stiffness_1=stiffness_1,
                stiffness_2=stiffness_2,
                contrast=material_contrast(stiffness_1, stiffness_2),
            )
        )
    return samples


def contrast_histogram(contrasts: Sequence[float], bins: int = 50) -> Tuple[np.ndarray, np.ndarray]:
    """
    Counts over log-spaced bins between the smallest and largest contrast.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Bin edges (bins + 1,) and counts (bins,).
    """
    contrasts = np.asarray(contrasts, dtype=float)
    if contrasts.size == 0:
        raise ValueError("No contrasts to bin")
    low, high = np.min(contrasts), np.max(contrasts)
    if high <= low:
        high = low * (1.0 + 1e-12) + 1e-12
    edges = np.logspace(np.log10(low), np.log10(high), bins + 1)
    counts, _ = np.histogram(contrasts, bins=edges)
    return edges, counts


def stack_samples(samples: Sequence[StiffnessSample]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Arrays (S, 6, 6) of phase-1, phase-2 and effective stiffnesses."""
    missing = [index for index, sample in enumerate(samples) if sample.effective is None]
    if missing:
        raise ValueError(f"Samples {missing[:5]} have no effective stiffness; run homogenize first")
    return (
        np.stack([sample.stiffness_1 for sample in samples]),
        np.stack([sample.stiffness_2 for sample in samples]),
        np.stack([sample.effective for sample in samples]),
    )
