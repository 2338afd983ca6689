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
Procedural two-phase voxel microstructures on periodic cells.

Phase id 0 holds the first material (the fibre phase), id 1 the second
(the matrix). Inclusion generators fill the inclusion with id 0 and all
shape fractions refer to id 0; the layered generator stacks id 0 first
along the chosen axis.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from thermodmn_cli.constants.command_constants import InclusionShape

PACKING_LIMITS = {
    InclusionShape.SPHERE.value: np.pi / 6.0,
    InclusionShape.CYLINDER.value: np.pi / 4.0,
}


@dataclass
class VoxelGrid:
    phases: np.ndarray
    lengths_um: np.ndarray
    generator: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.phases = np.asarray(self.phases, dtype=np.uint8)
        if self.phases.ndim != 3:
            raise ValueError(f"Voxel grid must be three-dimensional, got shape {self.phases.shape}")
        if np.any(self.phases > 1):
            raise ValueError("Only phase ids 0 and 1 are supported")
        self.lengths_um = np.asarray(self.lengths_um, dtype=float)
        if self.lengths_um.shape != (3,) or np.any(self.lengths_um <= 0.0):
            raise ValueError("Cell lengths must be three positive numbers")

    @property
    def dims(self) -> Tuple[int, int, int]:
        return tuple(int(n) for n in self.phases.shape)

    @property
    def voxel_count(self) -> int:
        return int(self.phases.size)

    def fractions(self) -> Tuple[float, float]:
        second = float(np.count_nonzero(self.phases)) / self.voxel_count
        return 1.0 - second, second

    def is_homogeneous(self) -> bool:
        return bool(np.all(self.phases == self.phases.flat[0]))

    def shifted(self, offsets: Sequence[int]) -> "VoxelGrid":
        """Cyclic shift, the same microstructure on the periodic cell."""
        return VoxelGrid(np.roll(self.phases, tuple(offsets), axis=(0, 1, 2)), self.lengths_um, dict(self.generator))


def _check_dims(dims: Sequence[int]) -> Tuple[int, int, int]:
    dims = tuple(int(n) for n in dims)
    if len(dims) != 3 or min(dims) < 1:
        raise ValueError(f"Grid dimensions must be three positive integers, got {dims}")
    return dims


def _cell_lengths(dims, lengths_um) -> np.ndarray:
    if lengths_um is None:
        return np.asarray(dims, dtype=float)
    return np.broadcast_to(np.asarray(lengths_um, dtype=float), (3,)).copy()


def _voxel_centers(dims, lengths) -> np.ndarray:
    axes = [(np.arange(n) + 0.5) * length / n - 0.5 * length for n, length in zip(dims, lengths)]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)


def generate_laminate(
    dims: Sequence[int], axis: int, first_fraction: float, lengths_um=None
) -> VoxelGrid:
    """
    Layered grid with the normal along a coordinate axis.

    The first round(c1 N) layers along `axis` hold phase 0; the achieved
    fraction is recorded in the generator metadata.
    """
    dims = _check_dims(dims)
    if axis not in (0, 1, 2):
        raise ValueError(f"Laminate normal must be a coordinate axis 0, 1 or 2, got {axis}")
    if not 0.0 <= first_fraction <= 1.0:
        raise ValueError(f"Volume fraction must lie in [0, 1], got {first_fraction}")
    layers = int(round(first_fraction * dims[axis]))
    profile = (np.arange(dims[axis]) >= layers).astype(np.uint8)
    shape = [1, 1, 1]
    shape[axis] = dims[axis]
    phases = np.broadcast_to(profile.reshape(shape), dims).copy()
    return VoxelGrid(
        phases,
        _cell_lengths(dims, lengths_um),
        {
            "shape": InclusionShape.LAYERED.value,
            "axis": axis,
            "target_fraction": first_fraction,
            "achieved_fraction": layers / dims[axis],
        },
    )


def generate_inclusion(
    dims: Sequence[int],
    shape: str,
    fraction: float,
    axis: int = 0,
    lengths_um=None,
) -> VoxelGrid:
    """
    Centered sphere or cylinder of phase id 0 with volume fraction `fraction`
    in a matrix of id 1.

    Voxels (cylinder: voxel columns along the axis) are ranked by their
    distance to the cell center (to the cylinder axis) and the closest
    round(f N) are filled, so the achieved fraction is within one voxel
    (one column) of the target.

    Raises:
        ValueError: If the fraction exceeds the packing limit of the shape.
    """
    dims = _check_dims(dims)
    lengths = _cell_lengths(dims, lengths_um)
    if shape not in PACKING_LIMITS:
        raise ValueError(f"Inclusion shape must be one of {list(PACKING_LIMITS)}, got {shape}")
    centers = _voxel_centers(dims, lengths)
    if shape == InclusionShape.SPHERE.value:
        limit = PACKING_LIMITS[shape] * np.min(lengths) ** 3 / np.prod(lengths)
        distance = np.linalg.norm(centers, axis=-1)
    else:
        if axis not in (0, 1, 2):
            raise ValueError(f"Cylinder axis must be 0, 1 or 2, got {axis}")
        transverse = [i for i in range(3) if i != axis]
        limit = PACKING_LIMITS[shape] * np.min(lengths[transverse]) ** 2 / np.prod(lengths[transverse])
        distance = np.linalg.norm(np.take(centers, 0, axis=axis)[..., transverse], axis=-1)
    if not 0.0 <= fraction <= limit:
        raise ValueError(f"Volume fraction {fraction} exceeds the {shape} packing limit {limit:.4f}")

    count = int(round(fraction * distance.size))
    order = np.argsort(distance.reshape(-1), kind="stable")
    flat = np.ones(distance.size, dtype=np.uint8)
    flat[order[:count]] = 0
    phases = flat.reshape(distance.shape)
    generator = {
        "shape": shape,
        "target_fraction": fraction,
        "achieved_fraction": count / distance.size,
    }
    if shape == InclusionShape.CYLINDER.value:
        generator["axis"] = axis
        phases = np.broadcast_to(np.expand_dims(phases, axis), dims).copy()
    return VoxelGrid(phases, lengths, generator)


def generate_grid(
    dims: Sequence[int], shape: str, fraction: float, axis: int = 0, lengths_um=None
) -> VoxelGrid:
    """Dispatch on the shape name; `fraction` is the share of id 0 for every shape."""
    if shape == InclusionShape.LAYERED.value:
        return generate_laminate(dims, axis, fraction, lengths_um)
    return generate_inclusion(dims, shape, fraction, axis, lengths_um)
