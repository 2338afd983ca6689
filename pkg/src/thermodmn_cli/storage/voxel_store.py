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
Binary voxel grids with a JSON sidecar.

Header: magic, uint8 version, 3 x uint32 dims, 3 x float64 cell lengths in
µm, uint8 phase count; payload: uint8 phase ids with x running fastest.
"""
import struct

import numpy as np

from thermodmn_cli.constants.command_constants import VOXEL_MAGIC, VOXEL_VERSION
from thermodmn_cli.exceptions import SchemaError
from thermodmn_cli.fft.voxels import VoxelGrid
from thermodmn_cli.utils import load_document, write_json

HEADER = struct.Struct("<4sB3I3dB")


def sidecar_path(path: str) -> str:
    return f"{path}.json"


def save_voxels(path: str, grid: VoxelGrid):
    header = HEADER.pack(VOXEL_MAGIC, VOXEL_VERSION, *grid.dims, *grid.lengths_um.tolist(), 2)
    with open(path, "wb") as file:
        file.write(header)
        file.write(grid.phases.tobytes(order="F"))
    first, second = grid.fractions()
    write_json(
        sidecar_path(path),
        {
            "dims": list(grid.dims),
            "lengths_um": grid.lengths_um.tolist(),
            "fractions": [first, second],
            "generator": grid.generator,
        },
    )


def load_voxels(path: str) -> VoxelGrid:
    """
    Raises:
        SchemaError: On a wrong magic, version, phase count or payload size.
    """
    with open(path, "rb") as file:
        raw = file.read()
    if len(raw) < HEADER.size:
        raise SchemaError(f"{path} is too short for a voxel header")
    magic, version, n1, n2, n3, l1, l2, l3, phase_count = HEADER.unpack_from(raw)
    if magic != VOXEL_MAGIC or version != VOXEL_VERSION:
        raise SchemaError(f"{path} is not a version {VOXEL_VERSION} voxel file")
    if phase_count != 2:
        raise SchemaError(f"Only two-phase grids are supported, {path} holds {phase_count}")
    payload = np.frombuffer(raw, dtype=np.uint8, offset=HEADER.size)
    if payload.size != n1 * n2 * n3:
        raise SchemaError(f"{path} holds {payload.size} voxels, header announces {n1 * n2 * n3}")
    generator = {}
    try:
        generator = load_document(sidecar_path(path)).get("generator", {})
    except OSError:
        pass
    try:
        return VoxelGrid(payload.reshape((n1, n2, n3), order="F"), np.array([l1, l2, l3]), generator)
    except ValueError as e:
        raise SchemaError(f"Invalid voxel grid {path}: {e}") from e
