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
"""Stiffness-triple data sets, stored in GPa and Mandel ordering."""
from typing import Any, Dict, List, Sequence

import numpy as np

from thermodmn_cli.constants.command_constants import (
    DATASET_FORMAT,
    DATASET_UNITS,
    FILE_FORMAT_VERSION,
    MANDEL_ORDERING,
)
from thermodmn_cli.exceptions import SchemaError
from thermodmn_cli.training.sampling import StiffnessSample
from thermodmn_cli.utils import load_document, write_json


def _matrix(value: Any, name: str) -> np.ndarray:
    matrix = np.asarray(value, dtype=float)
    if matrix.shape != (6, 6):
        raise SchemaError(f"'{name}' must be a 6x6 matrix, got shape {matrix.shape}")
    return matrix


def dataset_to_dict(samples: Sequence[StiffnessSample]) -> Dict[str, Any]:
    return {
        "format": DATASET_FORMAT,
        "version": FILE_FORMAT_VERSION,
        "ordering": MANDEL_ORDERING,
        "units": DATASET_UNITS,
        "samples": [
            {
                "C1": sample.stiffness_1.tolist(),
                "C2": sample.stiffness_2.tolist(),
                "C_eff": None if sample.effective is None else sample.effective.tolist(),
                "contrast": sample.contrast,
            }
            for sample in samples
        ],
    }


def dataset_from_dict(data: Dict[str, Any]) -> List[StiffnessSample]:
    if not isinstance(data, dict) or data.get("format") != DATASET_FORMAT:
        raise SchemaError(f"Not a {DATASET_FORMAT} document")
    if data.get("version") != FILE_FORMAT_VERSION:
        raise SchemaError(f"Unsupported data set version {data.get('version')!r}")
    if data.get("ordering") != MANDEL_ORDERING or data.get("units") != DATASET_UNITS:
        raise SchemaError(f"Data sets must use ordering {MANDEL_ORDERING} and units {DATASET_UNITS}")
    samples = []
    try:
        for entry in data["samples"]:
            effective = entry.get("C_eff")
            samples.append(
                StiffnessSample(
                    stiffness_1=_matrix(entry["C1"], "C1"),
                    stiffness_2=_matrix(entry["C2"], "C2"),
                    effective=None if effective is None else _matrix(effective, "C_eff"),
                    contrast=float(entry["contrast"]),
                )
            )
    except KeyError as e:
        raise SchemaError(f"Data set sample misses key {e}") from e
    except (TypeError, ValueError) as e:
        raise SchemaError(f"Invalid data set sample: {e}") from e
    return samples


def save_dataset(path: str, samples: Sequence[StiffnessSample]):
    write_json(path, dataset_to_dict(samples))


def load_dataset(path: str) -> List[StiffnessSample]:
    return dataset_from_dict(load_document(path))
