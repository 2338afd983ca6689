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
"""Network model files: directions deepest level first, root last."""
from typing import Any, Dict, Optional

import numpy as np

from thermodmn_cli.constants.command_constants import FILE_FORMAT_VERSION, MODEL_FORMAT
from thermodmn_cli.exceptions import SchemaError
from thermodmn_cli.network.topology import DmnTopology
from thermodmn_cli.utils import load_document, write_json


def model_to_dict(topology: DmnTopology, config_sha256: Optional[str] = None) -> Dict[str, Any]:
    return {
        "format": MODEL_FORMAT,
        "version": FILE_FORMAT_VERSION,
        "depth": topology.depth,
        "directions": topology.canonical_directions().tolist(),
        "weights": topology.weights.tolist(),
        "config_sha256": config_sha256,
    }


def model_from_dict(data: Dict[str, Any]) -> DmnTopology:
    if not isinstance(data, dict) or data.get("format") != MODEL_FORMAT:
        raise SchemaError(f"Not a {MODEL_FORMAT} document")
    if data.get("version") != FILE_FORMAT_VERSION:
        raise SchemaError(f"Unsupported model version {data.get('version')!r}")
    try:
        return DmnTopology(
            int(data["depth"]),
            np.asarray(data["directions"], dtype=float),
            np.asarray(data["weights"], dtype=float),
        )
    except KeyError as e:
        raise SchemaError(f"Model file misses key {e}") from e
    except (TypeError, ValueError) as e:
        raise SchemaError(f"Invalid model: {e}") from e


def save_model(path: str, topology: DmnTopology, config_sha256: Optional[str] = None):
    write_json(path, model_to_dict(topology, config_sha256))


def load_model(path: str) -> DmnTopology:
    return model_from_dict(load_document(path))
