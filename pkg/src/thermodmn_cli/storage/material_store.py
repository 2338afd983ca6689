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
from typing import Optional, Tuple

from thermodmn_cli.materials.factory import build_material
from thermodmn_cli.materials.gsm import GsmMaterial
from thermodmn_cli.materials.parameters import PhaseParams, glass_params, pa66_params, params_from_dict
from thermodmn_cli.utils import load_document


def load_phase(path: str) -> PhaseParams:
    return params_from_dict(load_document(path) or {})


def load_phases(
    phase1_path: Optional[str] = None, phase2_path: Optional[str] = None
) -> Tuple[GsmMaterial, GsmMaterial]:
    """Phase laws from parameter files; glass and PA66 when a file is not given."""
    first = load_phase(phase1_path) if phase1_path else glass_params()
    second = load_phase(phase2_path) if phase2_path else pa66_params()
    return build_material(first), build_material(second)
