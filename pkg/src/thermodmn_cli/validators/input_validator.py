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
from typing import Optional, Sequence

import yaml

from thermodmn_cli.constants.command_constants import InclusionShape, ProgramPreset
from thermodmn_cli.driver.program import load_program
from thermodmn_cli.exceptions import SchemaError
from thermodmn_cli.materials.parameters import params_from_dict
from thermodmn_cli.storage.dataset_store import load_dataset
from thermodmn_cli.storage.model_store import load_model
from thermodmn_cli.utils import load_document, setup_logger
from thermodmn_cli.validators.validator import Validator

logger = setup_logger(__name__)


class InputValidator(Validator):
    """Checks of the files and arguments a command reads before any numerics run."""

    def __init__(self):
        super().__init__()

    def validate_phase_file(self, path: str) -> bool:
        if not self.validate_file_exists(path, "material parameter"):
            return False
        try:
            params_from_dict(load_document(path) or {})
        except (SchemaError, yaml.YAMLError) as e:
            logger.error(f"Invalid material parameter file {path}: {e}")
            return False
        return True

    def validate_model_file(self, path: str) -> bool:
        if not self.validate_file_exists(path, "model"):
            return False
        try:
            load_model(path)
        except SchemaError as e:
            logger.error(f"Invalid model file {path}: {e}")
            return False
        return True

    def validate_dataset_file(self, path: str, require_effective: bool = False) -> bool:
        if not self.validate_file_exists(path, "data set"):
            return False
        try:
            samples = load_dataset(path)
        except SchemaError as e:
            logger.error(f"Invalid data set file {path}: {e}")
            return False
        if not samples:
            logger.error(f"The data set {path} holds no samples.")
            return False
        if require_effective and any(sample.effective is None for sample in samples):
            logger.error(f"The data set {path} lacks effective stiffnesses; run 'thermodmn homogenize' first.")
            return False
        return True

    def validate_program_source(self, program: Optional[str], preset: Optional[str]) -> bool:
        if bool(program) == bool(preset):
            logger.error("Please provide exactly one of '--program' and '--preset'.")
            return False
        if preset:
            if preset not in ProgramPreset.get_values():
                logger.error(f"The only supported presets are {ProgramPreset.get_values()}.")
                return False
            return True
        if not self.validate_file_exists(program, "load program"):
            return False
        try:
            load_program(program)
        except SchemaError as e:
            logger.error(f"Invalid load program {program}: {e}")
            return False
        return True

    def validate_grid_arguments(self, shape: str, resolution: int, volume_fraction: float) -> bool:
        if shape not in InclusionShape.get_values():
            logger.error(f"The only supported microstructure shapes are {InclusionShape.get_values()}.")
            return False
        if resolution < 1 or resolution > 64:
            logger.error(f"Grid resolution must lie in 1..64, got {resolution}.")
            return False
        if not 0.0 <= volume_fraction <= 1.0:
            logger.error(f"Volume fraction must lie in [0, 1], got {volume_fraction}.")
            return False
        return True

    def validate_positive_values(self, values: Sequence[float], name: str) -> bool:
        if not values or any(value <= 0.0 for value in values):
            logger.error(f"'{name}' needs positive values, got {list(values)}.")
            return False
        return True
