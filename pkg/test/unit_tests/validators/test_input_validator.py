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
import json
import os
import tempfile
import unittest

import numpy as np

from thermodmn_cli.materials.parameters import glass_params, params_to_dict
from thermodmn_cli.network.topology import DmnTopology
from thermodmn_cli.storage.dataset_store import save_dataset
from thermodmn_cli.storage.model_store import save_model
from thermodmn_cli.tensor.mandel import isotropic_stiffness
from thermodmn_cli.training.sampling import StiffnessSample
from thermodmn_cli.validators.input_validator import InputValidator
from thermodmn_cli.validators.validator import Validator


def sample(effective=True):
    stiffness_1 = isotropic_stiffness(40.0, 30.0)
    stiffness_2 = isotropic_stiffness(4.0, 1.0)
    return StiffnessSample(
        stiffness_1=stiffness_1,
        stiffness_2=stiffness_2,
        effective=0.5 * (stiffness_1 + stiffness_2) if effective else None,
        contrast=10.0,
    )


class TestValidator(unittest.TestCase):
    def setUp(self):
        self.validator = Validator()
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def test_validate_need_implement(self):
        self.validator.validate()

    def test_validate_file_exists(self):
        path = os.path.join(self.directory.name, "file.json")
        self.assertFalse(self.validator.validate_file_exists(path, "test"))
        with open(path, "w") as file:
            file.write("{}")
        self.assertTrue(self.validator.validate_file_exists(path, "test"))

    def test_directory_is_not_a_file(self):
        self.assertFalse(self.validator.validate_file_exists(self.directory.name, "test"))

    def test_validate_file_exists_empty_path(self):
        self.assertFalse(self.validator.validate_file_exists("", "test"))
        self.assertFalse(self.validator.validate_file_exists(None, "test"))

    def test_validate_output_path(self):
        self.assertTrue(self.validator.validate_output_path(os.path.join(self.directory.name, "out.csv")))
        self.assertFalse(
            self.validator.validate_output_path(os.path.join(self.directory.name, "missing", "out.csv"))
        )


class TestInputValidator(unittest.TestCase):
    def setUp(self):
        self.validator = InputValidator()
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def write(self, name, content):
        with open(self.path(name), "w") as file:
            file.write(content if isinstance(content, str) else json.dumps(content))
        return self.path(name)

    def test_validate_phase_file_valid(self):
        path = self.write("glass.json", params_to_dict(glass_params()))
        self.assertTrue(self.validator.validate_phase_file(path))

    def test_validate_phase_file_yaml(self):
        document = "model: thermoelastic\nE_GPa: 72.0\nnu: 0.26\nc0_J_per_m3K: 2.1e6\nalpha0_per_K: 9.0e-6\n"
        path = self.write("glass.yaml", document)
        self.assertTrue(self.validator.validate_phase_file(path))

    def test_validate_phase_file_missing(self):
        self.assertFalse(self.validator.validate_phase_file(self.path("missing.json")))

    def test_validate_phase_file_unknown_model(self):
        path = self.write("phase.json", {"model": "hyperelastic"})
        self.assertFalse(self.validator.validate_phase_file(path))

    def test_validate_phase_file_unknown_field(self):
        path = self.write("phase.json", {**params_to_dict(glass_params()), "colour": "green"})
        self.assertFalse(self.validator.validate_phase_file(path))

    def test_validate_phase_file_unparsable(self):
        path = self.write("phase.yaml", "model: [thermoelastic\n")
        self.assertFalse(self.validator.validate_phase_file(path))

    def test_validate_phase_file_empty(self):
        path = self.write("phase.yaml", "")
        self.assertFalse(self.validator.validate_phase_file(path))

    def test_validate_model_file(self):
        save_model(self.path("model.json"), DmnTopology.random(2, np.random.default_rng(0)))
        self.assertTrue(self.validator.validate_model_file(self.path("model.json")))

    def test_validate_model_file_wrong_format(self):
        path = self.write("model.json", {"format": "something-else", "version": 1})
        self.assertFalse(self.validator.validate_model_file(path))

    def test_validate_model_file_missing(self):
        self.assertFalse(self.validator.validate_model_file(self.path("model.json")))

    def test_validate_dataset_file(self):
        save_dataset(self.path("data.json"), [sample(), sample()])
        self.assertTrue(self.validator.validate_dataset_file(self.path("data.json")))
        self.assertTrue(self.validator.validate_dataset_file(self.path("data.json"), require_effective=True))

    def test_validate_dataset_file_without_effective(self):
        save_dataset(self.path("data.json"), [sample(), sample(effective=False)])
        self.assertTrue(self.validator.validate_dataset_file(self.path("data.json")))
        self.assertFalse(self.validator.validate_dataset_file(self.path("data.json"), require_effective=True))

    def test_validate_dataset_file_empty(self):
        save_dataset(self.path("data.json"), [])
        self.assertFalse(self.validator.validate_dataset_file(self.path("data.json")))

    def test_validate_dataset_file_wrong_units(self):
        save_dataset(self.path("data.json"), [sample()])
        with open(self.path("data.json")) as file:
            data = json.load(file)
        data["units"] = "MPa"
        path = self.write("data.json", data)
        self.assertFalse(self.validator.validate_dataset_file(path))

    def test_validate_program_source_preset(self):
        self.assertTrue(self.validator.validate_program_source(None, "monotonic"))
        self.assertTrue(self.validator.validate_program_source(None, "cyclic"))
        self.assertFalse(self.validator.validate_program_source(None, "creep"))

    def test_validate_program_source_exclusive(self):
        path = self.write("program.json", {})
        self.assertFalse(self.validator.validate_program_source(None, None))
        self.assertFalse(self.validator.validate_program_source(path, "monotonic"))

    def test_validate_program_source_file(self):
        program = {
            "dt": 0.1,
            "steps": 1,
            "control": ["S", "E", "S", "S", "S", "S"],
            "strain": [[0.0] * 6, [0.0, 1e-3, 0.0, 0.0, 0.0, 0.0]],
        }
        path = self.write("program.json", program)
        self.assertTrue(self.validator.validate_program_source(path, None))

    def test_validate_program_source_invalid_file(self):
        path = self.write("program.json", {"dt": -1.0, "steps": 1})
        self.assertFalse(self.validator.validate_program_source(path, None))
        self.assertFalse(self.validator.validate_program_source(self.path("missing.json"), None))

    def test_validate_grid_arguments(self):
        self.assertTrue(self.validator.validate_grid_arguments("sphere", 16, 0.3))
        self.assertTrue(self.validator.validate_grid_arguments("layered", 1, 0.0))
        self.assertTrue(self.validator.validate_grid_arguments("cylinder", 64, 1.0))

    def test_validate_grid_arguments_invalid(self):
        self.assertFalse(self.validator.validate_grid_arguments("cube", 16, 0.3))
        self.assertFalse(self.validator.validate_grid_arguments("sphere", 0, 0.3))
        self.assertFalse(self.validator.validate_grid_arguments("sphere", 65, 0.3))
        self.assertFalse(self.validator.validate_grid_arguments("sphere", 16, -0.1))
        self.assertFalse(self.validator.validate_grid_arguments("sphere", 16, 1.5))

    def test_validate_positive_values(self):
        self.assertTrue(self.validator.validate_positive_values([1e-4, 1e-2], "strain-rates"))
        self.assertFalse(self.validator.validate_positive_values([], "strain-rates"))
        self.assertFalse(self.validator.validate_positive_values([1e-4, 0.0], "strain-rates"))
        self.assertFalse(self.validator.validate_positive_values([-1.0], "strain-rates"))
