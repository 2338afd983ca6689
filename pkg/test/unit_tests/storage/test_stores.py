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

from thermodmn_cli.exceptions import SchemaError
from thermodmn_cli.fft.voxels import VoxelGrid, generate_inclusion
from thermodmn_cli.materials.pa66 import Pa66Material
from thermodmn_cli.materials.parameters import glass_params, params_to_dict
from thermodmn_cli.materials.thermoelastic import ThermoelasticMaterial
from thermodmn_cli.network.topology import DmnTopology
from thermodmn_cli.storage.dataset_store import dataset_from_dict, dataset_to_dict, load_dataset, save_dataset
from thermodmn_cli.storage.material_store import load_phases
from thermodmn_cli.storage.model_store import load_model, model_from_dict, model_to_dict, save_model
from thermodmn_cli.storage.tables import read_csv, write_csv
from thermodmn_cli.storage.voxel_store import HEADER, load_voxels, save_voxels, sidecar_path
from thermodmn_cli.tensor.mandel import isotropic_stiffness
from thermodmn_cli.training.sampling import StiffnessSample


class StorageTestCase(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def path(self, name):
        return os.path.join(self.directory.name, name)


class TestModelStore(StorageTestCase):
    def test_save_and_load(self):
        topology = DmnTopology.random(3, np.random.default_rng(2))
        save_model(self.path("model.json"), topology, config_sha256="abc")
        with open(self.path("model.json")) as file:
            data = json.load(file)
        self.assertEqual(data["format"], "thermodmn-model")
        self.assertEqual(data["config_sha256"], "abc")
        restored = load_model(self.path("model.json"))
        np.testing.assert_allclose(restored.weights, topology.weights)
        np.testing.assert_allclose(np.abs(restored.directions), np.abs(topology.directions))

    def test_stored_directions_are_canonical(self):
        topology = DmnTopology.laminate(np.array([-1.0, 0.0, 0.0]), 0.5)
        self.assertEqual(model_to_dict(topology)["directions"], [[1.0, 0.0, 0.0]])

    def test_schema_errors(self):
        valid = model_to_dict(DmnTopology.laminate(np.array([1.0, 0.0, 0.0]), 0.5))
        for broken in (
            {**valid, "format": "other"},
            {**valid, "version": 2},
            {key: value for key, value in valid.items() if key != "weights"},
            {**valid, "weights": [0.5, 0.6]},
            {**valid, "depth": 2},
        ):
            with self.assertRaises(SchemaError):
                model_from_dict(broken)


class TestDatasetStore(StorageTestCase):
    def test_save_and_load(self):
        stiffness = isotropic_stiffness(2.0, 1.0)
        samples = [
            StiffnessSample(stiffness, 2.0 * stiffness, 1.5 * stiffness, 2.0),
            StiffnessSample(stiffness, stiffness),
        ]
        save_dataset(self.path("data.json"), samples)
        restored = load_dataset(self.path("data.json"))
        np.testing.assert_allclose(restored[0].effective, 1.5 * stiffness)
        self.assertIsNone(restored[1].effective)
        self.assertEqual(restored[0].contrast, 2.0)

    def test_schema_errors(self):
        stiffness = isotropic_stiffness(2.0, 1.0)
        valid = dataset_to_dict([StiffnessSample(stiffness, stiffness)])
        broken_sample = dict(valid, samples=[{"C1": [[1.0]], "C2": stiffness.tolist(), "contrast": 1.0}])
        for broken in ({**valid, "units": "MPa"}, {**valid, "version": 0}, {**valid, "samples": [{}]}, broken_sample):
            with self.assertRaises(SchemaError):
                dataset_from_dict(broken)


class TestVoxelStore(StorageTestCase):
    def test_save_and_load(self):
        grid = generate_inclusion((4, 6, 8), "sphere", 0.1, lengths_um=[40.0, 60.0, 80.0])
        path = self.path("grid.vox")
        save_voxels(path, grid)
        restored = load_voxels(path)
        np.testing.assert_array_equal(restored.phases, grid.phases)
        np.testing.assert_allclose(restored.lengths_um, [40.0, 60.0, 80.0])
        self.assertEqual(restored.generator["shape"], "sphere")
        with open(sidecar_path(path)) as file:
            self.assertEqual(json.load(file)["dims"], [4, 6, 8])

    def test_x_runs_fastest(self):
        phases = np.zeros((3, 2, 2), dtype=np.uint8)
        phases[1, 0, 0] = 1
        path = self.path("grid.vox")
        save_voxels(path, VoxelGrid(phases, [1.0, 1.0, 1.0]))
        with open(path, "rb") as file:
            payload = file.read()[HEADER.size :]
        self.assertEqual(list(payload[:3]), [0, 1, 0])

    def test_missing_sidecar(self):
        path = self.path("grid.vox")
        save_voxels(path, VoxelGrid(np.ones((2, 2, 2)), [1.0, 1.0, 1.0]))
        os.remove(sidecar_path(path))
        self.assertEqual(load_voxels(path).generator, {})

    def test_corrupt_files(self):
        path = self.path("grid.vox")
        save_voxels(path, VoxelGrid(np.ones((2, 2, 2)), [1.0, 1.0, 1.0]))
        with open(path, "rb") as file:
            raw = file.read()
        for broken in (b"XXXX" + raw[4:], raw[:-1], raw[:5]):
            with open(path, "wb") as file:
                file.write(broken)
            with self.assertRaises(SchemaError):
                load_voxels(path)


class TestMaterialStore(StorageTestCase):
    def test_defaults(self):
        first, second = load_phases()
        self.assertIsInstance(first, ThermoelasticMaterial)
        self.assertIsInstance(second, Pa66Material)

    def test_phase_file(self):
        path = self.path("soft_glass.json")
        with open(path, "w") as file:
            json.dump(params_to_dict(glass_params(E_GPa=3.0)), file)
        first, _ = load_phases(phase1_path=path)
        self.assertEqual(first.params.E_GPa, 3.0)
        with open(path, "w") as file:
            json.dump({"model": "steel"}, file)
        with self.assertRaises(SchemaError):
            load_phases(phase2_path=path)


class TestTables(StorageTestCase):
    def test_write_and_read(self):
        path = self.path("table.csv")
        write_csv(path, ["a", "b"], [[1, 2.5], [3, 4.0]])
        self.assertEqual(read_csv(path), [["a", "b"], ["1", "2.5"], ["3", "4.0"]])


if __name__ == "__main__":
    unittest.main()
