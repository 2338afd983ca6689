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
import unittest

from thermodmn_cli.exceptions import SchemaError
from thermodmn_cli.materials.factory import build_material
from thermodmn_cli.materials.pa66 import Pa66Material
from thermodmn_cli.materials.parameters import (
    Pa66Params,
    ThermoelasticParams,
    glass_params,
    heat_capacity,
    pa66_params,
    params_from_dict,
    params_to_dict,
)
from thermodmn_cli.materials.thermoelastic import ThermoelasticMaterial


class TestParameters(unittest.TestCase):
    def test_bundled_defaults(self):
        glass = glass_params()
        self.assertEqual(glass.E_GPa, 72.0)
        self.assertEqual(heat_capacity(glass), 2.1e6)
        pa66 = pa66_params()
        self.assertEqual(pa66.branch_count, 12)
        self.assertEqual(heat_capacity(pa66), 1.9e6)
        self.assertAlmostEqual(pa66.tau_i[0], 10**-4.22)

    def test_dict_round_trip_keeps_model_tag(self):
        data = params_to_dict(pa66_params())
        self.assertEqual(data["model"], "pa66")
        self.assertIsInstance(params_from_dict(data), Pa66Params)
        data = params_to_dict(glass_params())
        self.assertEqual(data["model"], "thermoelastic")
        self.assertIsInstance(params_from_dict(data), ThermoelasticParams)

    def test_unknown_model_rejected(self):
        with self.assertRaises(SchemaError):
            params_from_dict({"model": "steel", "E_GPa": 210.0})

    def test_unknown_key_rejected(self):
        data = params_to_dict(glass_params())
        data["E_inf_GPa"] = 1.0
        with self.assertRaises(SchemaError):
            params_from_dict(data)

    def test_missing_key_rejected(self):
        data = params_to_dict(glass_params())
        del data["nu"]
        with self.assertRaises(SchemaError):
            params_from_dict(data)

    def test_invalid_values_rejected(self):
        with self.assertRaises(ValueError):
            glass_params(nu=0.5)
        with self.assertRaises(ValueError):
            glass_params(c0_J_per_m3K=0.0)
        with self.assertRaises(ValueError):
            pa66_params(m=0.5)
        with self.assertRaises(ValueError):
            pa66_params(E_i_MPa=[1.0], tau_log10_s=[0.0, 1.0])
        with self.assertRaises(SchemaError):
            params_from_dict({**params_to_dict(pa66_params()), "eta0_MPa_s": -1.0})

    def test_factory_dispatches_on_model(self):
        self.assertIsInstance(build_material(glass_params()), ThermoelasticMaterial)
        self.assertIsInstance(build_material(pa66_params()), Pa66Material)
        self.assertEqual(build_material(pa66_params()).branches, 12)
        self.assertEqual(build_material(glass_params()).branches, 0)


if __name__ == "__main__":
    unittest.main()
