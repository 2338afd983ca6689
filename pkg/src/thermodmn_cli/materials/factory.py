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
from thermodmn_cli.constants.material_constants import MaterialModel
from thermodmn_cli.materials.gsm import GsmMaterial
from thermodmn_cli.materials.pa66 import Pa66Material
from thermodmn_cli.materials.parameters import PhaseParams
from thermodmn_cli.materials.thermoelastic import ThermoelasticMaterial


def build_material(params: PhaseParams) -> GsmMaterial:
    if params.model == MaterialModel.PA66:
        return Pa66Material(params)
    return ThermoelasticMaterial(params)
