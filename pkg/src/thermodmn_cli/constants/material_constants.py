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
from enum import Enum


class MaterialModel(Enum):
    THERMOELASTIC = "thermoelastic"
    PA66 = "pa66"

    @classmethod
    def get_values(cls):
        return [member.value for member in cls]


# J m^-3 K^-1 to MPa K^-1
HEAT_CAPACITY_TO_MPA = 1e-6
GPA_TO_MPA = 1e3
# accumulated plastic strain floor inside the power-law hardening
HARDENING_STRAIN_FLOOR = 1e-12
LOCAL_NEWTON_TOLERANCE = 1e-12
LOCAL_NEWTON_MAX_ITERATIONS = 100

GLASS_DEFAULTS = {
    "E_GPa": 72.0,
    "nu": 0.26,
    "c0_J_per_m3K": 2.1e6,
    "alpha0_per_K": 9.0e-6,
    "theta0_K": 293.15,
    "kappa0_W_per_mK": 0.93,
}

PA66_DEFAULTS = {
    "E_inf_GPa": 1.5,
    "nu": 0.42,
    "E_i_MPa": [265.0, 262.0, 248.0, 231.0, 211.0, 190.0, 170.0, 92.0, 78.0, 65.0, 54.0, 48.0],
    "tau_log10_s": [-4.22, -3.42, -2.63, -1.84, -1.05, -0.26, 0.53, 1.32, 2.12, 2.91, 3.70, 4.49],
    "wlf_C1": 26.21,
    "wlf_C2_K": 446.31,
    "sigma_Y0_MPa": 15.5,
    "k_MPa": 103.0,
    "n": 0.32,
    "eta0_MPa_s": 74.0,
    "m": 2.0,
    "beta1_per_K": 0.011,
    "beta2_per_K": 0.07,
    "theta_ref_K": 298.15,
    "c0_J_per_m3K": 1.9e6,
    "alpha0_per_K": 70.0e-6,
    "theta0_K": 293.15,
    "kappa0_W_per_mK": 0.27,
}
