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
from typing import Optional, Tuple, Union

import numpy as np

from thermodmn_cli.constants.material_constants import GPA_TO_MPA
from thermodmn_cli.materials.gsm import (
    GsmMaterial,
    GsmResponse,
    MaterialState,
    as_batch,
    check_increment,
)
from thermodmn_cli.materials.parameters import ThermoelasticParams
from thermodmn_cli.tensor.mandel import (
    IDENTITY2,
    bulk_shear_from_young,
    check_symmetric,
    isotropic_stiffness,
)


class ThermoelasticMaterial(GsmMaterial):
    """Linear thermoelasticity σ = ℂ[ε − α(θ − θ0)] with isotropic expansion α = α0 1."""

    def __init__(self, params: ThermoelasticParams, stiffness: Optional[np.ndarray] = None):
        """
        Args:
            params (ThermoelasticParams): Phase parameters.
            stiffness (np.ndarray): Optional anisotropic stiffness in MPa replacing the
                isotropic one built from E and nu.
        """
        super().__init__(params)
        if stiffness is None:
            bulk, shear = bulk_shear_from_young(params.E_GPa * GPA_TO_MPA, params.nu)
            stiffness = isotropic_stiffness(bulk, shear)
        self.stiffness = check_symmetric(stiffness)
        # ℂ[α] for α = α0 1
        self.thermal_stress = self.stiffness @ (params.alpha0_per_K * IDENTITY2)

    def elastic_stiffness(self) -> np.ndarray:
        return self.stiffness

    def _stress(self, strain: np.ndarray, theta: np.ndarray) -> np.ndarray:
        return strain @ self.stiffness - (theta - self.params.theta0_K)[:, None] * self.thermal_stress

    def stress_update(
        self,
        strain: np.ndarray,
        theta: Union[float, np.ndarray],
        state: MaterialState,
        dt: float,
    ) -> Tuple[np.ndarray, np.ndarray]:
        check_increment(theta, dt)
        strain, theta = as_batch(strain, theta)
        tangent = np.broadcast_to(self.stiffness, (strain.shape[0], 6, 6))
        return self._stress(strain, theta), tangent

    def update(
        self,
        strain: np.ndarray,
        theta: Union[float, np.ndarray],
        state: MaterialState,
        dt: float,
        strain_prev: np.ndarray,
    ) -> GsmResponse:
        check_increment(theta, dt)
        strain, theta = as_batch(strain, theta)
        count = strain.shape[0]
        strain_prev = np.broadcast_to(np.asarray(strain_prev, dtype=float), strain.shape)
        rate = (strain - strain_prev) / dt
        rate_power = rate @ self.thermal_stress
        return GsmResponse(
            stress=self._stress(strain, theta),
            dstress_dstrain=np.broadcast_to(self.stiffness, (count, 6, 6)).copy(),
            dstress_dtheta=np.broadcast_to(-self.thermal_stress, (count, 6)).copy(),
            coupling=-theta * rate_power,
            dcoupling_dstrain=-(theta / dt)[:, None] * self.thermal_stress,
            dcoupling_dtheta=-rate_power,
            dissipation=np.zeros(count),
            state=state,
        )


def thermoelastic_update(
    strain: np.ndarray,
    theta: float,
    dt: float,
    strain_prev: np.ndarray,
    params: ThermoelasticParams,
) -> GsmResponse:
    """
    Single-point thermoelastic update.

    Args:
        strain (np.ndarray): Mandel strain ε^{n+1}.
        theta (float): Absolute temperature θ^{n+1} in K.
        dt (float): Time increment in s.
        strain_prev (np.ndarray): Mandel strain ε^n, enters the coupling term only.
        params (ThermoelasticParams): Phase parameters.

    Returns:
        GsmResponse: Response without phase axis. The coupling term is the
        Gough-Joule heating -θ ε̇ : ℂ[α].

    Raises:
        ValueError: If theta <= 0 or dt <= 0.
    """
    material = ThermoelasticMaterial(params)
    response = material.update(
        np.atleast_2d(strain), theta, material.initial_state(1), dt, np.atleast_2d(strain_prev)
    )
    return response.item(0)
