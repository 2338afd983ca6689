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
"""
Uniform interface of non-isothermal generalized standard materials.

All quantities are batched over a leading phase axis of length n. Stresses
are in MPa, temperatures in K, coupling terms and dissipation in MPa/s.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from thermodmn_cli.constants.material_constants import HEAT_CAPACITY_TO_MPA
from thermodmn_cli.materials.parameters import PhaseParams, heat_capacity
from thermodmn_cli.tensor import dual


@dataclass(frozen=True)
class MaterialState:
    """
    Internal variables of n material points.

    eps_p has shape (n,), eps_vp (n, 6) and eps_v (n, N, 6) for N Maxwell
    branches. Thermoelastic phases carry N = 0 and never touch eps_p, eps_vp.
    """

    eps_p: np.ndarray
    eps_vp: np.ndarray
    eps_v: np.ndarray

    @classmethod
    def zeros(cls, count: int, branches: int = 0) -> "MaterialState":
        return cls(
            eps_p=np.zeros(count),
            eps_vp=np.zeros((count, 6)),
            eps_v=np.zeros((count, branches, 6)),
        )

    @property
    def count(self) -> int:
        return self.eps_p.shape[0]

    @property
    def branches(self) -> int:
        return self.eps_v.shape[1]

    def select(self, index) -> "MaterialState":
        return MaterialState(self.eps_p[index], self.eps_vp[index], self.eps_v[index])

    def replace(self, index, other: "MaterialState") -> "MaterialState":
        eps_p, eps_vp, eps_v = self.eps_p.copy(), self.eps_vp.copy(), self.eps_v.copy()
        eps_p[index] = other.eps_p
        eps_vp[index] = other.eps_vp
        eps_v[index] = other.eps_v
        return MaterialState(eps_p, eps_vp, eps_v)


@dataclass(frozen=True)
class GsmResponse:
    stress: np.ndarray
    dstress_dstrain: np.ndarray
    dstress_dtheta: np.ndarray
    coupling: np.ndarray
    dcoupling_dstrain: np.ndarray
    dcoupling_dtheta: np.ndarray
    dissipation: np.ndarray
    state: MaterialState

    def item(self, index: int) -> "GsmResponse":
        """Single-point view, with the phase axis removed."""
        return GsmResponse(
            stress=self.stress[index],
            dstress_dstrain=self.dstress_dstrain[index],
            dstress_dtheta=self.dstress_dtheta[index],
            coupling=self.coupling[index],
            dcoupling_dstrain=self.dcoupling_dstrain[index],
            dcoupling_dtheta=self.dcoupling_dtheta[index],
            dissipation=self.dissipation[index],
            state=self.state.select(index),
        )


def check_increment(theta, dt: float) -> None:
    if dt <= 0.0:
        raise ValueError(f"Time increment must be positive, got {dt}")
    if np.any(np.asarray(theta) <= 0.0):
        raise ValueError("Absolute temperature must be positive")


def as_batch(strain, theta) -> Tuple[np.ndarray, np.ndarray]:
    strain = np.atleast_2d(np.asarray(strain, dtype=float))
    theta = np.broadcast_to(np.asarray(theta, dtype=float), strain.shape[:1]).copy()
    return strain, theta


def seed_strain_temperature(strain: np.ndarray, theta: np.ndarray) -> Tuple[dual.Dual, dual.Dual]:
    """Seed six strain directions and one temperature direction per point."""
    count = strain.shape[0]
    strain_grad = np.zeros((count, 6, 7))
    strain_grad[:, np.arange(6), np.arange(6)] = 1.0
    theta_grad = np.zeros((count, 7))
    theta_grad[:, 6] = 1.0
    return dual.Dual(strain, strain_grad), dual.Dual(theta, theta_grad)


def response_from_duals(
    stress: dual.Dual, coupling: dual.Dual, dissipation, state: MaterialState
) -> GsmResponse:
    return GsmResponse(
        stress=stress.value,
        dstress_dstrain=stress.grad[..., :6],
        dstress_dtheta=stress.grad[..., 6],
        coupling=coupling.value,
        dcoupling_dstrain=coupling.grad[..., :6],
        dcoupling_dtheta=coupling.grad[..., 6],
        dissipation=dual.value_of(dissipation),
        state=state,
    )


class GsmMaterial(ABC):
    """
    A phase law given by free energy and dissipation potential, integrated by
    implicit Euler. Implementations are stateless; internal variables travel
    in MaterialState.
    """

    def __init__(self, params: PhaseParams):
        self.params = params

    @property
    def heat_capacity(self) -> float:
        """Heat capacity in J m⁻³ K⁻¹."""
        return heat_capacity(self.params)

    @property
    def heat_capacity_mpa(self) -> float:
        """Heat capacity in MPa K⁻¹."""
        return self.heat_capacity * HEAT_CAPACITY_TO_MPA

    @property
    def branches(self) -> int:
        return 0

    def initial_state(self, count: int) -> MaterialState:
        return MaterialState.zeros(count, self.branches)

    @abstractmethod
    def elastic_stiffness(self) -> np.ndarray:
        """Instantaneous-free (long-term) elastic stiffness in MPa."""

    @abstractmethod
    def stress_update(
        self,
        strain: np.ndarray,
        theta: Union[float, np.ndarray],
        state: MaterialState,
        dt: float,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        Stress and consistent tangent dσ/dε of the incremental update, state frozen.

        Returns:
            Tuple[np.ndarray, np.ndarray]: Stress (n, 6) and tangent (n, 6, 6).
        """

    @abstractmethod
    def update(
        self,
        strain: np.ndarray,
        theta: Union[float, np.ndarray],
        state: MaterialState,
        dt: float,
        strain_prev: np.ndarray,
    ) -> GsmResponse:
        """Full update with coupling term, dissipation, all tangents and the new state."""
