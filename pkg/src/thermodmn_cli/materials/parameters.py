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
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Union

import numpy as np

from thermodmn_cli.constants.material_constants import (
    GLASS_DEFAULTS,
    PA66_DEFAULTS,
    MaterialModel,
)
from thermodmn_cli.exceptions import SchemaError


@dataclass(frozen=True)
class ThermoelasticParams:
    E_GPa: float
    nu: float
    c0_J_per_m3K: float
    alpha0_per_K: float
    theta0_K: float = 293.15
    kappa0_W_per_mK: float = 0.0

    def __post_init__(self):
        if self.E_GPa <= 0.0:
            raise ValueError(f"E_GPa must be positive, got {self.E_GPa}")
        if not -1.0 < self.nu < 0.5:
            raise ValueError(f"nu must lie in (-1, 0.5), got {self.nu}")
        if self.c0_J_per_m3K <= 0.0:
            raise ValueError(f"c0_J_per_m3K must be positive, got {self.c0_J_per_m3K}")
        if self.theta0_K <= 0.0:
            raise ValueError(f"theta0_K must be positive, got {self.theta0_K}")

    @property
    def model(self) -> MaterialModel:
        return MaterialModel.THERMOELASTIC


@dataclass(frozen=True)
class Pa66Params:
    E_inf_GPa: float
    nu: float
    E_i_MPa: List[float]
    tau_log10_s: List[float]
    wlf_C1: float
    wlf_C2_K: float
    sigma_Y0_MPa: float
    k_MPa: float
    n: float
    eta0_MPa_s: float
    m: float
    beta1_per_K: float
    beta2_per_K: float
    theta_ref_K: float
    c0_J_per_m3K: float
    alpha0_per_K: float
    theta0_K: float = 293.15
    kappa0_W_per_mK: float = 0.0
    E_i: np.ndarray = field(init=False, repr=False, compare=False)
    tau_i: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.E_i_MPa) != len(self.tau_log10_s):
            raise ValueError("E_i_MPa and tau_log10_s must have the same length")
        moduli = np.asarray(self.E_i_MPa, dtype=float)
        times = 10.0 ** np.asarray(self.tau_log10_s, dtype=float)
        positive = {
            "E_inf_GPa": self.E_inf_GPa,
            "sigma_Y0_MPa": self.sigma_Y0_MPa,
            "eta0_MPa_s": self.eta0_MPa_s,
            "c0_J_per_m3K": self.c0_J_per_m3K,
            "theta_ref_K": self.theta_ref_K,
            "theta0_K": self.theta0_K,
        }
        for name, value in positive.items():
            if value <= 0.0:
                raise ValueError(f"{name} must be positive, got {value}")
        if np.any(moduli <= 0.0):
            raise ValueError("All Maxwell moduli E_i_MPa must be positive")
        if not -1.0 < self.nu < 0.5:
            raise ValueError(f"nu must lie in (-1, 0.5), got {self.nu}")
        if self.m < 1.0:
            raise ValueError(f"Rate exponent m must be at least 1, got {self.m}")
        if self.k_MPa < 0.0 or self.n <= 0.0:
            raise ValueError("Hardening requires k_MPa >= 0 and n > 0")
        if self.beta1_per_K < 0.0 or self.beta2_per_K < 0.0:
            raise ValueError("Softening exponents must be non-negative")
        object.__setattr__(self, "E_i", moduli)
        object.__setattr__(self, "tau_i", times)

    @property
    def model(self) -> MaterialModel:
        return MaterialModel.PA66

    @property
    def branch_count(self) -> int:
        return len(self.E_i_MPa)


PhaseParams = Union[ThermoelasticParams, Pa66Params]


def params_to_dict(params: PhaseParams) -> Dict[str, Any]:
    data = {f.name: getattr(params, f.name) for f in fields(params) if f.init}
    data["model"] = params.model.value
    return data


def params_from_dict(data: Dict[str, Any]) -> PhaseParams:
    """
    Build phase parameters from a JSON object.

    Raises:
        SchemaError: If the model tag is unknown or a field is missing, extra or invalid.
    """
    data = dict(data)
    model = data.pop("model", None)
    if model == MaterialModel.THERMOELASTIC.value:
        cls = ThermoelasticParams
    elif model == MaterialModel.PA66.value:
        cls = Pa66Params
    else:
        raise SchemaError(
            f"Unknown material model {model!r}; expected one of {MaterialModel.get_values()}"
        )
    allowed = {f.name for f in fields(cls) if f.init}
    unknown = set(data) - allowed
    if unknown:
        raise SchemaError(f"Unknown {model} parameter(s): {sorted(unknown)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as e:
        raise SchemaError(f"Invalid {model} parameters: {e}") from e


def glass_params(**overrides) -> ThermoelasticParams:
    """E-glass fibre defaults."""
    return ThermoelasticParams(**{**GLASS_DEFAULTS, **overrides})


def pa66_params(**overrides) -> Pa66Params:
    """PA66 matrix defaults with twelve Maxwell branches."""
    return Pa66Params(**{**PA66_DEFAULTS, **overrides})


def heat_capacity(params: PhaseParams) -> float:
    """
    Volumetric heat capacity at constant strain, J m⁻³ K⁻¹. Both models use a constant c0.
    """
    return float(params.c0_J_per_m3K)


__all__ = [
    "ThermoelasticParams",
    "Pa66Params",
    "PhaseParams",
    "glass_params",
    "heat_capacity",
    "pa66_params",
    "params_from_dict",
    "params_to_dict",
]
