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
Time-discrete macroscopic load histories of a material point.

Every component is either strain- or stress-controlled for the whole
program; targets are given per step plus the initial row, in Mandel order.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from thermodmn_cli.constants.command_constants import DEFAULT_THETA0_K, ControlFlag, ThermalMode
from thermodmn_cli.exceptions import SchemaError
from thermodmn_cli.utils import load_document

PROGRAM_KEYS = {"dt", "steps", "theta0_K", "thermal", "control", "strain", "stress", "cycle_period_s"}


@dataclass
class ThermalBoundary:
    mode: str = ThermalMode.ADIABATIC.value
    theta_K: Optional[np.ndarray] = None
    h_W_per_m2K: float = 0.0
    area_per_volume_per_m: float = 0.0

    @property
    def film_coefficient(self) -> float:
        """h A/V in MPa s⁻¹ K⁻¹."""
        return self.h_W_per_m2K * self.area_per_volume_per_m * 1e-6


@dataclass
class LoadProgram:
    dt: np.ndarray
    control: List[str]
    strain: np.ndarray
    stress: np.ndarray
    theta0_K: float = DEFAULT_THETA0_K
    thermal: ThermalBoundary = field(default_factory=ThermalBoundary)
    cycle_period_s: Optional[float] = None

    @property
    def steps(self) -> int:
        return self.dt.size

    @property
    def times(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.dt)])

    @property
    def stress_controlled(self) -> np.ndarray:
        return np.array([flag == ControlFlag.STRESS.value for flag in self.control])

    def initial_theta(self) -> float:
        if self.thermal.mode == ThermalMode.PRESCRIBED.value:
            return float(self.thermal.theta_K[0])
        return self.theta0_K


def _rows(data: Any, steps: int, name: str) -> np.ndarray:
    if data is None:
        return np.zeros((steps + 1, 6))
    rows = np.asarray(data, dtype=float)
    if rows.shape != (steps + 1, 6):
        raise SchemaError(f"'{name}' must hold {steps + 1} rows of 6 Mandel components, got shape {rows.shape}")
    return rows


def check_program(program: LoadProgram) -> LoadProgram:
    """
    Raises:
        SchemaError: On inconsistent shapes, flags or thermal settings.
    """
    if program.steps < 1:
        raise SchemaError("A load program needs at least one step")
    if np.any(program.dt <= 0.0) or not np.all(np.isfinite(program.dt)):
        raise SchemaError("Time increments must be positive")
    if len(program.control) != 6 or any(flag not in ControlFlag.get_values() for flag in program.control):
        raise SchemaError(f"'control' must list 6 flags out of {ControlFlag.get_values()}")
    for name in ("strain", "stress"):
        rows = getattr(program, name)
        if rows.shape != (program.steps + 1, 6) or not np.all(np.isfinite(rows)):
            raise SchemaError(f"'{name}' must hold {program.steps + 1} finite rows of 6 components")
    if program.theta0_K <= 0.0:
        raise SchemaError(f"theta0_K must be positive, got {program.theta0_K}")
    thermal = program.thermal
    if thermal.mode not in ThermalMode.get_values():
        raise SchemaError(f"Thermal mode must be one of {ThermalMode.get_values()}, got {thermal.mode!r}")
    if thermal.mode == ThermalMode.PRESCRIBED.value:
        if thermal.theta_K is None or thermal.theta_K.shape != (program.steps + 1,):
            raise SchemaError(f"Prescribed temperature needs {program.steps + 1} values of theta_K")
        if np.any(thermal.theta_K <= 0.0):
            raise SchemaError("Prescribed temperatures must be positive")
    if thermal.mode == ThermalMode.CONVECTION.value and (
        thermal.h_W_per_m2K < 0.0 or thermal.area_per_volume_per_m < 0.0
    ):
        raise SchemaError("Film coefficient and area per volume must be non-negative")
    if program.cycle_period_s is not None and program.cycle_period_s <= 0.0:
        raise SchemaError("cycle_period_s must be positive")
    if np.any(program.strain[0][~program.stress_controlled] != 0.0) or np.any(
        program.stress[0][program.stress_controlled] != 0.0
    ):
        raise SchemaError("Programs start from the unloaded state; the initial targets must be zero")
    return program


def program_from_dict(data: Dict[str, Any]) -> LoadProgram:
    if not isinstance(data, dict):
        raise SchemaError("A load program must be a JSON object")
    unknown = set(data) - PROGRAM_KEYS
    if unknown:
        raise SchemaError(f"Unknown load program key(s): {sorted(unknown)}")
    try:
        steps = int(data["steps"])
        dt = np.broadcast_to(np.asarray(data["dt"], dtype=float), (steps,)).copy()
        thermal_data = dict(data.get("thermal") or {})
        theta = thermal_data.get("theta_K")
        thermal = ThermalBoundary(
            mode=thermal_data.get("mode", ThermalMode.ADIABATIC.value),
            theta_K=None if theta is None else np.asarray(theta, dtype=float),
            h_W_per_m2K=float(thermal_data.get("h_W_per_m2K", 0.0)),
            area_per_volume_per_m=float(thermal_data.get("area_per_volume_per_m", 0.0)),
        )
        program = LoadProgram(
            dt=dt,
            control=[str(flag) for flag in data["control"]],
            strain=_rows(data.get("strain"), steps, "strain"),
            stress=_rows(data.get("stress"), steps, "stress"),
            theta0_K=float(data.get("theta0_K", DEFAULT_THETA0_K)),
            thermal=thermal,
            cycle_period_s=None if data.get("cycle_period_s") is None else float(data["cycle_period_s"]),
        )
    except KeyError as e:
        raise SchemaError(f"Load program misses key {e}") from e
    except (TypeError, ValueError) as e:
        raise SchemaError(f"Invalid load program: {e}") from e
    return check_program(program)


def program_to_dict(program: LoadProgram) -> Dict[str, Any]:
    thermal = {
        "mode": program.thermal.mode,
        "h_W_per_m2K": program.thermal.h_W_per_m2K,
        "area_per_volume_per_m": program.thermal.area_per_volume_per_m,
    }
    if program.thermal.theta_K is not None:
        thermal["theta_K"] = program.thermal.theta_K.tolist()
    return {
        "dt": program.dt.tolist(),
        "steps": program.steps,
        "theta0_K": program.theta0_K,
        "thermal": thermal,
        "control": list(program.control),
        "strain": program.strain.tolist(),
        "stress": program.stress.tolist(),
        "cycle_period_s": program.cycle_period_s,
    }


def load_program(path: str) -> LoadProgram:
    return program_from_dict(load_document(path))
