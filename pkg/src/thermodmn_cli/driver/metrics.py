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
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.integrate import trapezoid

from thermodmn_cli.constants.command_constants import AmplitudeMode
from thermodmn_cli.driver.runner import Trajectory
from thermodmn_cli.tensor.mandel import MANDEL_FACTORS, from_mandel
from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)

COMPONENT_LABELS = ("11", "22", "33", "12", "13", "23")
# fraction of a step below which a time counts as a cycle boundary
BOUNDARY_TOLERANCE = 1e-6
# reference stress components below this share of the largest one are control noise
NEGLIGIBLE_STRESS = 1e-6


@dataclass
class CycleRecord:
    cycle: int
    eps_ampl: float
    dtheta_cycle: float
    dissipation_cycle: float

    def as_row(self) -> list:
        return [self.cycle, self.eps_ampl, self.dtheta_cycle, self.dissipation_cycle]


@dataclass
class EtaRecord:
    quantity: str
    component: str
    eta_mean: float
    eta_max: float
    skipped: bool

    def as_row(self) -> list:
        return [self.quantity, self.component, self.eta_mean, self.eta_max, self.skipped]


def strain_amplitude(strain: np.ndarray, component: int, mode: str) -> float:
    """
    Half the range of one tensor component, or half the spread between the
    largest and the smallest principal strain over the window.
    """
    if mode == AmplitudeMode.EIGEN.value:
        eigenvalues = np.linalg.eigvalsh(from_mandel(strain))
        return 0.5 * float(np.max(eigenvalues[:, -1]) - np.min(eigenvalues[:, 0]))
    if mode != AmplitudeMode.COMPONENT.value:
        raise ValueError(f"Amplitude mode must be one of {AmplitudeMode.get_values()}, got {mode!r}")
    values = strain[:, component] / MANDEL_FACTORS[component]
    return 0.5 * float(np.max(values) - np.min(values))


def cyclic_metrics(
    trajectory: Trajectory,
    period: float,
    component: int = 1,
    mode: str = AmplitudeMode.COMPONENT.value,
) -> List[CycleRecord]:
    """
    Per-cycle strain amplitude, mean temperature change (1/T_c) ∫ Δθ̄ dt and
    dissipated energy ∫ 𝒟̄ dt, integrals by the trapezoidal rule.

    Args:
        trajectory (Trajectory): Run spanning whole cycles from t = 0.
        period (float): Cycle duration T_c in s.
        component (int): Mandel index of the strain component for the component amplitude.
        mode (str): "component" or "eigen".

    Returns:
        List[CycleRecord]: One record per complete cycle; a partial trailing cycle is dropped.
    """
    if period <= 0.0:
        raise ValueError(f"Cycle period must be positive, got {period}")
    time = trajectory.time
    tolerance = BOUNDARY_TOLERANCE * float(np.min(np.diff(time))) if time.size > 1 else 0.0
    complete = int(np.floor((time[-1] + tolerance) / period))
    if time[-1] - complete * period > tolerance:
        logger.warning(
            f"Dropping the partial trailing cycle ({time[-1] - complete * period:.4g} s of {period:.4g} s)"
        )
    delta_theta = trajectory.theta - trajectory.theta[0]
    records = []
    for cycle in range(1, complete + 1):
        window = (time >= (cycle - 1) * period - tolerance) & (time <= cycle * period + tolerance)
        t = time[window]
        records.append(
            CycleRecord(
                cycle=cycle,
                eps_ampl=strain_amplitude(trajectory.strain[window], component, mode),
                dtheta_cycle=float(trapezoid(delta_theta[window], t) / period),
                dissipation_cycle=float(trapezoid(trajectory.dissipation[window], t)),
            )
        )
    return records


def _relative_errors(
    quantity: str, component: str, values: np.ndarray, reference: np.ndarray, floor: float = 0.0
) -> EtaRecord:
    normalizer = float(np.max(np.abs(reference))) if reference.size else 0.0
    if normalizer <= floor:
        logger.warning(f"Reference {quantity} {component} vanishes; skipping its error")
        return EtaRecord(quantity, component, float("nan"), float("nan"), True)
    eta = np.abs(values - reference) / normalizer
    return EtaRecord(quantity, component, float(np.mean(eta)), float(np.max(eta)), False)


def error_metrics(trajectory: Trajectory, reference: Trajectory) -> List[EtaRecord]:
    """
    η(t) = |q(t) - q_ref(t)| / max_t |q_ref| per stress component, temperature
    change, coupling term and dissipation, reduced by time mean and time
    maximum over the steps after the initial state. Stress components whose
    reference stays below a millionth of the largest reference stress are
    skipped.

    Raises:
        ValueError: If the time grids differ.
    """
    if trajectory.time.shape != reference.time.shape or not np.allclose(
        trajectory.time, reference.time, rtol=1e-12, atol=0.0
    ):
        raise ValueError("Error metrics need identical time grids")
    steps = slice(1, None)
    floor = NEGLIGIBLE_STRESS * float(np.max(np.abs(reference.stress[steps]), initial=0.0))
    records = [
        _relative_errors(
            "stress", label, trajectory.stress[steps, index], reference.stress[steps, index], floor
        )
        for index, label in enumerate(COMPONENT_LABELS)
    ]
    records.append(
        _relative_errors(
            "dtheta",
            "-",
            trajectory.theta[steps] - trajectory.theta[0],
            reference.theta[steps] - reference.theta[0],
        )
    )
    records.append(_relative_errors("rho", "-", trajectory.coupling[steps], reference.coupling[steps]))
    records.append(_relative_errors("dissipation", "-", trajectory.dissipation[steps], reference.dissipation[steps]))
    return records


def cycle_error_metrics(records: List[CycleRecord], reference: List[CycleRecord]) -> List[EtaRecord]:
    """
    η per cycle of the strain amplitude, the mean temperature change and the
    dissipated energy, reduced by mean and maximum over the cycles.

    Raises:
        ValueError: If the cycle counts differ.
    """
    if len(records) != len(reference):
        raise ValueError(f"Cycle error metrics need equal cycle counts, got {len(records)} and {len(reference)}")
    records_rows = np.array([record.as_row() for record in records], dtype=float).reshape(-1, 4)
    reference_rows = np.array([record.as_row() for record in reference], dtype=float).reshape(-1, 4)
    return [
        _relative_errors(quantity, "-", records_rows[:, column], reference_rows[:, column])
        for column, quantity in enumerate(("eps_ampl", "dtheta_cycle", "dissipation_cycle"), start=1)
    ]
