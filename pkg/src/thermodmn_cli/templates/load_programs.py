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
Preset load programs: monotonic, hysteresis and biaxial strain programs
under uniaxial-stress mixed control, and stress-controlled cycling.

Directions are 1-based index pairs such as (2, 2) or (1, 2). Shear targets
refer to the tensor component ε_ij, entering Mandel coordinates with √2.
"""
from typing import Optional, Sequence, Tuple

import numpy as np

from thermodmn_cli.constants.command_constants import (
    DEFAULT_THETA0_K,
    ControlFlag,
    ProgramPreset,
    ThermalMode,
)
from thermodmn_cli.driver.program import LoadProgram, ThermalBoundary, check_program
from thermodmn_cli.tensor.mandel import MANDEL_FACTORS, MANDEL_INDICES

Direction = Tuple[int, int]


def preset_strain_rates() -> np.ndarray:
    """Four strain rates logarithmically spaced from 5e-4 to 5e-1 1/s."""
    return np.logspace(np.log10(5e-4), np.log10(5e-1), 4)


def mandel_component(direction: Sequence[int]) -> int:
    pair = tuple(sorted(int(i) - 1 for i in direction))
    if pair not in MANDEL_INDICES:
        raise ValueError(f"Direction must be a pair of indices in 1..3, got {tuple(direction)}")
    return MANDEL_INDICES.index(pair)


def _mixed_program(
    strain_paths: np.ndarray,
    components: Sequence[int],
    dt: float,
    theta0_K: float,
    thermal_mode: str,
) -> LoadProgram:
    rows = strain_paths.shape[0]
    control = [ControlFlag.STRESS.value] * 6
    strain = np.zeros((rows, 6))
    for column, component in enumerate(components):
        control[component] = ControlFlag.STRAIN.value
        strain[:, component] = strain_paths[:, column] * MANDEL_FACTORS[component]
    return check_program(
        LoadProgram(
            dt=np.full(rows - 1, dt),
            control=control,
            strain=strain,
            stress=np.zeros((rows, 6)),
            theta0_K=theta0_K,
            thermal=ThermalBoundary(mode=thermal_mode),
        )
    )


def monotonic_program(
    direction: Direction,
    rate: float,
    strain: float = 0.04,
    steps: int = 40,
    theta0_K: float = DEFAULT_THETA0_K,
    thermal_mode: str = ThermalMode.ADIABATIC.value,
) -> LoadProgram:
    """Strain ramp in one component at constant rate, all other stresses zero."""
    if rate <= 0.0 or steps < 1:
        raise ValueError("Strain rate and step count must be positive")
    path = np.linspace(0.0, strain, steps + 1)[:, None]
    return _mixed_program(path, [mandel_component(direction)], abs(strain) / (rate * steps), theta0_K, thermal_mode)


def hysteresis_program(
    direction: Direction,
    rate: float,
    amplitude: float = 0.02,
    steps: int = 80,
    theta0_K: float = DEFAULT_THETA0_K,
    thermal_mode: str = ThermalMode.ADIABATIC.value,
) -> LoadProgram:
    """0 → +A → -A → 0 at constant strain rate."""
    if rate <= 0.0 or steps < 4 or steps % 4:
        raise ValueError("Hysteresis programs need a positive rate and a step count divisible by 4")
    quarter = steps // 4
    path = np.concatenate(
        [
            np.linspace(0.0, amplitude, quarter + 1),
            np.linspace(amplitude, -amplitude, 2 * quarter + 1)[1:],
            np.linspace(-amplitude, 0.0, quarter + 1)[1:],
        ]
    )[:, None]
    dt = 4.0 * amplitude / (rate * steps)
    return _mixed_program(path, [mandel_component(direction)], dt, theta0_K, thermal_mode)


def biaxial_program(
    pair: Tuple[Direction, Direction],
    rate: float,
    strain: float = 0.02,
    steps: int = 40,
    theta0_K: float = DEFAULT_THETA0_K,
    thermal_mode: str = ThermalMode.ADIABATIC.value,
) -> LoadProgram:
    """First component to `strain` in `steps` steps, then the second while the first is held."""
    if rate <= 0.0 or steps < 1:
        raise ValueError("Strain rate and step count must be positive")
    first, second = (mandel_component(direction) for direction in pair)
    if first == second:
        raise ValueError("Biaxial programs need two different components")
    ramp = np.linspace(0.0, strain, steps + 1)
    path = np.zeros((2 * steps + 1, 2))
    path[: steps + 1, 0] = ramp
    path[steps + 1 :, 0] = strain
    path[steps:, 1] = ramp
    return _mixed_program(path, [first, second], abs(strain) / (rate * steps), theta0_K, thermal_mode)


def cyclic_program(
    direction: Direction,
    amplitude_MPa: float,
    frequency: float = 10.0,
    steps_per_cycle: int = 20,
    cycles: int = 100,
    theta0_K: float = DEFAULT_THETA0_K,
    thermal_mode: str = ThermalMode.ADIABATIC.value,
) -> LoadProgram:
    """Stress-controlled sinusoid σ(t) = A sin(2π t / T_c), all other stresses zero."""
    if frequency <= 0.0 or steps_per_cycle < 2 or cycles < 1:
        raise ValueError("Cyclic programs need a positive frequency, 2+ steps per cycle and 1+ cycles")
    component = mandel_component(direction)
    period = 1.0 / frequency
    steps = steps_per_cycle * cycles
    dt = period / steps_per_cycle
    times = np.arange(steps + 1) * dt
    stress = np.zeros((steps + 1, 6))
    stress[:, component] = amplitude_MPa * np.sin(2.0 * np.pi * times / period) * MANDEL_FACTORS[component]
    stress[0] = 0.0
    return check_program(
        LoadProgram(
            dt=np.full(steps, dt),
            control=[ControlFlag.STRESS.value] * 6,
            strain=np.zeros((steps + 1, 6)),
            stress=stress,
            theta0_K=theta0_K,
            thermal=ThermalBoundary(mode=thermal_mode),
            cycle_period_s=period,
        )
    )


def parse_direction(text: str) -> Direction:
    """'22' or '2,2' → (2, 2)."""
    digits = [character for character in str(text) if character.isdigit()]
    if len(digits) != 2:
        raise ValueError(f"Direction must name two indices such as '22' or '12', got {text!r}")
    return int(digits[0]), int(digits[1])


def build_preset(
    preset: str,
    direction: str = "22",
    second_direction: str = "11",
    rate: Optional[float] = None,
    amplitude: Optional[float] = None,
    steps: Optional[int] = None,
    cycles: int = 100,
    frequency: float = 10.0,
    theta0_K: float = DEFAULT_THETA0_K,
    thermal_mode: str = ThermalMode.ADIABATIC.value,
) -> LoadProgram:
    """
    Program of a named preset with its defaults filled in. `amplitude` is a
    strain for the strain programs and a stress in MPa for cyclic programs.
    """
    rate = float(preset_strain_rates()[0]) if rate is None else rate
    common = {"theta0_K": theta0_K, "thermal_mode": thermal_mode}
    if preset == ProgramPreset.MONOTONIC.value:
        return monotonic_program(
            parse_direction(direction), rate, 0.04 if amplitude is None else amplitude, steps or 40, **common
        )
    if preset == ProgramPreset.HYSTERESIS.value:
        return hysteresis_program(
            parse_direction(direction), rate, 0.02 if amplitude is None else amplitude, steps or 80, **common
        )
    if preset == ProgramPreset.BIAXIAL.value:
        return biaxial_program(
            (parse_direction(direction), parse_direction(second_direction)),
            rate,
            0.02 if amplitude is None else amplitude,
            steps or 40,
            **common,
        )
    if preset == ProgramPreset.CYCLIC.value:
        return cyclic_program(
            parse_direction(direction),
            40.0 if amplitude is None else amplitude,
            frequency,
            steps or 20,
            cycles,
            **common,
        )
    raise ValueError(f"Preset must be one of {ProgramPreset.get_values()}, got {preset!r}")
