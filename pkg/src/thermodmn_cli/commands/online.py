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
"""Online commands: evaluating trained networks on load programs."""
import json
import logging
import sys
from typing import Optional

import click
from tabulate import tabulate

from thermodmn_cli.config import BenchConfig, DriverConfig, load_config
from thermodmn_cli.constants.command_constants import (
    CYCLE_COLUMNS,
    DEFAULT_THETA0_K,
    ETA_COLUMNS,
    NUMERICAL_LOGGERS,
    TRAJECTORY_COLUMNS,
    AmplitudeMode,
    OutputFormat,
    ProgramPreset,
    ThermalMode,
)
from thermodmn_cli.constants.exception_constants import ExitCode
from thermodmn_cli.driver.program import LoadProgram, load_program
from thermodmn_cli.service.benchmark_network import BenchmarkNetwork
from thermodmn_cli.service.evaluate_program import EvaluateProgram
from thermodmn_cli.service.validate_network import ValidateNetwork
from thermodmn_cli.storage.material_store import load_phases
from thermodmn_cli.storage.model_store import load_model
from thermodmn_cli.storage.tables import write_csv
from thermodmn_cli.templates.load_programs import build_preset, mandel_component, parse_direction
from thermodmn_cli.utils import (
    exit_on_error,
    progress_enabled,
    set_logging_level,
    setup_logger,
)
from thermodmn_cli.validators.input_validator import InputValidator

logger = setup_logger(__name__)


def enable_debug_logging():
    set_logging_level(logger, logging.DEBUG)
    for name in NUMERICAL_LOGGERS:
        set_logging_level(setup_logger(name), logging.DEBUG)


def program_options(command):
    """Options shared by the commands that run a load program through a model."""
    options = [
        click.option(
            "--model",
            type=click.Path(dir_okay=False),
            required=True,
            help="Required. Trained model JSON file.",
        ),
        click.option(
            "--phase1",
            type=click.Path(dir_okay=False),
            required=False,
            help="Optional. Material parameter JSON of phase 1 (even leaves). Defaults to glass.",
        ),
        click.option(
            "--phase2",
            type=click.Path(dir_okay=False),
            required=False,
            help="Optional. Material parameter JSON of phase 2 (odd leaves). Defaults to PA66.",
        ),
        click.option(
            "--program",
            type=click.Path(dir_okay=False),
            required=False,
            help="Optional. Load program JSON file. Exactly one of '--program' and '--preset' is required.",
        ),
        click.option(
            "--preset",
            type=click.Choice(ProgramPreset.get_values()),
            required=False,
            help="Optional. Built-in load program.",
        ),
        click.option(
            "--direction",
            type=click.Choice(["11", "22", "33", "12", "13", "23"]),
            default="22",
            help="Optional. Loading direction of the preset. Defaults to 22.",
        ),
        click.option(
            "--second-direction",
            type=click.Choice(["11", "22", "33", "12", "13", "23"]),
            default="11",
            help="Optional. Second loading direction of the biaxial preset. Defaults to 11.",
        ),
        click.option("--rate", type=click.FLOAT, required=False, help="Optional. Strain rate of the preset in 1/s."),
        click.option(
            "--amplitude",
            type=click.FLOAT,
            required=False,
            help="Optional. Peak strain of strain presets, stress amplitude in MPa of the cyclic preset.",
        ),
        click.option("--steps", type=click.IntRange(min=1), required=False, help="Optional. Load steps of the preset."),
        click.option("--cycles", type=click.IntRange(min=1), default=100, help="Optional. Cycles of the cyclic preset."),
        click.option("--frequency", type=click.FLOAT, default=10.0, help="Optional. Frequency of the cyclic preset in Hz."),
        click.option(
            "--thermal-mode",
            type=click.Choice([ThermalMode.ADIABATIC.value, ThermalMode.PRESCRIBED.value]),
            default=ThermalMode.ADIABATIC.value,
            help="Optional. Thermal boundary condition of the preset. Defaults to adiabatic.",
        ),
        click.option(
            "--theta0",
            type=click.FLOAT,
            required=False,
            help=f"Optional. Initial temperature of the preset in K. Defaults to {DEFAULT_THETA0_K}.",
        ),
        click.option("--config", "config_path", type=click.Path(), required=False, help="Optional. JSON/YAML driver config."),
        click.option("--seed", type=click.INT, required=False, help="Optional. Accepted for uniformity; evaluation is deterministic."),
        click.option("--quiet", is_flag=True, help="Suppress progress output"),
        click.option("--debug", is_flag=True, help="Enable debug mode"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def validate_program_inputs(model, phase1, phase2, program, preset):
    validator = InputValidator()
    valid = validator.validate_model_file(model) and validator.validate_program_source(program, preset)
    for path in (phase1, phase2):
        if valid and path:
            valid = validator.validate_phase_file(path)
    if not valid:
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))


def resolve_program(program: Optional[str], preset: Optional[str], **preset_arguments) -> LoadProgram:
    if program:
        return load_program(program)
    return build_preset(preset, **preset_arguments)


def echo_summary(summary, output_format: str):
    if output_format == OutputFormat.JSON.value:
        click.echo(json.dumps(summary, indent=4, default=str))
    else:
        rows = summary if isinstance(summary, list) else [summary]
        click.echo(tabulate(rows, headers="keys", tablefmt="presto"))


@click.command()
@program_options
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    required=True,
    help="Required. Trajectory CSV file.",
)
@click.option(
    "--cycles-output",
    type=click.Path(dir_okay=False),
    required=False,
    help="Optional. CSV file for per-cycle records; needs a program with a cycle period.",
)
@click.option(
    "--amplitude-mode",
    type=click.Choice(AmplitudeMode.get_values()),
    required=False,
    help="Optional. Strain amplitude of cycle records: one component, or extreme eigenvalues.",
)
def evaluate(
    model: str,
    phase1: Optional[str],
    phase2: Optional[str],
    program: Optional[str],
    preset: Optional[str],
    direction: str,
    second_direction: str,
    rate: Optional[float],
    amplitude: Optional[float],
    steps: Optional[int],
    cycles: int,
    frequency: float,
    thermal_mode: str,
    theta0: Optional[float],
    config_path: Optional[str],
    seed: Optional[int],
    quiet: bool,
    debug: bool,
    output: str,
    cycles_output: Optional[str],
    amplitude_mode: Optional[str],
):
    """
    Run a load program through a trained network
    """
    if debug:
        enable_debug_logging()

    validate_program_inputs(model, phase1, phase2, program, preset)
    outputs = [output] + ([cycles_output] if cycles_output else [])
    if not all(InputValidator().validate_output_path(path) for path in outputs):
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))

    try:
        config = load_config(DriverConfig, config_path, {"amplitude_mode": amplitude_mode, "theta0_K": theta0})
        load = resolve_program(
            program,
            preset,
            direction=direction,
            second_direction=second_direction,
            rate=rate,
            amplitude=amplitude,
            steps=steps,
            cycles=cycles,
            frequency=frequency,
            theta0_K=config.theta0_K,
            thermal_mode=thermal_mode,
        )
        component = mandel_component(parse_direction(direction))
        trajectory, records = EvaluateProgram().evaluate_program(
            load_model(model), load_phases(phase1, phase2), load, config, component, progress_enabled(quiet)
        )
        write_csv(output, TRAJECTORY_COLUMNS, trajectory.rows())
        if cycles_output:
            write_csv(cycles_output, CYCLE_COLUMNS, [record.as_row() for record in records])
        if not quiet:
            click.echo(f"Wrote {trajectory.steps} load steps to {output}")
            if records:
                click.echo(tabulate([record.as_row() for record in records[-5:]], CYCLE_COLUMNS, tablefmt="presto"))
    except Exception as e:
        exit_on_error(logger, "evaluate the load program", e)


@click.command()
@program_options
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    required=False,
    help="Optional. CSV file for the relative error table.",
)
@click.option(
    "--tolerance",
    type=click.FLOAT,
    default=1e-8,
    help="Optional. Largest accepted relative error. Defaults to 1e-8.",
)
@click.option(
    "--output-format",
    type=click.Choice(OutputFormat.get_values()),
    default=OutputFormat.TABLE.value,
    help="Optional. The output format. Available values are `table` and `json`. The default value is `table`.",
)
def validate(
    model: str,
    phase1: Optional[str],
    phase2: Optional[str],
    program: Optional[str],
    preset: Optional[str],
    direction: str,
    second_direction: str,
    rate: Optional[float],
    amplitude: Optional[float],
    steps: Optional[int],
    cycles: int,
    frequency: float,
    thermal_mode: str,
    theta0: Optional[float],
    config_path: Optional[str],
    seed: Optional[int],
    quiet: bool,
    debug: bool,
    output: Optional[str],
    tolerance: float,
    output_format: str,
):
    """
    Compare a trained network with its recursive laminate evaluation
    """
    if debug:
        enable_debug_logging()

    validate_program_inputs(model, phase1, phase2, program, preset)
    if output and not InputValidator().validate_output_path(output):
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))

    passed = False
    try:
        config = load_config(DriverConfig, config_path, {"theta0_K": theta0})
        load = resolve_program(
            program,
            preset,
            direction=direction,
            second_direction=second_direction,
            rate=rate,
            amplitude=amplitude,
            steps=steps,
            cycles=cycles,
            frequency=frequency,
            theta0_K=config.theta0_K,
            thermal_mode=thermal_mode,
        )
        records, passed = ValidateNetwork().validate_network(
            load_model(model),
            load_phases(phase1, phase2),
            load,
            config,
            tolerance,
            progress_enabled(quiet),
            component=mandel_component(parse_direction(direction)),
        )
        if output:
            write_csv(output, ETA_COLUMNS, [record.as_row() for record in records])
        echo_summary([dict(zip(ETA_COLUMNS, record.as_row())) for record in records], output_format)
    except Exception as e:
        exit_on_error(logger, "validate the network", e)

    if not passed:
        logger.error(f"Relative errors exceed the tolerance {tolerance:.1e}")
        sys.exit(int(ExitCode.UNEXPECTED))


@click.command()
@click.option("--depth", type=click.IntRange(min=1), required=False, help="Optional. Network depth. Defaults to 8.")
@click.option("--repeats", type=click.IntRange(min=1), required=False, help="Optional. Timed evaluations. Defaults to 5.")
@click.option(
    "--output-format",
    type=click.Choice(OutputFormat.get_values()),
    default=OutputFormat.TABLE.value,
    help="Optional. The output format. Available values are `table` and `json`. The default value is `table`.",
)
@click.option("--config", "config_path", type=click.Path(), required=False, help="Optional. JSON/YAML benchmark config.")
@click.option("--seed", type=click.INT, required=False, help="Optional. Seed of the random topology.")
@click.option("--debug", is_flag=True, help="Enable debug mode")
def bench(
    depth: Optional[int],
    repeats: Optional[int],
    output_format: str,
    config_path: Optional[str],
    seed: Optional[int],
    debug: bool,
):
    """
    Time single evaluations of a random network
    """
    if debug:
        enable_debug_logging()

    try:
        config = load_config(BenchConfig, config_path, {"depth": depth, "repeats": repeats, "seed": seed})
        echo_summary(BenchmarkNetwork().benchmark_network(config), output_format)
    except Exception as e:
        exit_on_error(logger, "benchmark the network", e)
