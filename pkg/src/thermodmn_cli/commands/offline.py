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
"""Offline commands: data generation and network training."""
import logging
import sys
from typing import Optional, Tuple

import click

from thermodmn_cli.config import FftConfig, SamplingConfig, TrainingConfig, load_config, validate_training_config
from thermodmn_cli.constants.command_constants import (
    HISTOGRAM_COLUMNS,
    HISTORY_COLUMNS,
    NUMERICAL_LOGGERS,
    InclusionShape,
)
from thermodmn_cli.constants.exception_constants import ExitCode
from thermodmn_cli.service.homogenize_dataset import HomogenizeDataset
from thermodmn_cli.service.sample_dataset import SampleDataset
from thermodmn_cli.service.train_network import TrainNetwork
from thermodmn_cli.storage.dataset_store import load_dataset, save_dataset
from thermodmn_cli.storage.model_store import save_model
from thermodmn_cli.storage.tables import write_csv
from thermodmn_cli.storage.voxel_store import load_voxels, save_voxels
from thermodmn_cli.utils import (
    config_digest,
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


def parse_float_list(value: Optional[str]) -> Tuple[float, ...]:
    if not value:
        return ()
    try:
        return tuple(float(item) for item in value.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma separated numbers, got {value!r}")


@click.command()
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    required=True,
    help="Required. The data set JSON file to write the stiffness pairs to.",
)
@click.option(
    "--samples",
    type=click.IntRange(min=1),
    required=False,
    help="Optional. Number of stiffness pairs to draw. Defaults to 200.",
)
@click.option(
    "--histogram",
    type=click.Path(dir_okay=False),
    required=False,
    help="Optional. CSV file for the histogram of material contrasts, log-spaced bins.",
)
@click.option(
    "--bins",
    type=click.IntRange(min=1),
    required=False,
    help="Optional. Number of histogram bins. Defaults to 50.",
)
@click.option("--config", "config_path", type=click.Path(), required=False, help="Optional. JSON/YAML sampling config.")
@click.option("--seed", type=click.INT, required=False, help="Optional. Seed of the random generator.")
@click.option("--quiet", is_flag=True, help="Suppress progress output")
@click.option("--debug", is_flag=True, help="Enable debug mode")
def sample(
    output: str,
    samples: Optional[int],
    histogram: Optional[str],
    bins: Optional[int],
    config_path: Optional[str],
    seed: Optional[int],
    quiet: bool,
    debug: bool,
):
    """
    Draw random pairs of phase stiffnesses for training
    """
    if debug:
        enable_debug_logging()

    validator = InputValidator()
    outputs = [output] + ([histogram] if histogram else [])
    if not all(validator.validate_output_path(path) for path in outputs):
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))

    try:
        config = load_config(
            SamplingConfig, config_path, {"samples": samples, "seed": seed, "histogram_bins": bins}
        )
        logger.debug(f"Sampling with config {config}")
        pairs, edges, counts = SampleDataset().sample_dataset(config)
        save_dataset(output, pairs)
        if histogram:
            rows = [[lower, upper, count] for lower, upper, count in zip(edges[:-1], edges[1:], counts)]
            write_csv(histogram, HISTOGRAM_COLUMNS, rows)
        if not quiet:
            click.echo(f"Wrote {len(pairs)} stiffness pairs to {output}")
    except Exception as e:
        exit_on_error(logger, "sample stiffness pairs", e)


@click.command()
@click.option(
    "--dataset",
    type=click.Path(dir_okay=False),
    required=True,
    help="Required. The data set JSON file written by 'thermodmn sample'.",
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    required=True,
    help="Required. The data set JSON file to write, with effective stiffnesses filled in.",
)
@click.option(
    "--shape",
    type=click.Choice(InclusionShape.get_values()),
    required=False,
    help="Optional. Inclusion shape of the generated microstructure. Defaults to sphere.",
)
@click.option("--resolution", type=click.INT, required=False, help="Optional. Voxels per edge, at most 64.")
@click.option(
    "--volume-fraction",
    type=click.FLOAT,
    required=False,
    help="Optional. Volume fraction of phase 1 (voxel id 0), the inclusion or first layer.",
)
@click.option("--tolerance", type=click.FLOAT, required=False, help="Optional. FFT equilibrium tolerance.")
@click.option("--max-iterations", type=click.IntRange(min=1), required=False, help="Optional. FFT iteration budget.")
@click.option(
    "--voxels",
    type=click.Path(dir_okay=False),
    required=False,
    help="Optional. Voxel grid file to homogenize instead of generating one.",
)
@click.option(
    "--save-voxels",
    "save_voxels_path",
    type=click.Path(dir_okay=False),
    required=False,
    help="Optional. Write the generated voxel grid and its JSON sidecar to this file.",
)
@click.option("--config", "config_path", type=click.Path(), required=False, help="Optional. JSON/YAML FFT config.")
@click.option("--seed", type=click.INT, required=False, help="Optional. Seed recorded with the grid generator.")
@click.option("--quiet", is_flag=True, help="Suppress progress output")
@click.option("--debug", is_flag=True, help="Enable debug mode")
def homogenize(
    dataset: str,
    output: str,
    shape: Optional[str],
    resolution: Optional[int],
    volume_fraction: Optional[float],
    tolerance: Optional[float],
    max_iterations: Optional[int],
    voxels: Optional[str],
    save_voxels_path: Optional[str],
    config_path: Optional[str],
    seed: Optional[int],
    quiet: bool,
    debug: bool,
):
    """
    Compute FFT effective stiffnesses of a data set
    """
    if debug:
        enable_debug_logging()

    validator = InputValidator()
    if not validator.validate_dataset_file(dataset) or not validator.validate_output_path(output):
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))
    if voxels and not validator.validate_file_exists(voxels, "voxel grid"):
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))

    try:
        config = load_config(
            FftConfig,
            config_path,
            {
                "shape": shape,
                "resolution": resolution,
                "volume_fraction": volume_fraction,
                "tolerance": tolerance,
                "max_iterations": max_iterations,
                "seed": seed,
            },
        )
        if not voxels and not validator.validate_grid_arguments(
            config.shape, config.resolution, config.volume_fraction
        ):
            sys.exit(int(ExitCode.IO_SCHEMA_ERROR))

        service = HomogenizeDataset()
        grid = load_voxels(voxels) if voxels else service.build_grid(config)
        if save_voxels_path:
            save_voxels(save_voxels_path, grid)
        filled = service.homogenize_dataset(load_dataset(dataset), config, grid, progress_enabled(quiet))
        save_dataset(output, filled)
        if not quiet:
            click.echo(f"Homogenized {len(filled)} samples on a {grid.dims} grid into {output}")
    except Exception as e:
        exit_on_error(logger, "homogenize the data set", e)


@click.command()
@click.option(
    "--dataset",
    type=click.Path(dir_okay=False),
    required=True,
    help="Required. Homogenized data set JSON file.",
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    required=True,
    help="Required. The model JSON file to write the trained network to.",
)
@click.option(
    "--history",
    type=click.Path(dir_okay=False),
    required=False,
    help="Optional. CSV file for the per-epoch training history.",
)
@click.option("--depth", type=click.IntRange(min=1), required=False, help="Optional. Network depth. Defaults to 8.")
@click.option("--epochs", type=click.IntRange(min=0), required=False, help="Optional. Number of epochs.")
@click.option("--batch-size", type=click.IntRange(min=1), required=False, help="Optional. Mini-batch size.")
@click.option("--alpha-max", type=click.FLOAT, required=False, help="Optional. Maximum learning rate.")
@click.option(
    "--sweep",
    type=click.STRING,
    required=False,
    help="Optional. Comma separated maximum learning rates. Trains once per value and prints the "
    "final validation error of each instead of writing a model.",
)
@click.option("--config", "config_path", type=click.Path(), required=False, help="Optional. JSON/YAML training config.")
@click.option("--seed", type=click.INT, required=False, help="Optional. Seed of initialization, split and shuffling.")
@click.option("--quiet", is_flag=True, help="Suppress progress output")
@click.option("--debug", is_flag=True, help="Enable debug mode")
def train(
    dataset: str,
    output: str,
    history: Optional[str],
    depth: Optional[int],
    epochs: Optional[int],
    batch_size: Optional[int],
    alpha_max: Optional[float],
    sweep: Optional[str],
    config_path: Optional[str],
    seed: Optional[int],
    quiet: bool,
    debug: bool,
):
    """
    Fit a deep material network to a homogenized data set
    """
    if debug:
        enable_debug_logging()

    validator = InputValidator()
    if not validator.validate_dataset_file(dataset, require_effective=True):
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))
    outputs = [output] + ([history] if history else [])
    if not all(validator.validate_output_path(path) for path in outputs):
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))
    sweep_values = parse_float_list(sweep)
    if sweep and not validator.validate_positive_values(sweep_values, "--sweep"):
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))

    try:
        config = validate_training_config(
            load_config(
                TrainingConfig,
                config_path,
                {
                    "depth": depth,
                    "epochs": epochs,
                    "batch_size": batch_size,
                    "alpha_max": alpha_max,
                    "seed": seed,
                },
            )
        )
        samples = load_dataset(dataset)
        service = TrainNetwork()
        if sweep_values:
            results = service.sweep(config, samples, sweep_values, progress_enabled(quiet))
            for alpha, error in results:
                click.echo(f"alpha_max={alpha:.4e} e_mean_val={error:.6e}")
            return

        result = service.train_network(config, samples, progress_enabled(quiet))
        save_model(output, result.topology, config_digest(config))
        if history:
            write_csv(history, HISTORY_COLUMNS, [record.as_row() for record in result.history])
        if not quiet:
            click.echo(
                f"Trained depth {config.depth} network, weight sum {result.weight_sum:.6f}, "
                f"validation error {result.validation_error:.6e}; model written to {output}"
            )
    except Exception as e:
        exit_on_error(logger, "train the network", e)
