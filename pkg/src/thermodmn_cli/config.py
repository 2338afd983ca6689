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
Workflow configurations.

Each workflow reads a structured OmegaConf config: dataclass defaults, merged
with an optional JSON/YAML file, merged with the command-line flags that were
given explicitly.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Type, TypeVar

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from thermodmn_cli.constants.command_constants import DEFAULT_SEED, DEFAULT_THETA0_K
from thermodmn_cli.exceptions import SchemaError
from thermodmn_cli.utils import load_document

ConfigT = TypeVar("ConfigT")


@dataclass
class SamplingConfig:
    samples: int = 200
    seed: int = DEFAULT_SEED
    # bulk and shear moduli of both phases are log-uniform on this range
    modulus_range_GPa: List[float] = field(default_factory=lambda: [0.1, 100.0])
    max_perturbation: float = 0.995
    histogram_bins: int = 50


@dataclass
class FftConfig:
    resolution: int = 16
    shape: str = "sphere"
    volume_fraction: float = 0.16
    cell_length_um: float = 100.0
    tolerance: float = 1e-10
    max_iterations: int = 1000
    seed: int = DEFAULT_SEED


@dataclass
class TrainingConfig:
    depth: int = 8
    batch_size: int = 32
    p: float = 1.0
    q: float = 10.0
    penalty: float = 1.0e3
    alpha_max: float = 1.5e-2
    alpha_min: float = 1.5e-3
    period: int = 50
    decay: float = 0.999
    epochs: int = 500
    train_fraction: float = 0.9
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    seed: int = DEFAULT_SEED


@dataclass
class SolverConfig:
    tolerance: float = 1e-12
    max_iterations: int = 50
    max_backtrack: int = 8
    backtrack_factor: float = 0.5


@dataclass
class DriverConfig:
    solver: SolverConfig = field(default_factory=SolverConfig)
    stress_tolerance: float = 1e-9
    max_iterations: int = 25
    max_bisections: int = 4
    amplitude_mode: str = "component"
    theta0_K: float = DEFAULT_THETA0_K


@dataclass
class BenchConfig:
    depth: int = 8
    repeats: int = 5
    strain: float = 1e-3
    dt: float = 0.1
    seed: int = DEFAULT_SEED


def validate_training_config(config: TrainingConfig) -> TrainingConfig:
    if config.batch_size < 1:
        raise SchemaError(f"batch_size must be at least 1, got {config.batch_size}")
    if config.p < 1.0 or config.q < 1.0:
        raise SchemaError("Norm exponents p and q must be at least 1")
    if not 0.0 < config.decay <= 1.0:
        raise SchemaError(f"decay must lie in (0, 1], got {config.decay}")
    if not 0.0 < config.train_fraction <= 1.0:
        raise SchemaError(f"train_fraction must lie in (0, 1], got {config.train_fraction}")
    if config.depth < 1 or config.period < 1 or config.epochs < 0:
        raise SchemaError("depth and period must be positive, epochs non-negative")
    return config


def load_config(
    schema: Type[ConfigT],
    path: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ConfigT:
    """
    Build a config object from defaults, an optional file and explicit overrides.

    Args:
        schema: Dataclass type of the config.
        path (str): Optional JSON/YAML file with a subset of the fields.
        overrides (dict): Flag values; entries that are None were not given and are skipped.

    Returns:
        The merged config as an instance of `schema`.

    Raises:
        SchemaError: If the file holds unknown keys or values of the wrong type.
    """
    try:
        merged = OmegaConf.structured(schema)
        if path:
            document = load_document(path) or {}
            if not isinstance(document, dict):
                raise SchemaError(f"Config file {path} must hold a mapping")
            merged = OmegaConf.merge(merged, OmegaConf.create(document))
        given = {key: value for key, value in (overrides or {}).items() if value is not None}
        if given:
            merged = OmegaConf.merge(merged, OmegaConf.create(given))
        return OmegaConf.to_object(merged)
    except OmegaConfBaseException as e:
        raise SchemaError(f"Invalid {schema.__name__}: {e}") from e
