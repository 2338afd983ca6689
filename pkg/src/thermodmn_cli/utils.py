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
import hashlib
import json
import logging
import sys
from dataclasses import asdict, is_dataclass
from typing import Any

import yaml

from thermodmn_cli.constants.exception_constants import ExitCode
from thermodmn_cli.exceptions import (
    ConvergenceError,
    IndefiniteSystemError,
    SchemaError,
    TrainingDivergedError,
)


def setup_logger(
    name: str,
    logging_level: int = logging.ERROR,
) -> logging.Logger:
    """
    Set up a logger with a console handler and a formatter.

    Args:
        name (str): The name of the logger.
        logging_level (int): The logging level.

    Returns:
        logging.Logger: The configured logger instance.
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging_level)
    if not logger.handlers:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging_level)
        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
    return logger


def set_logging_level(
    logger: logging.Logger,
    logging_level: int,
):
    logger.setLevel(logging_level)
    logger.handlers[0].setLevel(logging_level)


def load_document(path: str) -> Any:
    """
    Read a JSON or YAML file. JSON is parsed through the YAML loader.

    Raises:
        OSError: If the file cannot be read.
        SchemaError: If the file is not valid JSON/YAML.
    """
    with open(path, "r") as file:
        try:
            return yaml.safe_load(file)
        except yaml.YAMLError as e:
            raise SchemaError(f"Cannot parse {path}: {e}") from e


def write_json(path: str, data: Any):
    with open(path, "w") as file:
        file.write(json.dumps(data, indent=4, default=str))


def config_digest(config: Any) -> str:
    """SHA-256 of the canonical JSON dump (sorted keys) of a config dataclass or dict."""
    data = asdict(config) if is_dataclass(config) else config
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def exit_on_error(logger: logging.Logger, action: str, error: Exception):
    """
    Terminate a command for an exception raised while it ran: 2 for
    non-convergence, 3 for unreadable or invalid files, 1 otherwise.
    """
    if isinstance(error, (ConvergenceError, IndefiniteSystemError, TrainingDivergedError)):
        logger.error(f"Failed to {action}: {error}")
        sys.exit(int(ExitCode.NON_CONVERGENCE))
    if isinstance(error, (SchemaError, OSError, yaml.YAMLError)):
        logger.error(f"Failed to {action}: {error}")
        sys.exit(int(ExitCode.IO_SCHEMA_ERROR))
    sys.exit(f"Unexpected error happens when trying to {action}: {error}")


def progress_enabled(quiet: bool) -> bool:
    return not quiet and sys.stderr.isatty()
