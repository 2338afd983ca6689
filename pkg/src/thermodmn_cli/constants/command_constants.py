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
from enum import Enum

DEFAULT_SEED = 0
DEFAULT_THETA0_K = 293.15
MODEL_FORMAT = "thermodmn-model"
DATASET_FORMAT = "thermodmn-dataset"
FILE_FORMAT_VERSION = 1
MANDEL_ORDERING = "mandel-11-22-33-12-13-23"
DATASET_UNITS = "GPa"
VOXEL_MAGIC = b"VOXG"
VOXEL_VERSION = 1
# weights below this are pruned from the network
PRUNING_THRESHOLD = 1e-12
NUMERICAL_LOGGERS = (
    "thermodmn_cli.network.solver",
    "thermodmn_cli.training.trainer",
    "thermodmn_cli.driver.runner",
    "thermodmn_cli.fft.homogenizer",
)
TRAJECTORY_COLUMNS = (
    ["t"]
    + [f"eps_{c}" for c in ("11", "22", "33", "12", "13", "23")]
    + [f"sig_{c}" for c in ("11", "22", "33", "12", "13", "23")]
    + ["theta", "rho", "dissipation", "iterations"]
)
CYCLE_COLUMNS = ["cycle", "eps_ampl", "dtheta_cycle", "dissipation_cycle"]
HISTORY_COLUMNS = ["epoch", "loss", "e_mean_train", "e_mean_val", "learning_rate"]
ETA_COLUMNS = ["quantity", "component", "eta_mean", "eta_max", "skipped"]
HISTOGRAM_COLUMNS = ["bin_lower", "bin_upper", "count"]


class OutputFormat(Enum):
    JSON = "json"
    TABLE = "table"

    def get_values():
        return [output_format.value for output_format in OutputFormat]


class ThermalMode(Enum):
    ADIABATIC = "adiabatic"
    PRESCRIBED = "prescribed"
    CONVECTION = "convection"

    def get_values():
        return [mode.value for mode in ThermalMode]


class ControlFlag(Enum):
    STRAIN = "E"
    STRESS = "S"

    def get_values():
        return [flag.value for flag in ControlFlag]


class AmplitudeMode(Enum):
    COMPONENT = "component"
    EIGEN = "eigen"

    def get_values():
        return [mode.value for mode in AmplitudeMode]


class InclusionShape(Enum):
    SPHERE = "sphere"
    CYLINDER = "cylinder"
    LAYERED = "layered"

    def get_values():
        return [shape.value for shape in InclusionShape]


class ProgramPreset(Enum):
    MONOTONIC = "monotonic"
    HYSTERESIS = "hysteresis"
    BIAXIAL = "biaxial"
    CYCLIC = "cyclic"

    def get_values():
        return [preset.value for preset in ProgramPreset]
