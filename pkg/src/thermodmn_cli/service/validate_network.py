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
from typing import List, Optional, Sequence, Tuple

import numpy as np

from thermodmn_cli.config import DriverConfig
from thermodmn_cli.driver.metrics import EtaRecord, cycle_error_metrics, cyclic_metrics, error_metrics
from thermodmn_cli.driver.program import LoadProgram
from thermodmn_cli.driver.runner import replay_reference, run_program
from thermodmn_cli.materials.gsm import GsmMaterial
from thermodmn_cli.network.reference import RecursiveLaminateSolver
from thermodmn_cli.network.topology import DmnTopology
from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)


class ValidateNetwork:
    def __init__(self):
        return

    def validate_network(
        self,
        topology: DmnTopology,
        materials: Sequence[GsmMaterial],
        program: LoadProgram,
        config: Optional[DriverConfig] = None,
        tolerance: float = 1e-8,
        progress: bool = False,
        component: int = 1,
    ) -> Tuple[List[EtaRecord], bool]:
        """
        Compare the network solver with the recursive laminate solver along
        the same macroscopic history. Programs with a cycle period are also
        compared cycle by cycle, with the strain amplitude taken on the Mandel
        index `component`.

        Returns:
            Tuple[List[EtaRecord], bool]: Error table and whether every evaluated η_max is below `tolerance`.
        """
        config = config or DriverConfig()
        trajectory = run_program(topology, materials, program, config, progress)
        reference = replay_reference(RecursiveLaminateSolver(topology, materials), trajectory)
        records = error_metrics(trajectory, reference)
        if program.cycle_period_s is not None:
            period = program.cycle_period_s
            records += cycle_error_metrics(
                cyclic_metrics(trajectory, period, component, config.amplitude_mode),
                cyclic_metrics(reference, period, component, config.amplitude_mode),
            )
        worst = max((record.eta_max for record in records if not record.skipped), default=0.0)
        logger.debug(f"Largest relative error {worst:.3e} against tolerance {tolerance:.1e}")
        return records, bool(np.isfinite(worst) and worst < tolerance)
