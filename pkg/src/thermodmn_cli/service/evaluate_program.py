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

from thermodmn_cli.config import DriverConfig
from thermodmn_cli.driver.metrics import CycleRecord, cyclic_metrics
from thermodmn_cli.driver.program import LoadProgram
from thermodmn_cli.driver.runner import Trajectory, run_program
from thermodmn_cli.materials.gsm import GsmMaterial
from thermodmn_cli.network.topology import DmnTopology


class EvaluateProgram:
    def __init__(self):
        return

    def evaluate_program(
        self,
        topology: DmnTopology,
        materials: Sequence[GsmMaterial],
        program: LoadProgram,
        config: Optional[DriverConfig] = None,
        component: int = 1,
        progress: bool = False,
    ) -> Tuple[Trajectory, List[CycleRecord]]:
        """
        Run a load program through the network. Cycle records are produced
        when the program declares a cycle period.
        """
        config = config or DriverConfig()
        trajectory = run_program(topology, materials, program, config, progress)
        cycles = []
        if program.cycle_period_s is not None:
            cycles = cyclic_metrics(trajectory, program.cycle_period_s, component, config.amplitude_mode)
        return trajectory, cycles
