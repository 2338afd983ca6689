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
import time
from typing import Any, Dict

import numpy as np

from thermodmn_cli.config import BenchConfig, SolverConfig
from thermodmn_cli.materials.factory import build_material
from thermodmn_cli.materials.parameters import glass_params, pa66_params
from thermodmn_cli.network.solver import DmnSolver
from thermodmn_cli.network.topology import DmnTopology


class BenchmarkNetwork:
    def __init__(self):
        return

    def benchmark_network(self, config: BenchConfig, solver_config: SolverConfig = None) -> Dict[str, Any]:
        """
        Time fully converged evaluations of a random network, glass on the
        even leaves and PA66 on the odd leaves, under uniaxial strain.

        Returns:
            dict: Depth, unknown count, timings in ms (min, median, max) and Newton iterations.
        """
        rng = np.random.default_rng(config.seed)
        topology = DmnTopology.random(config.depth, rng)
        materials = (build_material(glass_params()), build_material(pa66_params()))
        solver = DmnSolver(topology, materials, solver_config)
        state = solver.initial_state()
        strain = np.zeros(6)
        strain[0] = config.strain
        theta = materials[0].params.theta0_K

        timings = []
        iterations = []
        for _ in range(config.repeats):
            start = time.perf_counter()
            output, _ = solver.evaluate(state, strain, theta, config.dt)
            timings.append(1e3 * (time.perf_counter() - start))
            iterations.append(output.iterations)
        return {
            "depth": config.depth,
            "unknowns": int(solver.operator.shape[1]),
            "repeats": config.repeats,
            "min_ms": float(np.min(timings)),
            "median_ms": float(np.median(timings)),
            "max_ms": float(np.max(timings)),
            "newton_iterations": int(np.max(iterations)),
        }
