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
import dataclasses
from typing import List, Optional

from tqdm import tqdm

from thermodmn_cli.config import FftConfig
from thermodmn_cli.constants.material_constants import GPA_TO_MPA
from thermodmn_cli.fft.homogenizer import FftHomogenizer
from thermodmn_cli.fft.voxels import VoxelGrid, generate_grid
from thermodmn_cli.training.sampling import StiffnessSample
from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)


class HomogenizeDataset:
    def __init__(self):
        return

    def build_grid(self, config: FftConfig) -> VoxelGrid:
        return generate_grid(
            (config.resolution,) * 3,
            config.shape,
            config.volume_fraction,
            lengths_um=config.cell_length_um,
        )

    def homogenize_dataset(
        self,
        samples: List[StiffnessSample],
        config: FftConfig,
        grid: Optional[VoxelGrid] = None,
        progress: bool = False,
    ) -> List[StiffnessSample]:
        """
        Fill in the FFT effective stiffness of every sample, phase 1 on voxel
        id 0 and phase 2 on voxel id 1.

        Solves run in MPa for conditioning of the residual scale; results are stored in GPa.
        """
        grid = grid or self.build_grid(config)
        homogenizer = FftHomogenizer(grid, config.tolerance, config.max_iterations)
        logger.debug(f"Homogenizing {len(samples)} samples on a {grid.dims} grid, fractions {grid.fractions()}")
        filled = []
        for sample in tqdm(samples, desc="homogenize", unit="sample", disable=not progress):
            effective, reports = homogenizer.homogenize(
                sample.stiffness_1 * GPA_TO_MPA, sample.stiffness_2 * GPA_TO_MPA
            )
            logger.debug(f"FFT iterations per load case: {[report.iterations for report in reports]}")
            filled.append(dataclasses.replace(sample, effective=effective / GPA_TO_MPA))
        return filled
