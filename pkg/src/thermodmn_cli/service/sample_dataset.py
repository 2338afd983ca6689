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
from typing import List, Tuple

import numpy as np

from thermodmn_cli.config import SamplingConfig
from thermodmn_cli.training.sampling import StiffnessSample, contrast_histogram, sample_dataset


class SampleDataset:
    def __init__(self):
        return

    def sample_dataset(self, config: SamplingConfig) -> Tuple[List[StiffnessSample], np.ndarray, np.ndarray]:
        """
        Draw stiffness pairs and bin their material contrasts.

        Returns:
            Tuple: Samples without effective stiffness, histogram bin edges and counts.
        """
        samples = sample_dataset(config)
        edges, counts = contrast_histogram([sample.contrast for sample in samples], config.histogram_bins)
        return samples, edges, counts
