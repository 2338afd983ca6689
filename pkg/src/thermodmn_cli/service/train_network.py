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
from typing import List, Sequence, Tuple

from thermodmn_cli.config import TrainingConfig
from thermodmn_cli.training.loss import TrainingBatch
from thermodmn_cli.training.sampling import StiffnessSample
from thermodmn_cli.training.trainer import NetworkTrainer, TrainingResult


class TrainNetwork:
    def __init__(self):
        return

    def train_network(
        self, config: TrainingConfig, samples: Sequence[StiffnessSample], progress: bool = False
    ) -> TrainingResult:
        return NetworkTrainer(config, progress).train(TrainingBatch.from_samples(samples))

    def sweep(
        self,
        config: TrainingConfig,
        samples: Sequence[StiffnessSample],
        alpha_max_values: Sequence[float],
        progress: bool = False,
    ) -> List[Tuple[float, float]]:
        """Final validation e_mean for each maximum learning rate."""
        return NetworkTrainer(config, progress).sweep(TrainingBatch.from_samples(samples), alpha_max_values)
