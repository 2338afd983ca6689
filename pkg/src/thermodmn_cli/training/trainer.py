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
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from thermodmn_cli.config import TrainingConfig, validate_training_config
from thermodmn_cli.exceptions import TrainingDivergedError
from thermodmn_cli.network.topology import DmnTopology
from thermodmn_cli.training.loss import NetworkParameters, TrainingBatch, loss_gradient, mean_error
from thermodmn_cli.training.optimizer import AmsGrad, harmonic_learning_rate
from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)


@dataclass
class EpochRecord:
    epoch: int
    loss: float
    e_mean_train: float
    e_mean_val: float
    learning_rate: float

    def as_row(self) -> List[float]:
        return [self.epoch, self.loss, self.e_mean_train, self.e_mean_val, self.learning_rate]


@dataclass
class TrainingResult:
    topology: DmnTopology
    parameters: NetworkParameters
    # Σ⟨v⟩₊ before the final renormalization
    weight_sum: float
    history: List[EpochRecord] = field(default_factory=list)

    @property
    def validation_error(self) -> float:
        return self.history[-1].e_mean_val if self.history else float("nan")


def split_indices(count: int, train_fraction: float, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Random train/validation split; the training part keeps at least one sample."""
    if count == 0:
        raise ValueError("Cannot split an empty data set")
    order = rng.permutation(count)
    train_count = min(count, max(1, int(round(train_fraction * count))))
    return np.sort(order[:train_count]), np.sort(order[train_count:])


def _error_or_nan(topology: DmnTopology, batch: TrainingBatch) -> float:
    return mean_error(topology, batch) if len(batch) else float("nan")


class NetworkTrainer:
    """
    AMSGrad fitting of network parameters on shuffled mini-batches of
    `batch_size` samples, dropping the remainder of each epoch, with a
    harmonically modulated and exponentially decayed learning rate per epoch.
    """

    def __init__(self, config: TrainingConfig, progress: bool = False):
        self.config = validate_training_config(config)
        self.progress = progress

    def train(self, data: TrainingBatch, initial: Optional[NetworkParameters] = None) -> TrainingResult:
        """
        Args:
            data (TrainingBatch): Complete data set, split internally.
            initial (NetworkParameters): Starting point; random when omitted.

        Returns:
            TrainingResult: Fitted network with weights renormalized to unit sum.

        Raises:
            ValueError: If the training split holds no full batch.
            TrainingDivergedError: If the loss or its gradient stops being finite.
        """
        config = self.config
        rng = np.random.default_rng(config.seed)
        parameters = initial if initial is not None else NetworkParameters.random(config.depth, rng)
        train_indices, validation_indices = split_indices(len(data), config.train_fraction, rng)
        train_set, validation_set = data.take(train_indices), data.take(validation_indices)
        batch_count = len(train_set) // config.batch_size
        if batch_count == 0:
            raise ValueError(
                f"Training split of {len(train_set)} samples holds no full batch of {config.batch_size}"
            )
        logger.debug(
            f"Training depth {parameters.depth} on {len(train_set)} samples, "
            f"{len(validation_set)} validation samples, {batch_count} batches per epoch"
        )

        optimizer = AmsGrad(config.beta1, config.beta2, config.epsilon)
        vector = parameters.as_vector()
        history = []
        for epoch in tqdm(range(config.epochs), desc="train", unit="epoch", disable=not self.progress):
            learning_rate = harmonic_learning_rate(
                epoch, config.alpha_max, config.alpha_min, config.period, config.decay
            )
            order = rng.permutation(len(train_set))
            losses = []
            # the remainder of the shuffled training set is discarded
            for batch_number in range(batch_count):
                start = batch_number * config.batch_size
                batch = train_set.take(order[start : start + config.batch_size])
                value, gradient = loss_gradient(
                    NetworkParameters.from_vector(parameters.depth, vector),
                    batch,
                    config.p,
                    config.q,
                    config.penalty,
                )
                if not (np.isfinite(value) and np.all(np.isfinite(gradient))):
                    raise TrainingDivergedError(
                        f"Loss became {value} in epoch {epoch}, batch {batch_number}; "
                        f"weight sum {NetworkParameters.from_vector(parameters.depth, vector).weight_sum():.4g}"
                    )
                losses.append(value)
                vector = optimizer.step(vector, gradient, learning_rate)

            current = NetworkParameters.from_vector(parameters.depth, vector)
            topology = current.to_topology()
            record = EpochRecord(
                epoch=epoch,
                loss=float(np.mean(losses)),
                e_mean_train=mean_error(topology, train_set),
                e_mean_val=_error_or_nan(topology, validation_set),
                learning_rate=learning_rate,
            )
            history.append(record)
            logger.info(
                f"epoch {epoch}: loss {record.loss:.4e}, e_mean train {record.e_mean_train:.4e}, "
                f"validation {record.e_mean_val:.4e}, learning rate {learning_rate:.3e}"
            )

        fitted = NetworkParameters.from_vector(parameters.depth, vector)
        weight_sum = fitted.weight_sum()
        logger.debug(f"Weight sum before renormalization: {weight_sum:.6f}")
        return TrainingResult(
            topology=fitted.to_topology(),
            parameters=fitted,
            weight_sum=weight_sum,
            history=history,
        )

    def sweep(self, data: TrainingBatch, alpha_max_values: Sequence[float]) -> List[Tuple[float, float]]:
        """
        Train once per maximum learning rate, all other settings fixed.

        Returns:
            List[Tuple[float, float]]: (α_max, final validation e_mean) per value.
        """
        results = []
        for alpha_max in alpha_max_values:
            config = dataclasses.replace(self.config, alpha_max=float(alpha_max))
            result = NetworkTrainer(config, self.progress).train(data)
            logger.info(f"alpha_max {alpha_max:.3e}: validation e_mean {result.validation_error:.4e}")
            results.append((float(alpha_max), result.validation_error))
        return results
