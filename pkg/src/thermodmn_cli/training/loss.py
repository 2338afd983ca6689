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
Fitting objective of a network against linear homogenization data.

Parameters are kept unconstrained: raw directions u normalized on use and
raw weights v entering as ⟨v⟩₊. The flat parameter vector is
[v (2^K), u (3 (2^K - 1)), node-major].
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from thermodmn_cli.network.laminate import homogenize_linear, homogenize_linear_dual
from thermodmn_cli.network.topology import DmnTopology
from thermodmn_cli.training.sampling import StiffnessSample, stack_samples


@dataclass
class TrainingBatch:
    stiffness_1: np.ndarray
    stiffness_2: np.ndarray
    reference: np.ndarray

    @classmethod
    def from_samples(cls, samples: Sequence[StiffnessSample]) -> "TrainingBatch":
        return cls(*stack_samples(samples))

    def __len__(self) -> int:
        return self.reference.shape[0]

    def take(self, indices: np.ndarray) -> "TrainingBatch":
        return TrainingBatch(self.stiffness_1[indices], self.stiffness_2[indices], self.reference[indices])


@dataclass
class NetworkParameters:
    depth: int
    directions: np.ndarray
    weights: np.ndarray

    @classmethod
    def random(cls, depth: int, rng: np.random.Generator) -> "NetworkParameters":
        return cls.from_topology(DmnTopology.random(depth, rng))

    @classmethod
    def from_topology(cls, topology: DmnTopology) -> "NetworkParameters":
        return cls(topology.depth, topology.directions.copy(), topology.weights.copy())

    @classmethod
    def from_vector(cls, depth: int, vector: np.ndarray) -> "NetworkParameters":
        leaves = 2**depth
        vector = np.asarray(vector, dtype=float)
        return cls(depth, vector[leaves:].reshape(-1, 3).copy(), vector[:leaves].copy())

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.weights, self.directions.reshape(-1)])

    def positive_weights(self) -> np.ndarray:
        return np.maximum(self.weights, 0.0)

    def weight_sum(self) -> float:
        return float(np.sum(self.positive_weights()))

    def to_topology(self) -> DmnTopology:
        """Network with unit directions and ⟨v⟩₊ rescaled to unit sum."""
        weights = self.positive_weights()
        total = np.sum(weights)
        if total <= 0.0:
            raise ValueError("All weights are non-positive, the network is empty")
        unit = self.directions / np.linalg.norm(self.directions, axis=-1, keepdims=True)
        return DmnTopology(self.depth, unit, weights / total)


def entrywise_norm(matrices: np.ndarray, p: float) -> np.ndarray:
    """ℓ^p norm over the 36 Mandel components of each matrix."""
    flat = np.abs(matrices.reshape(matrices.shape[:-2] + (-1,)))
    return np.sum(flat**p, axis=-1) ** (1.0 / p)


def _penalty(weight_sum: float, penalty: float) -> float:
    return penalty * (weight_sum - 1.0) ** 2


def loss(params: NetworkParameters, batch: TrainingBatch, p: float, q: float, penalty: float) -> float:
    """
    J = (1/N_b) (Σ_s r_s^q)^{1/q} + λ (Σ⟨v⟩₊ - 1)²,  r_s = |C̄ - DMN|_p / |C̄|_p.

    Raises:
        ValueError: If the batch is empty.
    """
    if len(batch) == 0:
        raise ValueError("Loss of an empty batch")
    predicted = homogenize_linear(params.to_topology(), batch.stiffness_1, batch.stiffness_2)
    errors = entrywise_norm(batch.reference - predicted, p) / entrywise_norm(batch.reference, p)
    fit = np.sum(errors**q) ** (1.0 / q) / len(batch)
    return float(fit + _penalty(params.weight_sum(), penalty))


def loss_gradient(
    params: NetworkParameters, batch: TrainingBatch, p: float, q: float, penalty: float
) -> Tuple[float, np.ndarray]:
    """
    Loss and its exact gradient with respect to the flat parameter vector.

    The subgradient of ⟨v⟩₊ at v = 0 is taken as 0, likewise the gradient of
    the fit term when all residuals vanish.

    Returns:
        Tuple[float, np.ndarray]: J and dJ/d[v, u].
    """
    if len(batch) == 0:
        raise ValueError("Loss of an empty batch")
    predicted, local_grad, layout = homogenize_linear_dual(
        params.depth, params.directions, params.weights, batch.stiffness_1, batch.stiffness_2
    )
    difference = batch.reference - predicted
    difference_norm = entrywise_norm(difference, p)
    reference_norm = entrywise_norm(batch.reference, p)
    errors = difference_norm / reference_norm
    total = np.sum(errors**q) ** (1.0 / q)
    count = len(batch)

    # d|E|_p / dDMN = -sign(E) |E|^{p-1} / |E|_p^{p-1}
    safe_norm = np.where(difference_norm > 0.0, difference_norm, 1.0)
    dnorm = -np.sign(difference) * (np.abs(difference) / safe_norm[:, None, None]) ** (p - 1.0)
    dnorm[difference_norm == 0.0] = 0.0
    if total > 0.0:
        derrors = (errors / total) ** (q - 1.0) / reference_norm
    else:
        derrors = np.zeros(count)
    weights = derrors[:, None, None] * dnorm
    local = np.einsum("sij,sijp->p", weights, local_grad) / count

    gradient = np.zeros(params.as_vector().size)
    gradient[layout] = local
    weight_sum = params.weight_sum()
    gradient[: params.weights.size] += 2.0 * penalty * (weight_sum - 1.0) * (params.weights > 0.0)
    return float(total / count + _penalty(weight_sum, penalty)), gradient


def mean_error(topology: DmnTopology, batch: TrainingBatch) -> float:
    """
    e_mean = (1/N_s) Σ |DMN - C̄|₁ / |C̄|₁ with the entrywise ℓ¹ norm.

    Raises:
        ValueError: If the data set is empty.
    """
    if len(batch) == 0:
        raise ValueError("Mean error of an empty data set")
    predicted = homogenize_linear(topology, batch.stiffness_1, batch.stiffness_2)
    errors = entrywise_norm(predicted - batch.reference, 1.0) / entrywise_norm(batch.reference, 1.0)
    return float(np.mean(errors))
