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
from typing import Optional

import numpy as np


def harmonic_learning_rate(epoch: int, alpha_max: float, alpha_min: float, period: int, decay: float) -> float:
    """α(m) = γ^m (α_min + ½ (α_max - α_min) (1 + cos(π m / M)))."""
    if period < 1:
        raise ValueError(f"Learning rate period must be positive, got {period}")
    modulation = 0.5 * (alpha_max - alpha_min) * (1.0 + np.cos(np.pi * epoch / period))
    return float(decay**epoch * (alpha_min + modulation))


class AmsGrad:
    """
    AMSGrad: Adam with the running maximum of the second moment estimate,
    which keeps the effective step size non-increasing per coordinate.
    """

    def __init__(self, beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8):
        if not (0.0 <= beta1 < 1.0 and 0.0 <= beta2 < 1.0):
            raise ValueError("Moment decay rates must lie in [0, 1)")
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.first_moment: Optional[np.ndarray] = None
        self.second_moment: Optional[np.ndarray] = None
        self.max_second_moment: Optional[np.ndarray] = None

    def step(self, parameters: np.ndarray, gradient: np.ndarray, learning_rate: float) -> np.ndarray:
        gradient = np.asarray(gradient, dtype=float)
        if self.first_moment is None:
            self.first_moment = np.zeros_like(gradient)
            self.second_moment = np.zeros_like(gradient)
            self.max_second_moment = np.zeros_like(gradient)
        self.first_moment = self.beta1 * self.first_moment + (1.0 - self.beta1) * gradient
        self.second_moment = self.beta2 * self.second_moment + (1.0 - self.beta2) * gradient**2
        self.max_second_moment = np.maximum(self.max_second_moment, self.second_moment)
        return parameters - learning_rate * self.first_moment / (np.sqrt(self.max_second_moment) + self.epsilon)
