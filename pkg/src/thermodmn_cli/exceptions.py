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
from typing import List, Optional, Sequence


class ThermoDmnError(RuntimeError):
    pass


class ConvergenceError(ThermoDmnError):
    """
    Raised when an iterative solve exceeds its iteration budget.

    Attributes:
        iterations (int): Iterations performed before giving up.
        residuals (List[float]): Residual history, one entry per iteration.
    """

    def __init__(
        self,
        message: str,
        iterations: int = 0,
        residuals: Optional[Sequence[float]] = None,
    ):
        self.iterations = iterations
        self.residuals: List[float] = list(residuals or [])
        last = f", last residual {self.residuals[-1]:.3e}" if self.residuals else ""
        super().__init__(f"{message} (after {iterations} iterations{last})")


class MaterialUpdateError(ConvergenceError):
    pass


class IndefiniteSystemError(ThermoDmnError):
    pass


class SchemaError(ThermoDmnError, ValueError):
    pass


class TrainingDivergedError(ThermoDmnError):
    pass
