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
Forward-mode dual numbers over numpy arrays.

A Dual carries a value array of shape S and a derivative array of shape
S + (P,), holding the derivatives with respect to P seed directions. The
module-level functions accept plain arrays and Duals alike, so numerical
kernels can be written once and evaluated with or without derivatives.
"""
from typing import Sequence, Union

import numpy as np

ArrayOrDual = Union[np.ndarray, float, "Dual"]


class Dual:
    __slots__ = ("value", "grad")
    # makes ndarray binary operators defer to the reflected Dual methods
    __array_ufunc__ = None

    def __init__(self, value, grad):
        self.value = np.asarray(value, dtype=float)
        self.grad = np.asarray(grad, dtype=float)
        if self.grad.shape[:-1] != self.value.shape:
            raise ValueError(
                f"Derivative shape {self.grad.shape} does not extend value shape {self.value.shape}"
            )

    @classmethod
    def seed(cls, value, offset: int, count: int) -> "Dual":
        """
        Seed every entry of `value` as an independent variable.

        Entry j (in C order) gets derivative direction offset + j out of `count`.
        """
        value = np.asarray(value, dtype=float)
        grad = np.zeros(value.shape + (count,))
        flat = grad.reshape(-1, count)
        flat[np.arange(value.size), offset + np.arange(value.size)] = 1.0
        return cls(value, grad)

    @classmethod
    def constant(cls, value, count: int) -> "Dual":
        value = np.asarray(value, dtype=float)
        return cls(value, np.zeros(value.shape + (count,)))

    @property
    def shape(self):
        return self.value.shape

    @property
    def ndim(self):
        return self.value.ndim

    @property
    def size(self):
        return self.grad.shape[-1]

    def __repr__(self):
        return f"Dual(value={self.value!r}, grad_shape={self.grad.shape})"

    def __getitem__(self, index):
        if not isinstance(index, tuple):
            index = (index,)
        front = np.moveaxis(self.grad, -1, 0)[(slice(None),) + index]
        return Dual(self.value[index], np.moveaxis(front, 0, -1))

    def __neg__(self):
        return Dual(-self.value, -self.grad)

    def __add__(self, other):
        if isinstance(other, Dual):
            value = self.value + other.value
            return Dual(value, _broadcast(self.grad, value) + _broadcast(other.grad, value))
        value = self.value + np.asarray(other)
        return Dual(value, _broadcast(self.grad, value))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Dual):
            value = self.value * other.value
            grad = self.grad * other.value[..., None] + other.grad * self.value[..., None]
            return Dual(value, _broadcast(grad, value))
        other = np.asarray(other, dtype=float)
        value = self.value * other
        return Dual(value, _broadcast(self.grad * other[..., None], value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            return self * other.reciprocal()
        return self * (1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def reciprocal(self):
        inverse = 1.0 / self.value
        return Dual(inverse, -self.grad * (inverse * inverse)[..., None])

    def __pow__(self, exponent):
        if isinstance(exponent, Dual):
            return exp(exponent * log(self))
        exponent = float(exponent)
        value = self.value**exponent
        slope = exponent * self.value ** (exponent - 1.0)
        return Dual(value, self.grad * slope[..., None])

    def __rpow__(self, base):
        return exp(self * np.log(base))

    def __matmul__(self, other):
        return einsum("...ij,...jk->...ik", self, other)

    def __rmatmul__(self, other):
        return einsum("...ij,...jk->...ik", other, self)


def _broadcast(grad: np.ndarray, value: np.ndarray) -> np.ndarray:
    return np.broadcast_to(grad, value.shape + (grad.shape[-1],))


def value_of(x: ArrayOrDual) -> np.ndarray:
    return x.value if isinstance(x, Dual) else np.asarray(x, dtype=float)


def grad_of(x: ArrayOrDual, count: int) -> np.ndarray:
    if isinstance(x, Dual):
        return x.grad
    x = np.asarray(x, dtype=float)
    return np.zeros(x.shape + (count,))


def exp(x: ArrayOrDual) -> ArrayOrDual:
    if isinstance(x, Dual):
        value = np.exp(x.value)
        return Dual(value, x.grad * value[..., None])
    return np.exp(x)


def log(x: ArrayOrDual) -> ArrayOrDual:
    if isinstance(x, Dual):
        return Dual(np.log(x.value), x.grad / x.value[..., None])
    return np.log(x)


def sqrt(x: ArrayOrDual) -> ArrayOrDual:
    if isinstance(x, Dual):
        value = np.sqrt(x.value)
        return Dual(value, x.grad * (0.5 / value)[..., None])
    return np.sqrt(x)


def where(condition, a: ArrayOrDual, b: ArrayOrDual) -> ArrayOrDual:
    condition = np.asarray(condition, dtype=bool)
    if not isinstance(a, Dual) and not isinstance(b, Dual):
        return np.where(condition, a, b)
    count = a.size if isinstance(a, Dual) else b.size
    value = np.where(condition, value_of(a), value_of(b))
    grad = np.where(condition[..., None], grad_of(a, count), grad_of(b, count))
    return Dual(value, _broadcast(grad, value))


def total(x: ArrayOrDual, axis: int) -> ArrayOrDual:
    """Sum over a value axis (negative axes refer to value dimensions)."""
    if isinstance(x, Dual):
        axis = axis % x.ndim
        return Dual(np.sum(x.value, axis=axis), np.sum(x.grad, axis=axis))
    return np.sum(x, axis=axis)


def stack(items: Sequence[ArrayOrDual], axis: int = -1) -> ArrayOrDual:
    if not any(isinstance(item, Dual) for item in items):
        return np.stack(items, axis=axis)
    count = next(item.size for item in items if isinstance(item, Dual))
    values = [value_of(item) for item in items]
    value = np.stack(values, axis=axis)
    axis = axis % value.ndim
    grads = [_broadcast(grad_of(item, count), np.asarray(v)) for item, v in zip(items, values)]
    return Dual(value, np.stack(grads, axis=axis))


def einsum(subscripts: str, *operands: ArrayOrDual) -> ArrayOrDual:
    """
    Product-rule einsum. The derivative axis is appended to every Dual operand
    and to the output; subscripts may use '...' but not the letter 'Z'.
    """
    if "Z" in subscripts:
        raise ValueError("Subscript letter 'Z' is reserved for the derivative axis")
    inputs, output = subscripts.replace(" ", "").split("->")
    terms = inputs.split(",")
    values = [value_of(op) for op in operands]
    value = np.einsum(subscripts, *values)
    duals = [k for k, op in enumerate(operands) if isinstance(op, Dual)]
    if not duals:
        return value
    count = operands[duals[0]].size
    grad = np.zeros(value.shape + (count,))
    for k in duals:
        spec = list(terms)
        spec[k] = terms[k] + "Z"
        args = list(values)
        args[k] = operands[k].grad
        grad = grad + np.einsum(",".join(spec) + "->" + output + "Z", *args)
    return Dual(value, grad)


def inv(x: ArrayOrDual) -> ArrayOrDual:
    """Batched matrix inverse with d(M⁻¹) = -M⁻¹ dM M⁻¹."""
    if isinstance(x, Dual):
        inverse = np.linalg.inv(x.value)
        grad = -np.einsum("...ij,...jkZ,...kl->...ilZ", inverse, x.grad, inverse)
        return Dual(inverse, grad)
    return np.linalg.inv(x)


def positive_part(x: ArrayOrDual) -> ArrayOrDual:
    """Macaulay bracket ⟨x⟩₊ with subgradient 0 at x = 0."""
    return where(value_of(x) > 0.0, x, 0.0 * x)


def norm(x: ArrayOrDual, axis: int = -1) -> ArrayOrDual:
    return sqrt(total(x * x, axis=axis))


