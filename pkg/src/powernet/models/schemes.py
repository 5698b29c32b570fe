"""Construction parameters: node schemes, combination coefficients, digits, kernels."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from powernet.models.network import FloatArray


class NodeKind(StrEnum):
    """Shift-node families for the Vandermonde combinations."""

    CHEBYSHEV = "chebyshev"
    EQUIDISTANT = "equidistant"
    OPTIMAL = "optimal"


class Strategy(StrEnum):
    """Univariate polynomial-to-network strategies."""

    SHALLOW = "shallow"
    HORNER = "horner"
    RECURSIVE = "recursive"
    OPTIMAL = "optimal"
    AUTO = "auto"


@dataclass(frozen=True, slots=True)
class NodeScheme:
    kind: NodeKind
    order: int


@dataclass(frozen=True, slots=True, eq=False)
class LambdaCoeffs:
    """Solution of the bordered Vandermonde system.

    ``weights`` holds lambda_1..lambda_s, ``offset`` is lambda_0; ``target`` is the
    coefficient vector in descending order (d_s first, d_0 last).
    """

    weights: FloatArray
    offset: float
    nodes: FloatArray
    target: FloatArray

    @property
    def power(self) -> int:
        return int(self.nodes.shape[0])

    @property
    def vector(self) -> FloatArray:
        """(lambda_1, ..., lambda_s, lambda_0)."""
        return np.append(self.weights, self.offset)

    def reconstruct(self, x: FloatArray) -> FloatArray:
        """Evaluate lambda_0 + sum_k lambda_k (x + b_k)^s."""
        x = np.asarray(x, dtype=np.float64)
        shifted = (x[..., None] + self.nodes) ** self.power
        return self.offset + shifted @ self.weights


@dataclass(frozen=True, slots=True)
class BaseSDigits:
    """Digits of n in radix s, least significant first."""

    digits: tuple[int, ...]
    radix: int

    @property
    def m(self) -> int:
        return len(self.digits) - 1

    @property
    def value(self) -> int:
        return sum(digit * self.radix**position for position, digit in enumerate(self.digits))


@dataclass(frozen=True, slots=True, eq=False)
class XnYKernel:
    """Single-hidden-layer coefficients realizing x^n * y.

    Hidden unit i computes sigma_s(alpha_x[i] x + alpha_y[i] y + beta[i]) and the
    output is sum_i gamma[i] * unit_i.
    """

    n: int
    s: int
    gamma: FloatArray
    alpha_x: FloatArray
    alpha_y: FloatArray
    beta: FloatArray

    @property
    def width(self) -> int:
        """u_n = 2 (n + 1) (s - n)."""
        return int(self.gamma.shape[0])
