"""Named target functions for approximation runs."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from powernet.errors import InvalidInputError
from powernet.models.network import FloatArray


@dataclass(frozen=True, slots=True)
class TargetFunction:
    """A vectorized target; univariate ones take (m,), others (m, d) arrays."""

    name: str
    func: Callable[[FloatArray], FloatArray]
    multivariate: bool = False

    def __call__(self, points: FloatArray) -> FloatArray:
        return self.func(points)

    def supports(self, d: int) -> bool:
        return d >= 2 if self.multivariate else d == 1


def _exp_sum(points: FloatArray) -> FloatArray:
    return np.exp(np.sum(points, axis=1))


def _exp_prod(points: FloatArray) -> FloatArray:
    return np.exp(np.prod(points, axis=1))


def _sum_sq(points: FloatArray) -> FloatArray:
    return np.sum(points**2, axis=1)


FUNCTIONS: dict[str, TargetFunction] = {
    entry.name: entry
    for entry in (
        TargetFunction("exp", np.exp),
        TargetFunction("sin3", lambda x: np.sin(3.0 * x)),
        TargetFunction("runge", lambda x: 1.0 / (1.0 + 25.0 * x**2)),
        TargetFunction("inv2", lambda x: 1.0 / (2.0 + x)),
        TargetFunction("absx3", lambda x: np.abs(x) ** 3),
        TargetFunction("exp_sum", _exp_sum, multivariate=True),
        TargetFunction("exp_prod", _exp_prod, multivariate=True),
        TargetFunction("sum_sq", _sum_sq, multivariate=True),
    )
}


def get_function(name: str, d: int = 1) -> TargetFunction:
    """Look up a target by name and check it accepts dimension ``d``."""
    key = name.strip().lower()
    entry = FUNCTIONS.get(key)
    if entry is None:
        known = ", ".join(sorted(FUNCTIONS))
        raise InvalidInputError(f"unknown function {name!r}; choose one of {known}")
    if not entry.supports(d):
        kind = "multivariate" if entry.multivariate else "univariate"
        raise InvalidInputError(f"function {entry.name!r} is {kind} and cannot run with d={d}")
    return entry
