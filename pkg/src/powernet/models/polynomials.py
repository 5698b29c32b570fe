"""Polynomial models: dense univariate coefficients and sparse multivariate terms."""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from types import MappingProxyType

import numpy as np
from pydantic import BaseModel, Field, field_validator

from powernet.errors import InvalidInputError, ShapeError
from powernet.models.network import FloatArray

type MultiIndex = tuple[int, ...]


class PolyCoeffs(BaseModel):
    """Dense coefficients a_0..a_n in ascending degree; trailing zeros allowed."""

    coeffs: list[float] = Field(min_length=1)

    @field_validator("coeffs")
    @classmethod
    def _finite(cls, value: list[float]) -> list[float]:
        if not all(math.isfinite(entry) for entry in value):
            raise ValueError("coefficients must be finite")
        return value

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_array(self) -> FloatArray:
        return np.asarray(self.coeffs, dtype=np.float64)

    def padded(self, degree: int) -> FloatArray:
        """Coefficients zero-filled up to ``degree``."""
        values = np.zeros(max(degree, self.degree) + 1)
        values[: self.degree + 1] = self.coeffs
        return values


class IndexSetKind(StrEnum):
    TOTAL_DEGREE = "total_degree"
    TENSOR = "tensor"
    HYPERBOLIC = "hyperbolic"
    CUSTOM = "custom"


@dataclass(frozen=True, slots=True)
class MultiIndexSet:
    """Finite set of exponent vectors of a common dimension, kept sorted."""

    dim: int
    indices: tuple[MultiIndex, ...]
    kind: IndexSetKind = IndexSetKind.CUSTOM
    order: int | None = None
    _members: frozenset[MultiIndex] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise InvalidInputError(f"index set dimension must be at least 1, got {self.dim}")
        normalized = tuple(tuple(int(entry) for entry in index) for index in self.indices)
        for index in normalized:
            if len(index) != self.dim:
                raise ShapeError(f"index {index} does not have dimension {self.dim}")
            if any(entry < 0 for entry in index):
                raise InvalidInputError(f"index {index} has a negative exponent")
        if len(set(normalized)) != len(normalized):
            raise InvalidInputError("index set contains duplicates")
        object.__setattr__(self, "indices", tuple(sorted(normalized)))
        object.__setattr__(self, "_members", frozenset(normalized))

    @classmethod
    def from_indices(cls, dim: int, indices: Iterable[MultiIndex]) -> MultiIndexSet:
        return cls(dim=dim, indices=tuple(dict.fromkeys(tuple(index) for index in indices)))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.indices)

    def __contains__(self, index: object) -> bool:
        return index in self._members

    @property
    def max_degrees(self) -> tuple[int, ...]:
        """Largest exponent per dimension (N_i); zeros for an empty set."""
        if not self.indices:
            return (0,) * self.dim
        return tuple(int(value) for value in np.max(np.array(self.indices), axis=0))


@dataclass(frozen=True, slots=True)
class MultiPoly:
    """Sparse multivariate polynomial sum_k a_k x^k over a support set."""

    dim: int
    terms: Mapping[MultiIndex, float]
    support: MultiIndexSet = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        terms: dict[MultiIndex, float] = {}
        for index, coeff in self.terms.items():
            key = tuple(int(entry) for entry in index)
            if len(key) != self.dim:
                raise ShapeError(f"term {key} does not have dimension {self.dim}")
            if not math.isfinite(coeff):
                raise InvalidInputError(f"term {key} has a non-finite coefficient")
            terms[key] = terms.get(key, 0.0) + float(coeff)
        support = self.support
        if support is None:
            support = MultiIndexSet.from_indices(self.dim, terms)
        if support.dim != self.dim:
            raise ShapeError(f"support dimension {support.dim} does not match {self.dim}")
        missing = [key for key in terms if key not in support]
        if missing:
            raise InvalidInputError(f"terms {missing[:3]} lie outside the support")
        object.__setattr__(self, "terms", MappingProxyType(terms))
        object.__setattr__(self, "support", support)

    @property
    def max_degrees(self) -> tuple[int, ...]:
        return self.support.max_degrees

    def coefficient(self, index: MultiIndex) -> float:
        return self.terms.get(index, 0.0)
