"""Spectral front-end models: quadrature rules, expansions and error reports."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

from pydantic import BaseModel, Field

from powernet.models.network import FloatArray


@dataclass(frozen=True, slots=True, eq=False)
class QuadratureRule:
    """Gauss-Legendre nodes (ascending) and positive weights on [-1, 1]."""

    nodes: FloatArray
    weights: FloatArray

    @property
    def size(self) -> int:
        return int(self.nodes.shape[0])


@dataclass(frozen=True, slots=True, eq=False)
class LegendreExpansion:
    """Coefficients c_0..c_N in the standard Legendre basis P_k."""

    coeffs: FloatArray

    @property
    def degree(self) -> int:
        return int(self.coeffs.shape[0]) - 1


class ErrorReport(BaseModel):
    """Measured error of a compiled net against its target function."""

    degree: int = Field(ge=0)
    l2_error: float = Field(ge=0.0)
    linf_error: float = Field(ge=0.0)
    n_samples: int = Field(ge=1)
    compile_error: float = Field(default=0.0, ge=0.0)


class DecayModel(StrEnum):
    ALGEBRAIC = "algebraic"
    EXPONENTIAL = "exponential"
    EXACT = "exact"


class SweepRow(BaseModel):
    N: int
    l2: float
    linf: float


class SweepResult(BaseModel):
    """A convergence sweep with the better of two fitted decay laws."""

    rows: list[SweepRow]
    model: DecayModel
    rate: float | None = None
    algebraic_slope: float | None = None
    exponential_slope: float | None = None


class ConditionRow(BaseModel):
    s: int
    scheme: str
    cond_inf: float
