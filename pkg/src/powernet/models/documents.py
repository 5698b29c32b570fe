"""JSON document schemas for nets and multivariate polynomials."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator


class LayerDocument(BaseModel):
    """One serialized affine layer; ``A`` is row-major."""

    model_config = ConfigDict(extra="forbid")

    A: list[list[float]]
    b: list[float]


class NetDocument(BaseModel):
    """Serialized form of a PowerNet."""

    model_config = ConfigDict(extra="forbid")

    power: int = Field(ge=2)
    input_dim: int = Field(ge=1)
    layers: list[LayerDocument] = Field(min_length=1)


class TermDocument(BaseModel):
    """One monomial term: exponent vector and coefficient."""

    model_config = ConfigDict(extra="forbid")

    k: list[int]
    a: float

    @field_validator("k")
    @classmethod
    def _non_negative(cls, value: list[int]) -> list[int]:
        if any(entry < 0 for entry in value):
            raise ValueError("exponents must be non-negative")
        return value


class MultiPolyDocument(BaseModel):
    """Serialized form of a multivariate polynomial."""

    model_config = ConfigDict(extra="forbid")

    dim: int = Field(ge=1)
    terms: list[TermDocument] = Field(default_factory=list)
