"""Network data model: affine layers, RePU nets and their size counts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field

from powernet.errors import InvalidInputError, ShapeError, UnsupportedError

type FloatArray = npt.NDArray[np.float64]

MIN_POWER = 2
MAX_POWER = 12


def check_power(s: int) -> int:
    """Validate an activation power, returning it unchanged."""
    if isinstance(s, bool) or not isinstance(s, int | np.integer):
        raise InvalidInputError(f"power must be an integer, got {s!r}")
    if s < MIN_POWER:
        raise InvalidInputError(f"power must be at least {MIN_POWER}, got {s}")
    if s > MAX_POWER:
        raise UnsupportedError(f"power {s} exceeds the supported maximum {MAX_POWER}")
    return int(s)


def _frozen(values: npt.ArrayLike, ndim: int, what: str) -> FloatArray:
    array = np.array(values, dtype=np.float64, copy=True)
    if array.ndim != ndim:
        raise ShapeError(f"{what} must be {ndim}-dimensional, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidInputError(f"{what} contains non-finite entries")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, slots=True, eq=False)
class AffineLayer:
    """One affine map ``x -> A x + b``."""

    weights: FloatArray
    bias: FloatArray

    def __post_init__(self) -> None:
        weights = _frozen(self.weights, 2, "weights")
        bias = _frozen(self.bias, 1, "bias")
        rows, cols = weights.shape
        if rows < 1 or cols < 1:
            raise ShapeError(f"layer must have at least one row and column, got {weights.shape}")
        if bias.shape[0] != rows:
            raise ShapeError(f"bias length {bias.shape[0]} does not match {rows} rows")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "bias", bias)

    @property
    def rows(self) -> int:
        return int(self.weights.shape[0])

    @property
    def cols(self) -> int:
        return int(self.weights.shape[1])

    @property
    def nonzeros(self) -> int:
        return int(np.count_nonzero(self.weights) + np.count_nonzero(self.bias))


@dataclass(frozen=True, slots=True, eq=False)
class PowerNet:
    """A sigma_s network: affine layers with max(0, x)^s between consecutive ones.

    Values are immutable once built and safe to share between threads.
    """

    power: int
    layers: tuple[AffineLayer, ...]
    input_dim: int

    def __post_init__(self) -> None:
        check_power(self.power)
        layers = tuple(self.layers)
        if not layers:
            raise ShapeError("a network needs at least one layer")
        if layers[0].cols != self.input_dim:
            raise ShapeError(
                f"first layer expects {layers[0].cols} inputs, input_dim is {self.input_dim}"
            )
        for index in range(1, len(layers)):
            if layers[index].cols != layers[index - 1].rows:
                raise ShapeError(
                    f"layer {index} expects {layers[index].cols} inputs, "
                    f"previous layer has {layers[index - 1].rows} outputs"
                )
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "power", int(self.power))

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def output_dim(self) -> int:
        return self.layers[-1].rows

    @property
    def hidden_widths(self) -> list[int]:
        return [layer.rows for layer in self.layers[:-1]]


class NetStats(BaseModel):
    """Depth L, hidden node count N and nonzero count M of a net."""

    depth: int = Field(ge=1)
    nodes: int = Field(ge=0)
    nonzeros: int = Field(ge=0)
    widths: list[int] = Field(default_factory=list)

    @property
    def hidden_layers(self) -> int:
        return self.depth - 1
