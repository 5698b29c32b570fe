"""Index sets and exact nets for multivariate polynomials on downward closed supports."""

from __future__ import annotations

import itertools
import logging
import math
from collections import defaultdict
from collections.abc import Iterable, Mapping

import numpy as np
import numpy.typing as npt

from powernet.core.monomial import power_s_net
from powernet.core.netcore import (
    affine_net,
    chain,
    combination_net,
    identity_chain,
    magnitude,
    pad_depth,
    select_net,
    wire,
)
from powernet.core.poly1d import (
    optimal_poly_net,
    pm_stage,
    product_stage,
    recursive_poly_net,
    shallow_poly_net,
    trimmed,
    wide_next_count,
)
from powernet.errors import CompletenessError, InvalidInputError, ShapeError
from powernet.models.network import FloatArray, PowerNet, check_power
from powernet.models.polynomials import (
    IndexSetKind,
    MultiIndex,
    MultiIndexSet,
    MultiPoly,
    PolyCoeffs,
)

logger = logging.getLogger(__name__)


# -- index sets ---------------------------------------------------------------


def _check_dim(d: int) -> None:
    if d < 1:
        raise InvalidInputError(f"dimension must be at least 1, got {d}")


def total_degree_set(n: int, d: int) -> MultiIndexSet:
    """{k : |k|_1 <= n}."""
    _check_dim(d)
    indices = (k for k in itertools.product(range(n + 1), repeat=d) if sum(k) <= n)
    return MultiIndexSet(dim=d, indices=tuple(indices), kind=IndexSetKind.TOTAL_DEGREE, order=n)


def tensor_set(n: int, d: int) -> MultiIndexSet:
    """{k : max_i k_i <= n}."""
    _check_dim(d)
    indices = tuple(itertools.product(range(n + 1), repeat=d))
    return MultiIndexSet(dim=d, indices=indices, kind=IndexSetKind.TENSOR, order=n)


def hyperbolic_set(n: int, d: int) -> MultiIndexSet:
    """{k : prod_i max(1, k_i) <= n}."""
    _check_dim(d)
    indices = (
        k
        for k in itertools.product(range(n + 1), repeat=d)
        if math.prod(max(1, entry) for entry in k) <= n
    )
    return MultiIndexSet(dim=d, indices=tuple(indices), kind=IndexSetKind.HYPERBOLIC, order=n)


def missing_predecessors(indices: MultiIndexSet) -> list[MultiIndex]:
    """Indices k - e_i absent from the set although k is present."""
    missing: set[MultiIndex] = set()
    for index in indices:
        for axis, entry in enumerate(index):
            if entry > 0:
                below = (*index[:axis], entry - 1, *index[axis + 1 :])
                if below not in indices:
                    missing.add(below)
    return sorted(missing)


def is_complete(indices: MultiIndexSet) -> bool:
    """True when the set is downward closed."""
    return not missing_predecessors(indices)


def downward_closure(indices: MultiIndexSet) -> MultiIndexSet:
    """Smallest downward closed set containing every index."""
    closure: set[MultiIndex] = set()
    for index in indices:
        closure.update(itertools.product(*(range(entry + 1) for entry in index)))
    return MultiIndexSet.from_indices(indices.dim, closure)


# -- reference evaluation -----------------------------------------------------


def mpoly_eval(f: MultiPoly, x: npt.ArrayLike) -> float:
    """sum_k a_k x^k at one point with compensated summation."""
    point = np.asarray(x, dtype=np.float64).reshape(-1)
    if point.shape[0] != f.dim:
        raise ShapeError(f"polynomial has dimension {f.dim}, got a point of size {point.size}")
    values = point.tolist()
    return math.fsum(
        coeff * math.prod(value**entry for value, entry in zip(values, index, strict=True))
        for index, coeff in f.terms.items()
    )


def mpoly_eval_batch(f: MultiPoly, points: npt.ArrayLike) -> FloatArray:
    """sum_k a_k x^k on an (m, d) array."""
    array = np.asarray(points, dtype=np.float64)
    if array.ndim != 2 or array.shape[1] != f.dim:
        raise ShapeError(f"need points of shape (m, {f.dim}), got {array.shape}")
    if not f.terms:
        return np.zeros(array.shape[0])
    exponents = np.array(list(f.terms.keys()), dtype=np.int64)
    coeffs = np.array(list(f.terms.values()))
    monomials = np.prod(array[:, None, :] ** exponents[None, :, :], axis=2)
    return monomials @ coeffs


def mpoly_bound(terms: Mapping[MultiIndex, float], radius: float) -> float:
    """sum_k |a_k| R^|k|, a bound on |f| over [-R, R]^d."""
    return float(sum(abs(coeff) * radius ** sum(index) for index, coeff in terms.items()))


# -- construction -------------------------------------------------------------


def _univariate_net(coeffs: FloatArray, s: int, radius: float) -> PowerNet:
    a = trimmed(coeffs)
    if a.shape[0] <= 2:
        padded = np.zeros(2)
        padded[: a.shape[0]] = a
        return affine_net([[padded[1]]], [padded[0]], s)
    p = PolyCoeffs(coeffs=a.tolist())
    if a.shape[0] - 1 <= s:
        return shallow_poly_net(p, s, radius=radius)
    return recursive_poly_net(p, s, radius=radius)


def _dense(terms: Mapping[MultiIndex, float]) -> FloatArray:
    degree = max((index[0] for index in terms), default=0)
    coeffs = np.zeros(degree + 1)
    for index, coeff in terms.items():
        coeffs[index[0]] += coeff
    return coeffs


def _slices(terms: Mapping[MultiIndex, float]) -> dict[int, dict[MultiIndex, float]]:
    grouped: dict[int, dict[MultiIndex, float]] = defaultdict(dict)
    for index, coeff in terms.items():
        grouped[index[-1]][index[:-1]] = coeff
    return grouped


def _coefficient_net(
    terms: Mapping[MultiIndex, float], dim: int, s: int, radius: float
) -> PowerNet:
    """Net on the first ``dim`` variables for a polynomial given by its terms."""
    if dim == 1:
        return _univariate_net(_dense(terms), s, radius)

    slices = _slices(terms)
    top = max(slices, default=0)
    if top == 0:
        inner = _coefficient_net(slices.get(0, {}), dim - 1, s, radius)
        return wire([inner], [list(range(dim - 1))], dim)

    pieces = [slices.get(k, {}) for k in range(top + 1)]
    nets = [_coefficient_net(piece, dim - 1, s, radius) for piece in pieces]
    bounds = [mpoly_bound(piece, radius) for piece in pieces]
    hidden = max(net.depth for net in nets) - 1
    nets = [pad_depth(net, hidden + 1, [bound]) for net, bound in zip(nets, bounds, strict=True)]
    leading = list(range(dim - 1))
    last = dim - 1
    scale = magnitude(radius)

    if hidden == 0:
        head = wire([select_net([0], 1, s), *nets], [[last], *([leading] * len(nets))], dim)
        stages = [head]
        y_bounds = bounds
        z_bound = scale
        while len(y_bounds) > 1:
            more = math.ceil(len(y_bounds) / s) > 1
            stage, y_bounds = pm_stage(s, z_bound, y_bounds, emit_power=more)
            stages.append(stage)
            z_bound = z_bound**s
        return chain(*stages)

    powers = wire(
        [
            combination_net([np.eye(j + 1)[j] for j in range(1, s)], s, scale=scale),
            power_s_net(s),
        ],
        [[0], [0]],
        1,
    )
    prep = chain(identity_chain(s, hidden, scale=scale), powers)
    head = wire([prep, *nets], [[last], *([leading] * len(nets))], dim)
    stages = [head]
    y_bounds = bounds
    base_bound = scale
    while len(y_bounds) > 1:
        more = wide_next_count(len(y_bounds), s) > 1
        stage, y_bounds = product_stage(
            s,
            base_bound,
            y_bounds,
            has_base=True,
            emit_powers=more,
            emit_base=more,
            wide=True,
        )
        stages.append(stage)
        base_bound = base_bound**s
    return chain(*stages)


def mpoly_net(f: MultiPoly, s: int, *, radius: float = 1.0) -> PowerNet:
    """Exact net for a polynomial on a downward closed support.

    The polynomial is split by the exponent of the last variable; each slice is a
    net in the remaining variables and the slices are folded together with powers
    of the last variable.
    """
    s = check_power(s)
    missing = missing_predecessors(f.support)
    if missing:
        raise CompletenessError(
            f"support is not downward closed; missing {len(missing)} indices such as {missing[0]}"
        )
    if f.dim == 1:
        return optimal_poly_net(PolyCoeffs(coeffs=_dense(f.terms).tolist()), s, radius=radius)
    net = _coefficient_net(f.terms, f.dim, s, radius)
    logger.debug(
        "Built %d-variate net with %d terms: depth %d", f.dim, len(f.terms), net.depth
    )
    return net


def ceil_log(n: int, s: int) -> int:
    """Smallest k >= 0 with s^k >= n."""
    k = 0
    while s**k < n:
        k += 1
    return k


def layer_bound(f: MultiPoly, s: int) -> int:
    """Guaranteed hidden-layer count sum_i max(1, ceil(log_s N_i)) + 1 over N_i >= 1."""
    total = 0
    for degree in f.max_degrees:
        if degree >= 1:
            total += max(1, ceil_log(degree, s))
    return total + 1


def multipoly_from_terms(dim: int, terms: Iterable[tuple[MultiIndex, float]]) -> MultiPoly:
    """Build a polynomial whose support is exactly its listed terms."""
    merged: dict[MultiIndex, float] = {}
    for index, coeff in terms:
        key = tuple(index)
        merged[key] = merged.get(key, 0.0) + coeff
    return MultiPoly(dim=dim, terms=merged)
