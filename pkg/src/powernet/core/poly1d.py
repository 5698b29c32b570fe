"""Univariate polynomial to network strategies.

Every builder takes a ``radius`` R with the domain [-R, R] in mind: hidden
arguments are normalized by bounds on the quantities they carry, which keeps the
nets exact in exact arithmetic and well scaled in floating point.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from powernet.core.bivariate import pm_bound, pm_net, xny_net
from powernet.core.monomial import power_s_net
from powernet.core.netcore import (
    affine_net,
    chain,
    combination_net,
    identity_net,
    magnitude,
    pad_depth,
    parallel,
    shared_first_input_tensor,
    wire,
)
from powernet.errors import InvalidInputError, StrategyError
from powernet.models.network import FloatArray, PowerNet, check_power
from powernet.models.polynomials import PolyCoeffs
from powernet.models.schemes import Strategy

logger = logging.getLogger(__name__)


def trimmed(p: PolyCoeffs | npt.ArrayLike) -> FloatArray:
    """Ascending coefficients without trailing zeros; the zero polynomial keeps one entry."""
    values = p.as_array() if isinstance(p, PolyCoeffs) else np.asarray(p, dtype=np.float64)
    values = np.trim_zeros(values, "b")
    return values if values.shape[0] else np.zeros(1)


def horner_eval(coeffs: npt.ArrayLike, x: npt.ArrayLike) -> FloatArray:
    """Reference value of sum_j a_j x^j by Horner's rule."""
    a = np.asarray(coeffs, dtype=np.float64)
    points = np.asarray(x, dtype=np.float64)
    value = np.full_like(points, a[-1])
    for coeff in a[-2::-1]:
        value = value * points + coeff
    return value


def poly_bound(coeffs: npt.ArrayLike, radius: float) -> float:
    """sum_j |a_j| R^j, a bound on |p| over [-R, R]."""
    a = np.abs(np.asarray(coeffs, dtype=np.float64))
    return float(a @ radius ** np.arange(a.shape[0]))


def coefficient_groups(a: FloatArray, s: int) -> list[FloatArray]:
    """Split a_0..a_n into ceil(n/s) groups of s with the last one holding s + 1."""
    n = a.shape[0] - 1
    count = math.ceil(n / s)
    padded = np.zeros(count * s + 1)
    padded[: n + 1] = a
    groups = [padded[k * s : (k + 1) * s] for k in range(count - 1)]
    groups.append(padded[(count - 1) * s :])
    return groups


def wide_groups(count: int, s: int) -> list[range]:
    """Group ``count`` terms in runs of s, letting the last run take s + 1."""
    if count <= s + 1:
        return [range(count)]
    groups = math.ceil((count - 1) / s)
    runs = [range(k * s, (k + 1) * s) for k in range(groups - 1)]
    runs.append(range((groups - 1) * s, count))
    return runs


def wide_next_count(count: int, s: int) -> int:
    return len(wide_groups(count, s))


def pm_stage(
    s: int, z_bound: float, y_bounds: Sequence[float], *, emit_power: bool
) -> tuple[PowerNet, list[float]]:
    """One reduction step on (z, y_0..y_{c-1}): groups of s become sum_j z^j y_j.

    With ``emit_power`` the stage also returns z^s ahead of the reduced values.
    """
    blocks: list[PowerNet] = []
    bounds: list[float] = []
    for start in range(0, len(y_bounds), s):
        group = list(y_bounds[start : start + s])
        blocks.append(pm_net(s, len(group), x_bound=z_bound, y_bounds=group))
        bounds.append(pm_bound(z_bound, group))
    body = shared_first_input_tensor(blocks)
    if emit_power:
        body = parallel(power_s_net(s), body)
    return body, bounds


def product_stage(
    s: int,
    base_bound: float,
    y_bounds: Sequence[float],
    *,
    has_base: bool,
    emit_powers: bool,
    emit_base: bool,
    wide: bool = False,
) -> tuple[PowerNet, list[float]]:
    """One reduction step fed with precomputed powers of the current base B.

    Input is (B, B^2, ..., B^(s-1)[, B^s], y_0, ...). Each group sums B^j y_j
    using one identity for j = 0 and one x*y kernel per j >= 1. Optional leading
    outputs are the next powers (B^s)^j for j < s and (B^s)^s.
    """
    if (emit_powers or emit_base) and not has_base:
        raise InvalidInputError("emitting powers needs B^s among the inputs")
    count = len(y_bounds)
    offset = (s - 1) + (1 if has_base else 0)
    runs = wide_groups(count, s) if wide else [
        range(start, min(start + s, count)) for start in range(0, count, s)
    ]
    next_base = base_bound**s

    parts: list[PowerNet] = []
    inputs: list[list[int]] = []
    if emit_powers:
        units = [np.eye(j + 1)[j] for j in range(1, s)]
        parts.append(combination_net(units, s, scale=magnitude(next_base)))
        inputs.append([s - 1])
    if emit_base:
        parts.append(power_s_net(s))
        inputs.append([s - 1])
    lead = (s - 1 if emit_powers else 0) + (1 if emit_base else 0)

    bounds: list[float] = []
    for run in runs:
        for j, index in enumerate(run):
            y_bound = y_bounds[index]
            if j == 0:
                parts.append(identity_net(s, scale=magnitude(y_bound)))
                inputs.append([offset + index])
                continue
            if j == s and not has_base:
                raise InvalidInputError("a run of s + 1 terms needs B^s among the inputs")
            parts.append(xny_net(1, s, x_bound=base_bound**j, y_bound=y_bound))
            inputs.append([j - 1, offset + index])
        bounds.append(pm_bound(base_bound, [y_bounds[index] for index in run]))
    body = wire(parts, inputs, offset + count)

    collect = np.zeros((lead + len(runs), lead + count))
    collect[:lead, :lead] = np.eye(lead)
    for row, run in enumerate(runs):
        collect[lead + row, [lead + index for index in run]] = 1.0
    return chain(body, affine_net(collect, np.zeros(lead + len(runs)), s)), bounds


# -- strategies ---------------------------------------------------------------


def shallow_poly_net(p: PolyCoeffs, s: int, *, radius: float = 1.0) -> PowerNet:
    """Depth 2 and 2s hidden units; degree must not exceed s."""
    s = check_power(s)
    a = trimmed(p)
    if a.shape[0] - 1 > s:
        raise StrategyError(f"shallow strategy needs degree <= {s}, got {a.shape[0] - 1}")
    return combination_net([a], s, scale=magnitude(radius))


def horner_net(p: PolyCoeffs, s: int, *, radius: float = 1.0) -> PowerNet:
    """Horner's rule, one layer per coefficient: depth n + 1."""
    s = check_power(s)
    a = trimmed(p)
    n = a.shape[0] - 1
    if n < 1:
        raise StrategyError("Horner strategy needs degree >= 1")
    scale = magnitude(radius)
    stages = [affine_net([[1.0], [0.0]], [0.0, a[n]], s)]
    y_bound = abs(a[n])
    for k in range(n, 0, -1):
        product = xny_net(1, s, x_bound=scale, y_bound=y_bound)
        if k == 1:
            stages.append(chain(product, affine_net([[1.0]], [a[0]], s)))
        else:
            step = wire([identity_net(s, scale=scale), product], [[0], [0, 1]], 2)
            stages.append(chain(step, affine_net(np.eye(2), [0.0, a[k - 1]], s)))
        y_bound = abs(a[k - 1]) + scale * y_bound
    return chain(*stages)


def recursive_poly_net(p: PolyCoeffs, s: int, *, radius: float = 1.0) -> PowerNet:
    """Groups of s coefficients folded by powers of x^s: depth ceil(log_s n) + 1."""
    s = check_power(s)
    a = trimmed(p)
    n = a.shape[0] - 1
    if n <= s:
        return shallow_poly_net(p, s, radius=radius)
    scale = magnitude(radius)
    groups = coefficient_groups(a, s)
    stages = [parallel(power_s_net(s), combination_net(groups, s, scale=scale))]
    y_bounds = [poly_bound(group, scale) for group in groups]
    z_bound = scale**s
    while len(y_bounds) > 1:
        more = math.ceil(len(y_bounds) / s) > 1
        stage, y_bounds = pm_stage(s, z_bound, y_bounds, emit_power=more)
        stages.append(stage)
        z_bound = z_bound**s
    net = chain(*stages)
    logger.debug("Recursive net for degree %d, s=%d: depth %d", n, s, net.depth)
    return net


def _two_group_net(a: FloatArray, s: int, scale: float) -> PowerNet:
    """Degree s < n < 2s as y_0 + x^(s-1) (x y_1) with all three inputs from one layer.

    One identity layer follows the sum, so the net has depth ceil(log_s n) + 2 = 4.
    """
    w = np.concatenate([[0.0], a[s:]])
    y0 = a[:s]
    first = combination_net([[0.0, 1.0], w, y0], s, scale=scale)
    product = wire(
        [
            xny_net(s - 1, s, x_bound=scale, y_bound=poly_bound(w, scale)),
            identity_net(s, scale=magnitude(poly_bound(y0, scale))),
        ],
        [[0, 1], [2]],
        3,
    )
    net = chain(first, product, affine_net([[1.0, 1.0]], [0.0], s))
    return pad_depth(net, net.depth + 1, [poly_bound(a, scale)])


def optimal_poly_net(p: PolyCoeffs, s: int, *, radius: float = 1.0) -> PowerNet:
    """Linear-size net: powers of the base are computed once per level.

    Depth ceil(log_s n) + 2 with at most 8n hidden units.
    """
    s = check_power(s)
    a = trimmed(p)
    n = a.shape[0] - 1
    if n <= s:
        return shallow_poly_net(p, s, radius=radius)
    scale = magnitude(radius)
    if n < 2 * s:
        return _two_group_net(a, s, scale)
    groups = coefficient_groups(a, s)
    count = len(groups)
    base_bound = scale**s
    has_base = math.ceil(count / s) > 1

    parts: list[PowerNet] = [
        combination_net(
            [np.eye(j + 1)[j] for j in range(1, s)], s, scale=magnitude(base_bound)
        )
    ]
    inputs: list[list[int]] = [[0]]
    if has_base:
        parts.append(power_s_net(s))
        inputs.append([0])
    parts.append(combination_net(groups, s, scale=scale))
    inputs.append([1])
    stages = [
        parallel(power_s_net(s), identity_net(s, scale=scale)),
        wire(parts, inputs, 2),
    ]
    y_bounds = [poly_bound(group, scale) for group in groups]
    while len(y_bounds) > 1:
        following = math.ceil(len(y_bounds) / s)
        stage, y_bounds = product_stage(
            s,
            base_bound,
            y_bounds,
            has_base=has_base,
            emit_powers=following > 1,
            emit_base=math.ceil(following / s) > 1,
        )
        stages.append(stage)
        has_base = math.ceil(following / s) > 1
        base_bound = base_bound**s
    net = chain(*stages)
    logger.debug("Optimal net for degree %d, s=%d: depth %d", n, s, net.depth)
    return net


def build_poly_net(
    p: PolyCoeffs, s: int, strategy: Strategy = Strategy.AUTO, *, radius: float = 1.0
) -> PowerNet:
    """Dispatch on strategy; auto picks shallow for degree <= s, else optimal."""
    s = check_power(s)
    match strategy:
        case Strategy.SHALLOW:
            return shallow_poly_net(p, s, radius=radius)
        case Strategy.HORNER:
            return horner_net(p, s, radius=radius)
        case Strategy.RECURSIVE:
            return recursive_poly_net(p, s, radius=radius)
        case Strategy.OPTIMAL:
            return optimal_poly_net(p, s, radius=radius)
        case Strategy.AUTO:
            if trimmed(p).shape[0] - 1 <= s:
                return shallow_poly_net(p, s, radius=radius)
            return optimal_poly_net(p, s, radius=radius)
    raise StrategyError(f"unknown strategy {strategy!r}")
