"""Product kernels: x^n * y in one hidden layer and the power-sum block built on it."""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from powernet.core.netcore import (
    chain,
    identity_net,
    magnitude,
    sum_net,
    wire,
)
from powernet.errors import InvalidInputError, ShapeError
from powernet.models.network import AffineLayer, FloatArray, PowerNet, check_power
from powernet.models.schemes import XnYKernel


def symmetric_product_rhs(s: int, x: npt.ArrayLike) -> float:
    """Signed sum of (eps . x)^s over the 2^(s-1) sign vectors eps with eps_1 = +1.

    The sum equals 2^(s-1) s! prod(x) exactly.
    """
    values = np.asarray(x, dtype=np.float64)
    if values.shape != (s,):
        raise ShapeError(f"need {s} values, got shape {values.shape}")
    total = 0.0
    for tail in itertools.product((1.0, -1.0), repeat=s - 1):
        signs = np.array((1.0, *tail))
        total += float(np.prod(signs)) * float(signs @ values) ** s
    return total


def xn1yn2_expansion(n1: int, n2: int, s: int, x: float, y: float) -> float:
    """Signed binomial sum of s-th powers of affine forms in x and y.

    The sum equals 2^(s-1) s! x^n1 y^n2. Needs n2 >= 1 and n1 + n2 <= s; the
    constant 1 fills the remaining slots.
    """
    if n2 < 1 or n1 < 0 or n1 + n2 > s:
        raise InvalidInputError(f"need n2 >= 1 and n1 + n2 <= {s}, got ({n1}, {n2})")
    rest = s - n1 - n2
    total = 0.0
    for r in range(n1 + 1):
        for t in range(n2):
            for j in range(rest + 1):
                weight = (-1) ** (r + t + j) * math.comb(n1, r) * math.comb(n2 - 1, t)
                weight *= math.comb(rest, j)
                argument = (n1 - 2 * r) * x + (n2 - 2 * t) * y + (rest - 2 * j)
                total += weight * argument**s
    return total


def xny_kernel(n: int, s: int) -> XnYKernel:
    """Coefficients of the 2(n+1)(s-n) hidden units realizing x^n y for 0 <= n < s.

    The first half carries the arguments (n - 2r) x + y + (s - n - 1 - 2j) with the
    index j running fastest; the second half negates them and scales gamma by (-1)^s.
    """
    s = check_power(s)
    if n < 0 or n >= s:
        raise InvalidInputError(f"exponent must lie in 0..{s - 1}, got {n}")
    scale = 2 ** (s - 1) * math.factorial(s)
    gamma: list[float] = []
    alpha_x: list[float] = []
    beta: list[float] = []
    for r in range(n + 1):
        for j in range(s - n):
            gamma.append((-1) ** (j + r) * math.comb(s - n - 1, j) * math.comb(n, r) / scale)
            alpha_x.append(float(n - 2 * r))
            beta.append(float(s - n - 1 - 2 * j))
    half = np.array(gamma)
    ax = np.array(alpha_x)
    bt = np.array(beta)
    ones = np.ones_like(half)
    return XnYKernel(
        n=n,
        s=s,
        gamma=np.concatenate([half, (-1.0) ** s * half]),
        alpha_x=np.concatenate([ax, -ax]),
        alpha_y=np.concatenate([ones, -ones]),
        beta=np.concatenate([bt, -bt]),
    )


def xny_net(n: int, s: int, *, x_bound: float = 1.0, y_bound: float = 1.0) -> PowerNet:
    """Depth-2 net on (x, y) returning x^n y.

    Inputs are divided by their bounds before the kernel and the output is scaled
    back by x_bound^n y_bound, so the identity holds for any positive bounds.
    """
    kernel = xny_kernel(n, s)
    x_scale = magnitude(x_bound)
    y_scale = magnitude(y_bound)
    hidden = AffineLayer(
        weights=np.column_stack([kernel.alpha_x / x_scale, kernel.alpha_y / y_scale]),
        bias=kernel.beta,
    )
    output = AffineLayer(
        weights=(kernel.gamma * x_scale**n * y_scale)[None, :],
        bias=np.zeros(1),
    )
    return PowerNet(power=kernel.s, layers=(hidden, output), input_dim=2)


def pm_node_bound(s: int) -> int:
    """(s^3 + 3 s^2 + 2 s) / 3 hidden units for the full s-term block."""
    return (s**3 + 3 * s**2 + 2 * s) // 3


def pm_net(
    s: int,
    terms: int | None = None,
    *,
    x_bound: float = 1.0,
    y_bounds: Sequence[float] | None = None,
) -> PowerNet:
    """Depth-2 net mapping (x, y_0, ..., y_{t-1}) to sum_k x^k y_k for t <= s terms."""
    s = check_power(s)
    count = s if terms is None else terms
    if count < 1 or count > s:
        raise InvalidInputError(f"block takes 1..{s} terms, got {count}")
    bounds = [1.0] * count if y_bounds is None else list(y_bounds)
    if len(bounds) != count:
        raise ShapeError(f"got {len(bounds)} bounds for {count} terms")
    parts: list[PowerNet] = [identity_net(s, scale=magnitude(bounds[0]))]
    inputs: list[list[int]] = [[1]]
    for k in range(1, count):
        parts.append(xny_net(k, s, x_bound=x_bound, y_bound=bounds[k]))
        inputs.append([0, 1 + k])
    return chain(wire(parts, inputs, 1 + count), sum_net(count, s))


def pm_bound(x_bound: float, y_bounds: Sequence[float]) -> float:
    """Magnitude bound of sum_k x^k y_k given bounds on x and each y_k."""
    return float(sum(bound * x_bound**k for k, bound in enumerate(y_bounds)))


def kernel_values(kernel: XnYKernel, x: float, y: float) -> FloatArray:
    """Hidden-unit values of a kernel at (x, y)."""
    argument = kernel.alpha_x * x + kernel.alpha_y * y + kernel.beta
    return np.maximum(argument, 0.0) ** kernel.s
