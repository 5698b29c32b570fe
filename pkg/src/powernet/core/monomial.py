"""Exact sigma_s networks for univariate monomials x^n."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from powernet.core.bivariate import xny_net
from powernet.core.netcore import (
    affine_net,
    chain,
    combination_net,
    constant_net,
    magnitude,
    parallel,
    wire,
)
from powernet.errors import InvalidInputError
from powernet.models.network import AffineLayer, FloatArray, PowerNet, check_power
from powernet.models.schemes import BaseSDigits

logger = logging.getLogger(__name__)

_SPLITTER = 134217729.0  # 2**27 + 1


def power_s_net(s: int) -> PowerNet:
    """x^s = sigma_s(x) + (-1)^s sigma_s(-x) with two hidden units."""
    s = check_power(s)
    return PowerNet(
        power=s,
        layers=(
            AffineLayer(np.array([[1.0], [-1.0]]), np.zeros(2)),
            AffineLayer(np.array([[1.0, (-1.0) ** s]]), np.zeros(1)),
        ),
        input_dim=1,
    )


def power_low_net(n: int, s: int, *, scale: float = 1.0) -> PowerNet:
    """x^n for 0 <= n <= s through one Vandermonde combination of 2s units."""
    s = check_power(s)
    if n < 0 or n > s:
        raise InvalidInputError(f"exponent must lie in 0..{s}, got {n}")
    target = np.zeros(n + 1)
    target[n] = 1.0
    return combination_net([target], s, scale=scale)


def base_s_digits(n: int, s: int) -> BaseSDigits:
    """Digits of n >= 1 in radix s, least significant first; the top digit is nonzero."""
    if n < 1:
        raise InvalidInputError(f"digits are defined for n >= 1, got {n}")
    if s < 2:
        raise InvalidInputError(f"radix must be at least 2, got {s}")
    digits: list[int] = []
    rest = n
    while rest:
        rest, digit = divmod(rest, s)
        digits.append(digit)
    return BaseSDigits(digits=tuple(digits), radix=s)


def _power_bound(radius: float, exponent: int) -> float:
    """radius^exponent kept inside the range magnitude() accepts."""
    with np.errstate(over="ignore", under="ignore"):
        value = np.float_power(radius, exponent)
    return float(np.clip(value, 1e-100, 1e100))


def _low_factor(n: int, s: int, radius: float) -> PowerNet:
    if n == 0:
        return constant_net(1.0, 1, s, depth=2)
    return power_low_net(n, s, scale=magnitude(radius))


def monomial_net(n: int, s: int, *, radius: float = 1.0) -> PowerNet:
    """Exact net for x^n.

    With n = sum_k n_k s^k the net keeps xi_1 = x^(s^k) and xi_2 = x^(n_0 + ... )
    and multiplies in one digit per layer, giving depth floor(log_s n) + 2 for
    n > s. Pure powers s^m chain m copies of the x^s net instead. Each product
    stage normalizes its operands by their bounds on |x| <= radius.
    """
    s = check_power(s)
    if n < 0:
        raise InvalidInputError(f"exponent must be non-negative, got {n}")
    if n == 0:
        return affine_net([[0.0]], [1.0], s)
    if n == 1:
        return affine_net([[1.0]], [0.0], s)
    if n == s:
        return power_s_net(s)
    if n < s:
        return power_low_net(n, s, scale=magnitude(radius))

    digits = base_s_digits(n, s)
    if digits.digits[-1] == 1 and not any(digits.digits[:-1]):
        logger.debug("x^%d is a pure power of %d: chaining %d squaring stages", n, s, digits.m)
        return chain(*(power_s_net(s) for _ in range(digits.m)))

    stages = [parallel(power_s_net(s), _low_factor(digits.digits[0], s, radius))]
    done = digits.digits[0]
    for k in range(1, digits.m + 1):
        product = xny_net(
            digits.digits[k],
            s,
            x_bound=_power_bound(radius, s**k),
            y_bound=_power_bound(radius, done),
        )
        if k == digits.m:
            stages.append(product)
        else:
            stages.append(wire([power_s_net(s), product], [[0], [0, 1]], 2))
        done += digits.digits[k] * s**k
    net = chain(*stages)
    logger.debug("Built x^%d with s=%d: depth %d", n, s, net.depth)
    return net



def _two_product(a: FloatArray, b: FloatArray) -> tuple[FloatArray, FloatArray]:
    product = a * b
    a_split = _SPLITTER * a
    a_high = a_split - (a_split - a)
    a_low = a - a_high
    b_split = _SPLITTER * b
    b_high = b_split - (b_split - b)
    b_low = b - b_high
    error = a_low * b_low - (((product - a_high * b_high) - a_low * b_high) - a_high * b_low)
    return product, error


def compensated_power(x: npt.ArrayLike, n: int) -> FloatArray:
    """x^n by repeated multiplication with error-free products; reference values."""
    if n < 0:
        raise InvalidInputError(f"exponent must be non-negative, got {n}")
    base = np.asarray(x, dtype=np.float64)
    if n == 0:
        return np.ones_like(base)
    value = base.copy()
    correction = np.zeros_like(base)
    for _ in range(n - 1):
        value, error = _two_product(value, base)
        correction = correction * base + error
    return value + correction
