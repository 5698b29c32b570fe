"""Shift nodes, the bordered Vandermonde solve and l-infinity conditioning."""

from __future__ import annotations

import logging
import math

import numpy as np
import numpy.typing as npt

from powernet.errors import InvalidInputError, ShapeError, SingularSystemError, UnsupportedError
from powernet.models.network import FloatArray
from powernet.models.schemes import LambdaCoeffs, NodeKind, NodeScheme

logger = logging.getLogger(__name__)

_SQRT_3_2 = math.sqrt(1.5)

# Symmetric nodes minimizing the l-infinity condition number, s = 2..6.
OPTIMAL_NODES: dict[int, tuple[float, ...]] = {
    2: (1.0, -1.0),
    3: (_SQRT_3_2, 0.0, -_SQRT_3_2),
    4: (1.2228992744, 0.5552395908, -0.5552395908, -1.2228992744),
    5: (1.2001030479, 0.8077421768, 0.0, -0.8077421768, -1.2001030479),
    6: (
        1.1601101028,
        0.9771502216,
        0.3788765912,
        -0.3788765912,
        -0.9771502216,
        -1.1601101028,
    ),
}
MAX_OPTIMAL_ORDER = max(OPTIMAL_NODES)
_RESIDUAL_FACTOR = 1e-10
_ILL_CONDITIONED = 1e8


def make_nodes(scheme: NodeScheme) -> FloatArray:
    """Return the s shift nodes b_1..b_s of a scheme."""
    s = scheme.order
    if s < 1:
        raise InvalidInputError(f"node order must be positive, got {s}")
    match scheme.kind:
        case NodeKind.OPTIMAL:
            if s not in OPTIMAL_NODES:
                raise UnsupportedError(
                    f"optimal nodes are tabulated for s = 2..{MAX_OPTIMAL_ORDER}, got {s}"
                )
            return np.array(OPTIMAL_NODES[s])
        case NodeKind.CHEBYSHEV:
            if s == 1:
                return np.array([1.0])
            return np.cos(np.arange(s) * np.pi / (s - 1))
        case NodeKind.EQUIDISTANT:
            if s == 1:
                return np.array([1.0])
            return 1.0 - 2.0 * np.arange(s) / (s - 1)
    raise InvalidInputError(f"unknown node scheme {scheme.kind!r}")


def default_nodes(s: int) -> FloatArray:
    """Optimal nodes where tabulated, Chebyshev nodes beyond."""
    kind = NodeKind.OPTIMAL if s <= MAX_OPTIMAL_ORDER else NodeKind.CHEBYSHEV
    return make_nodes(NodeScheme(kind=kind, order=s))


def vandermonde_matrix(nodes: npt.ArrayLike) -> FloatArray:
    """V_s with entry (i, k) = b_k^(s - i), rows i = 1..s."""
    b = np.asarray(nodes, dtype=np.float64)
    return np.vander(b, b.shape[0]).T


def _check_distinct(b: FloatArray) -> None:
    if b.ndim != 1 or b.shape[0] < 1:
        raise ShapeError(f"nodes must be a non-empty vector, got shape {b.shape}")
    if np.unique(b).shape[0] != b.shape[0]:
        raise SingularSystemError(f"nodes must be pairwise distinct, got {b.tolist()}")


def cond_inf(nodes: npt.ArrayLike) -> float:
    """||V_s||_inf * ||V_s^-1||_inf."""
    b = np.asarray(nodes, dtype=np.float64)
    _check_distinct(b)
    matrix = vandermonde_matrix(b)
    try:
        inverse = np.linalg.inv(matrix)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"Vandermonde matrix is singular: {exc}") from exc
    value = float(np.linalg.norm(matrix, np.inf) * np.linalg.norm(inverse, np.inf))
    if not math.isfinite(value):
        raise SingularSystemError("Vandermonde matrix is singular to working precision")
    return value


def check_points(count: int) -> FloatArray:
    """Chebyshev points of the first kind used for residual checks."""
    return np.cos((2.0 * np.arange(count) + 1.0) * np.pi / (2.0 * count))


def solve_lambda(d: npt.ArrayLike, nodes: npt.ArrayLike) -> LambdaCoeffs:
    """Solve for lambda with lambda_0 + sum_k lambda_k (x + b_k)^s = sum_j d_j x^j.

    ``d`` is ordered d_s, ..., d_0. Rows of V_s match the coefficients of x^s down
    to x^1 after expanding (x + b_k)^s binomially; lambda_0 absorbs the constant.
    """
    b = np.asarray(nodes, dtype=np.float64)
    _check_distinct(b)
    target = np.asarray(d, dtype=np.float64)
    s = b.shape[0]
    if target.shape != (s + 1,):
        raise ShapeError(f"target needs {s + 1} coefficients for {s} nodes, got {target.shape}")

    ascending = target[::-1]
    rhs = np.array([ascending[j] / math.comb(s, j) for j in range(1, s + 1)])
    matrix = vandermonde_matrix(b)
    try:
        weights = np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"Vandermonde system is singular: {exc}") from exc
    offset = float(ascending[0] - weights @ b**s)
    coeffs = LambdaCoeffs(weights=weights, offset=offset, nodes=b, target=target)

    kappa = cond_inf(b)
    if kappa > _ILL_CONDITIONED:
        logger.warning("Vandermonde system with s=%d is ill conditioned: cond_inf=%.3e", s, kappa)
    points = check_points(s + 1)
    expected = np.polynomial.polynomial.polyval(points, ascending)
    residual = float(np.max(np.abs(coeffs.reconstruct(points) - expected)))
    tolerance = _RESIDUAL_FACTOR * kappa * max(1.0, float(np.sum(np.abs(target))))
    if residual > tolerance:
        raise SingularSystemError(
            f"combination residual {residual:.3e} exceeds {tolerance:.3e} (cond_inf={kappa:.3e})"
        )
    return coeffs


def condition_table(
    kinds: list[NodeKind], max_s: int, min_s: int = 2
) -> list[tuple[int, NodeKind, float]]:
    """cond_inf for every (s, scheme) pair; optimal nodes stop where the table does."""
    rows: list[tuple[int, NodeKind, float]] = []
    for s in range(min_s, max_s + 1):
        for kind in kinds:
            if kind is NodeKind.OPTIMAL and s > MAX_OPTIMAL_ORDER:
                continue
            rows.append((s, kind, cond_inf(make_nodes(NodeScheme(kind=kind, order=s)))))
    logger.debug("Computed %d condition numbers up to s=%d", len(rows), max_s)
    return rows
