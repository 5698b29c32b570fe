"""Legendre projection front-end: quadrature, projections, basis change and sweeps."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence

import numpy as np
import numpy.typing as npt
from numpy.polynomial import legendre
from scipy.stats import qmc

from powernet.core.multipoly import hyperbolic_set, mpoly_net, tensor_set
from powernet.core.netcore import evaluate_batch
from powernet.core.poly1d import build_poly_net
from powernet.errors import ConvergenceError, InvalidInputError, NonFiniteError, UnsupportedError
from powernet.models.network import FloatArray, PowerNet, check_power
from powernet.models.polynomials import IndexSetKind, MultiIndexSet, MultiPoly, PolyCoeffs
from powernet.models.schemes import Strategy
from powernet.models.spectral import (
    DecayModel,
    ErrorReport,
    LegendreExpansion,
    QuadratureRule,
    SweepResult,
    SweepRow,
)

logger = logging.getLogger(__name__)

type Target = Callable[[FloatArray], npt.ArrayLike]

MAX_NEWTON_ITERATIONS = 100
MAX_LEGENDRE_DEGREE = 64
ADVISORY_LEGENDRE_DEGREE = 30
MAX_HYPERBOLIC_DEGREE = 32
SUPPORTED_DIMS = (2, 3)
SAMPLES_1D = 2048
SAMPLES_MD = 4096
EXACT_TOLERANCE = 1e-11
FIT_FLOOR = 1e-14

_NEWTON_TOLERANCE = 10.0 * np.finfo(np.float64).eps


def _legendre_pair(n: int, x: FloatArray) -> tuple[FloatArray, FloatArray]:
    """P_n(x) and P_n'(x) by the three-term recurrence."""
    previous = np.ones_like(x)
    current = x.copy()
    for k in range(2, n + 1):
        previous, current = current, ((2 * k - 1) * x * current - (k - 1) * previous) / k
    derivative = n * (x * current - previous) / (x * x - 1.0)
    return current, derivative


def gauss_legendre(nq: int) -> QuadratureRule:
    """Gauss-Legendre rule with nq nodes by Newton iteration on P_nq."""
    if nq < 1:
        raise InvalidInputError(f"quadrature needs at least one node, got {nq}")
    if nq == 1:
        return QuadratureRule(nodes=np.zeros(1), weights=np.full(1, 2.0))
    x = np.cos(np.pi * (np.arange(1, nq + 1) - 0.25) / (nq + 0.5))
    for iteration in range(MAX_NEWTON_ITERATIONS):
        value, derivative = _legendre_pair(nq, x)
        step = value / derivative
        x = x - step
        if np.max(np.abs(step)) <= _NEWTON_TOLERANCE:
            logger.debug("Gauss-Legendre nq=%d converged after %d steps", nq, iteration + 1)
            break
    else:
        raise ConvergenceError(
            f"Newton iteration for {nq} Gauss-Legendre nodes did not converge "
            f"in {MAX_NEWTON_ITERATIONS} steps"
        )
    _, derivative = _legendre_pair(nq, x)
    weights = 2.0 / ((1.0 - x * x) * derivative**2)
    order = np.argsort(x)
    return QuadratureRule(nodes=x[order], weights=weights[order])


def _sample(f: Target, points: FloatArray) -> FloatArray:
    values = np.asarray(f(points), dtype=np.float64).reshape(points.shape[0])
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("target function returned non-finite values")
    return values


def _quadrature_size(N: int, nq: int | None) -> int:
    if N < 0:
        raise InvalidInputError(f"degree must be non-negative, got {N}")
    size = 2 * (N + 1) if nq is None else nq
    if size < N + 1:
        raise InvalidInputError(
            f"projection of degree {N} needs at least {N + 1} nodes, got {size}"
        )
    return size


def _analysis_matrix(rule: QuadratureRule, N: int) -> FloatArray:
    """Row k maps samples at the nodes to c_k = (2k+1)/2 sum_i w_i f(x_i) P_k(x_i)."""
    basis = legendre.legvander(rule.nodes, N)
    return (basis * rule.weights[:, None]).T * ((2.0 * np.arange(N + 1) + 1.0) / 2.0)[:, None]


def project_legendre(f: Target, N: int, nq: int | None = None) -> LegendreExpansion:
    """Discrete L2 projection of f onto polynomials of degree <= N."""
    rule = gauss_legendre(_quadrature_size(N, nq))
    coeffs = _analysis_matrix(rule, N) @ _sample(f, rule.nodes)
    return LegendreExpansion(coeffs=coeffs)


def legendre_monomial_matrix(N: int) -> FloatArray:
    """Row k holds the ascending monomial coefficients of P_k."""
    matrix = np.zeros((N + 1, N + 1))
    matrix[0, 0] = 1.0
    if N >= 1:
        matrix[1, 1] = 1.0
    for k in range(1, N):
        matrix[k + 1, 1:] = (2 * k + 1) * matrix[k, :-1]
        matrix[k + 1] -= k * matrix[k - 1]
        matrix[k + 1] /= k + 1
    return matrix


def _check_legendre_degree(N: int, cap: int) -> None:
    if N > cap:
        raise UnsupportedError(
            f"Legendre-to-monomial conversion is capped at degree {cap}, got {N}"
        )
    if N > ADVISORY_LEGENDRE_DEGREE:
        logger.warning(
            "Legendre-to-monomial conversion at degree %d loses accuracy above degree %d",
            N,
            ADVISORY_LEGENDRE_DEGREE,
        )


def legendre_to_monomial(
    expansion: LegendreExpansion, *, cap: int = MAX_LEGENDRE_DEGREE
) -> PolyCoeffs:
    """Exact triangular change of basis from Legendre to monomial coefficients."""
    _check_legendre_degree(expansion.degree, cap)
    coeffs = expansion.coeffs @ legendre_monomial_matrix(expansion.degree)
    return PolyCoeffs(coeffs=coeffs.tolist())


def _sampling_grid_1d(n_samples: int) -> FloatArray:
    return np.linspace(-1.0, 1.0, n_samples)


def halton_points(count: int, d: int) -> FloatArray:
    """Unscrambled Halton points mapped to [-1, 1]^d; deterministic."""
    sampler = qmc.Halton(d=d, scramble=False)
    return 2.0 * sampler.random(count) - 1.0


def _report(
    degree: int, errors: FloatArray, compile_errors: FloatArray, volume: float
) -> ErrorReport:
    return ErrorReport(
        degree=degree,
        l2_error=float(np.sqrt(volume * np.mean(errors**2))),
        linf_error=float(np.max(np.abs(errors))),
        n_samples=int(errors.shape[0]),
        compile_error=float(np.max(np.abs(compile_errors))),
    )


def approximate_net_1d(
    f: Target,
    N: int,
    s: int,
    *,
    nq: int | None = None,
    n_samples: int = SAMPLES_1D,
    strategy: Strategy = Strategy.OPTIMAL,
    cap: int = MAX_LEGENDRE_DEGREE,
) -> tuple[PowerNet, ErrorReport]:
    """Project, convert to monomials and compile; report errors on an equispaced grid."""
    s = check_power(s)
    expansion = project_legendre(f, N, nq)
    poly = legendre_to_monomial(expansion, cap=cap)
    net = build_poly_net(poly, s, strategy)
    grid = _sampling_grid_1d(n_samples)
    values = evaluate_batch(net, grid[:, None])[:, 0]
    report = _report(
        N,
        values - _sample(f, grid),
        values - legendre.legval(grid, expansion.coeffs),
        2.0,
    )
    logger.debug(
        "Degree %d approximation: l2=%.3e linf=%.3e compile=%.3e",
        N,
        report.l2_error,
        report.linf_error,
        report.compile_error,
    )
    return net, report


def _check_multivariate(N: int, d: int, cap: int) -> None:
    if d not in SUPPORTED_DIMS:
        raise UnsupportedError(f"multivariate projection supports d in {SUPPORTED_DIMS}, got {d}")
    if N > cap:
        raise UnsupportedError(f"multivariate projection is capped at degree {cap}, got {N}")


def _transform_axes(coeffs: FloatArray, matrix: FloatArray) -> FloatArray:
    """Apply ``matrix`` along every axis of a tensor."""
    for axis in range(coeffs.ndim):
        coeffs = np.moveaxis(np.tensordot(matrix, coeffs, axes=(1, axis)), 0, axis)
    return coeffs


def legendre_tensor_coeffs(f: Target, N: int, d: int, nq: int | None = None) -> FloatArray:
    """c_k for every k in {0..N}^d from a tensor Gauss-Legendre grid."""
    rule = gauss_legendre(_quadrature_size(N, nq))
    grids = np.meshgrid(*([rule.nodes] * d), indexing="ij")
    points = np.column_stack([grid.reshape(-1) for grid in grids])
    samples = _sample(f, points).reshape((rule.size,) * d)
    return _transform_axes(samples, _analysis_matrix(rule, N))


def project_multivariate(
    f: Target, indices: MultiIndexSet, N: int, nq: int | None = None
) -> tuple[MultiPoly, FloatArray]:
    """Project onto span{P_k : k in indices} and return (monomial form, Legendre tensor).

    The Legendre tensor is zero outside ``indices``; the monomial form has
    ``indices`` as its support, which is downward closed for the built-in sets.
    """
    d = indices.dim
    coeffs = legendre_tensor_coeffs(f, N, d, nq)
    mask = np.zeros(coeffs.shape, dtype=bool)
    for index in indices:
        mask[index] = True
    coeffs = np.where(mask, coeffs, 0.0)
    monomial = _transform_axes(coeffs, legendre_monomial_matrix(N).T)
    terms = {index: float(monomial[index]) for index in indices}
    return MultiPoly(dim=d, terms=terms, support=indices), coeffs


def project_hyperbolic(
    f: Target, N: int, d: int, nq: int | None = None, *, cap: int = MAX_HYPERBOLIC_DEGREE
) -> MultiPoly:
    """Hyperbolic-cross projection in monomial form."""
    _check_multivariate(N, d, cap)
    poly, _ = project_multivariate(f, hyperbolic_set(N, d), N, nq)
    return poly


def project_tensor(
    f: Target, N: int, d: int, nq: int | None = None, *, cap: int = MAX_HYPERBOLIC_DEGREE
) -> MultiPoly:
    """Full tensor-product projection in monomial form."""
    _check_multivariate(N, d, cap)
    poly, _ = project_multivariate(f, tensor_set(N, d), N, nq)
    return poly


def legendre_values(coeffs: FloatArray, points: FloatArray) -> FloatArray:
    """sum_k c_k prod_i P_{k_i}(x_i) at each row of ``points``."""
    d = coeffs.ndim
    N = coeffs.shape[0] - 1
    letters = "abcdefgh"[:d]
    operands = [legendre.legvander(points[:, axis], N) for axis in range(d)]
    subscripts = ",".join(f"m{letter}" for letter in letters) + f",{letters}->m"
    return np.einsum(subscripts, *operands, coeffs)


def approximate_net_md(
    f: Target,
    N: int,
    d: int,
    s: int,
    *,
    nq: int | None = None,
    n_samples: int = SAMPLES_MD,
    kind: IndexSetKind = IndexSetKind.HYPERBOLIC,
    cap: int = MAX_HYPERBOLIC_DEGREE,
) -> tuple[PowerNet, ErrorReport]:
    """Hyperbolic (or tensor) projection compiled through the multivariate builder."""
    s = check_power(s)
    _check_multivariate(N, d, cap)
    match kind:
        case IndexSetKind.HYPERBOLIC:
            indices = hyperbolic_set(N, d)
        case IndexSetKind.TENSOR:
            indices = tensor_set(N, d)
        case _:
            raise InvalidInputError(f"unsupported projection set {kind}")
    poly, coeffs = project_multivariate(f, indices, N, nq)
    net = mpoly_net(poly, s)
    points = halton_points(n_samples, d)
    values = evaluate_batch(net, points)[:, 0]
    report = _report(
        N,
        values - _sample(f, points),
        values - legendre_values(coeffs, points),
        2.0**d,
    )
    logger.debug(
        "%s approximation N=%d d=%d: l2=%.3e linf=%.3e compile=%.3e",
        kind,
        N,
        d,
        report.l2_error,
        report.linf_error,
        report.compile_error,
    )
    return net, report


def _fit_residual(x: FloatArray, y: FloatArray) -> tuple[float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sum((slope * x + intercept - y) ** 2))
    return float(slope), residual


def fit_decay(Ns: Sequence[int], errors: Sequence[float]) -> SweepResult:
    """Fit log error against log N and against N; keep the smaller residual.

    Errors at or below a roundoff floor are left out of both fits.
    """
    degrees = np.asarray(Ns, dtype=np.float64)
    values = np.asarray(errors, dtype=np.float64)
    rows: list[SweepRow] = []
    if np.all(values <= EXACT_TOLERANCE):
        return SweepResult(rows=rows, model=DecayModel.EXACT)
    keep = values > FIT_FLOOR
    if np.count_nonzero(keep) < 2:
        keep = values > 0.0
    if np.count_nonzero(keep) < 2:
        return SweepResult(rows=rows, model=DecayModel.ALGEBRAIC)
    log_errors = np.log(values[keep])
    algebraic, algebraic_residual = _fit_residual(np.log(degrees[keep]), log_errors)
    exponential, exponential_residual = _fit_residual(degrees[keep], log_errors)
    if exponential_residual < algebraic_residual:
        model, rate = DecayModel.EXPONENTIAL, exponential
    else:
        model, rate = DecayModel.ALGEBRAIC, algebraic
    return SweepResult(
        rows=rows,
        model=model,
        rate=rate,
        algebraic_slope=algebraic,
        exponential_slope=exponential,
    )


def convergence_sweep(
    f: Target,
    Ns: Sequence[int],
    s: int,
    d: int = 1,
    *,
    n_samples: int | None = None,
    cap: int | None = None,
) -> SweepResult:
    """Approximate over increasing degrees and fit the observed L2 decay."""
    degrees = list(Ns)
    if not degrees or any(b <= a for a, b in zip(degrees, degrees[1:], strict=False)):
        raise InvalidInputError(f"degrees must be a non-empty increasing list, got {degrees}")
    if degrees[0] < 1:
        raise InvalidInputError("sweep degrees must be positive")
    rows: list[SweepRow] = []
    for N in degrees:
        if d == 1:
            _, report = approximate_net_1d(
                f, N, s, n_samples=n_samples or SAMPLES_1D, cap=cap or MAX_LEGENDRE_DEGREE
            )
        else:
            _, report = approximate_net_md(
                f, N, d, s, n_samples=n_samples or SAMPLES_MD, cap=cap or MAX_HYPERBOLIC_DEGREE
            )
        rows.append(SweepRow(N=N, l2=report.l2_error, linf=report.linf_error))
        logger.info("N=%d l2=%.3e linf=%.3e", N, report.l2_error, report.linf_error)
    result = fit_decay(degrees, [row.l2 for row in rows])
    result.rows = rows
    if result.rate is not None:
        logger.info("Selected %s decay with slope %.3f", result.model, result.rate)
    return result


def log_fit_r2(x: npt.ArrayLike, y: npt.ArrayLike) -> float:
    """Coefficient of determination of a least-squares line through (x, log y)."""
    xs = np.asarray(x, dtype=np.float64)
    ys = np.log(np.asarray(y, dtype=np.float64))
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = float(np.sum((ys - slope * xs - intercept) ** 2))
    total = float(np.sum((ys - ys.mean()) ** 2))
    return 1.0 - residual / total if total > 0.0 else 1.0


def hyperbolic_cardinality(N: int, d: int) -> int:
    """|{k : prod max(1, k_i) <= N}| by brute force."""
    return len(hyperbolic_set(N, d))


