"""Build service: construct nets and check them against direct evaluation."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from result import Err, Ok, Result

from powernet.core.monomial import compensated_power, monomial_net
from powernet.core.multipoly import mpoly_bound, mpoly_eval, mpoly_net
from powernet.core.netcore import evaluate_batch, stats
from powernet.core.poly1d import build_poly_net, horner_eval, poly_bound, trimmed
from powernet.errors import OracleMismatchError, PowerNetError, UnsupportedError
from powernet.models.network import FloatArray, NetStats, PowerNet
from powernet.models.polynomials import MultiPoly, PolyCoeffs
from powernet.models.schemes import Strategy

if TYPE_CHECKING:
    from powernet.config import Config

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class BuildOutcome:
    """A verified net with its size counts and the largest scaled oracle error."""

    net: PowerNet
    stats: NetStats
    oracle_error: float
    description: str


class BuildService:
    """Builds monomial, polynomial and multivariate nets and verifies them."""

    def __init__(self, config: Config) -> None:
        self._config = config

    def _check_power(self, s: int) -> None:
        if s > self._config.max_power:
            raise UnsupportedError(
                f"power {s} exceeds the configured maximum {self._config.max_power}"
            )

    def _sample(self, dim: int) -> FloatArray:
        rng = np.random.default_rng(self._config.seed)
        radius = self._config.domain_radius
        return rng.uniform(-radius, radius, size=(self._config.oracle_points, dim))

    def _verify(
        self,
        net: PowerNet,
        reference: Callable[[FloatArray], FloatArray],
        bound: float,
        description: str,
    ) -> BuildOutcome:
        points = self._sample(net.input_dim)
        values = evaluate_batch(net, points, chunk=self._config.batch_chunk)[:, 0]
        scale = max(1.0, bound)
        error = float(np.max(np.abs(values - reference(points)))) / scale
        if error > self._config.oracle_rtol:
            raise OracleMismatchError(
                f"{description}: net differs from direct evaluation by {error:.3e} "
                f"(tolerance {self._config.oracle_rtol:.1e})"
            )
        net_stats = stats(net)
        logger.info(
            "%s: depth=%d nodes=%d nonzeros=%d oracle_error=%.2e",
            description,
            net_stats.depth,
            net_stats.nodes,
            net_stats.nonzeros,
            error,
        )
        return BuildOutcome(
            net=net, stats=net_stats, oracle_error=error, description=description
        )

    def build_monomial(self, n: int, s: int) -> Result[BuildOutcome, PowerNetError]:
        """Net for x^n checked against compensated repeated multiplication."""
        try:
            self._check_power(s)
            radius = self._config.domain_radius
            net = monomial_net(n, s, radius=radius)
            bound = float(np.float_power(radius, n))
            return Ok(
                self._verify(
                    net, lambda points: compensated_power(points[:, 0], n), bound, f"x^{n}"
                )
            )
        except PowerNetError as exc:
            return Err(exc)

    def build_polynomial(
        self, p: PolyCoeffs, s: int, strategy: Strategy = Strategy.AUTO
    ) -> Result[BuildOutcome, PowerNetError]:
        """Net for a univariate polynomial checked against Horner's rule."""
        try:
            self._check_power(s)
            radius = self._config.domain_radius
            net = build_poly_net(p, s, strategy, radius=radius)
            a = trimmed(p)
            description = f"degree-{a.shape[0] - 1} polynomial ({strategy})"
            return Ok(
                self._verify(
                    net,
                    lambda points: horner_eval(a, points[:, 0]),
                    poly_bound(a, radius),
                    description,
                )
            )
        except PowerNetError as exc:
            return Err(exc)

    def build_multipoly(self, f: MultiPoly, s: int) -> Result[BuildOutcome, PowerNetError]:
        """Net for a multivariate polynomial checked term by term."""
        try:
            self._check_power(s)
            radius = self._config.domain_radius
            net = mpoly_net(f, s, radius=radius)
            description = f"{f.dim}-variate polynomial with {len(f.terms)} terms"
            return Ok(
                self._verify(
                    net,
                    lambda points: np.array([mpoly_eval(f, point) for point in points]),
                    mpoly_bound(f.terms, radius),
                    description,
                )
            )
        except PowerNetError as exc:
            return Err(exc)
