"""Experiment service: conditioning tables, approximations and convergence sweeps."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING

from result import Err, Ok, Result

from powernet.core.netcore import stats
from powernet.core.spectral import approximate_net_1d, approximate_net_md, convergence_sweep
from powernet.core.vandermonde import condition_table
from powernet.data.functions import get_function
from powernet.errors import PowerNetError, UnsupportedError
from powernet.models.network import NetStats, PowerNet
from powernet.models.schemes import NodeKind
from powernet.models.spectral import ConditionRow, ErrorReport, SweepResult

if TYPE_CHECKING:
    from powernet.config import Config

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class ApproximationOutcome:
    net: PowerNet
    report: ErrorReport
    stats: NetStats


class ExperimentService:
    """Runs the numerical experiments behind the cond, approx and sweep commands."""

    def __init__(self, config: Config) -> None:
        self._config = config

    def _check_power(self, s: int) -> None:
        if s > self._config.max_power:
            raise UnsupportedError(
                f"power {s} exceeds the configured maximum {self._config.max_power}"
            )

    def condition_table(
        self, kinds: Sequence[NodeKind], max_s: int
    ) -> Result[list[ConditionRow], PowerNetError]:
        try:
            self._check_power(max_s)
            rows = condition_table(list(kinds), max_s)
        except PowerNetError as exc:
            return Err(exc)
        return Ok([ConditionRow(s=s, scheme=str(kind), cond_inf=value) for s, kind, value in rows])

    def approximate(
        self, name: str, N: int, s: int, d: int = 1
    ) -> Result[ApproximationOutcome, PowerNetError]:
        """Project a named target, compile it and measure the error."""
        try:
            self._check_power(s)
            target = get_function(name, d)
            if d == 1:
                net, report = approximate_net_1d(
                    target,
                    N,
                    s,
                    n_samples=self._config.report_points_1d,
                    cap=self._config.max_legendre_degree,
                )
            else:
                net, report = approximate_net_md(
                    target,
                    N,
                    d,
                    s,
                    n_samples=self._config.report_points_md,
                    cap=self._config.max_hyperbolic_degree,
                )
        except PowerNetError as exc:
            return Err(exc)
        logger.info("%s at N=%d: l2=%.3e linf=%.3e", name, N, report.l2_error, report.linf_error)
        return Ok(ApproximationOutcome(net=net, report=report, stats=stats(net)))

    def sweep(
        self, name: str, Ns: Sequence[int], s: int, d: int = 1
    ) -> Result[SweepResult, PowerNetError]:
        try:
            self._check_power(s)
            target = get_function(name, d)
            if d == 1:
                samples, cap = self._config.report_points_1d, self._config.max_legendre_degree
            else:
                samples, cap = self._config.report_points_md, self._config.max_hyperbolic_degree
            return Ok(convergence_sweep(target, Ns, s, d, n_samples=samples, cap=cap))
        except PowerNetError as exc:
            return Err(exc)
