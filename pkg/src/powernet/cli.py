"""Typer CLI for PowerNet: build, inspect and evaluate sigma_s networks."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Annotated, Any, NoReturn

import typer
from result import Err, Ok, Result
from typer.core import TyperGroup

from powernet.config import Config
from powernet.core.netcore import evaluate, evaluate_batch, stats
from powernet.data.readers import read_coefficients, read_multipoly, read_net, read_points
from powernet.data.writers import format_cell, write_net, write_rows, write_text
from powernet.errors import InvalidInputError, PowerNetError
from powernet.models.schemes import NodeKind, Strategy
from powernet.services.build_service import BuildOutcome
from powernet.services.container import ServiceContainer

logger = logging.getLogger(__name__)


# typer re-exports BadParameter from the click it runs on, which may be a bundled copy;
# its parent class is that click's UsageError.
_UsageError: type[Exception] = typer.BadParameter.__mro__[1]


class _PowerNetGroup(TyperGroup):
    """Usage errors exit with status 1 like every other validation failure."""

    def make_context(
        self,
        info_name: str | None,
        args: list[str],
        parent: Any = None,
        **extra: Any,
    ) -> Any:
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except _UsageError as exc:
            exc.exit_code = 1  # type: ignore[attr-defined]
            raise

    def invoke(self, ctx: Any) -> Any:
        try:
            return super().invoke(ctx)
        except _UsageError as exc:
            exc.exit_code = 1  # type: ignore[attr-defined]
            raise


app = typer.Typer(
    name="powernet",
    help="Exact sigma_s (RePU) networks for polynomials and spectral approximations.",
    cls=_PowerNetGroup,
    no_args_is_help=True,
)


def _fail(error: PowerNetError) -> NoReturn:
    typer.echo(f"error: {error}", err=True)
    raise typer.Exit(code=error.exit_code)


def _unwrap[T](result: Result[T, PowerNetError]) -> T:
    match result:
        case Ok(value):
            return value
        case Err(error):
            _fail(error)


def _services(ctx: typer.Context) -> ServiceContainer:
    return ctx.ensure_object(dict)["services"]


def _emit(outcome: BuildOutcome, out: Path | None) -> None:
    net_stats = outcome.stats
    typer.echo(
        f"{outcome.description}: depth {net_stats.depth}, nodes {net_stats.nodes}, "
        f"nonzeros {net_stats.nonzeros}, oracle error {outcome.oracle_error:.2e}",
        err=True,
    )
    try:
        write_net(out, outcome.net)
    except PowerNetError as exc:
        _fail(exc)


@app.callback()
def main(
    ctx: typer.Context,
    seed: Annotated[
        int,
        typer.Option("--seed", help="Seed for oracle sample points (POWERNET_SEED wins)"),
    ] = 0,
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Log construction details to standard error"),
    ] = False,
    workers: Annotated[
        int,
        typer.Option("--workers", min=1, help="Threads for batch evaluation of point files"),
    ] = 1,
) -> None:
    """Build, evaluate and measure sigma_s networks."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        config = Config.from_env(seed=seed, workers=workers)
    except PowerNetError as exc:
        _fail(exc)
    ctx.ensure_object(dict)["services"] = ServiceContainer.create(config)


@app.command("build-mono")
def build_mono(
    ctx: typer.Context,
    s: Annotated[int, typer.Option("--s", help="Activation power s >= 2")],
    n: Annotated[int, typer.Option("--n", help="Monomial degree n >= 0")],
    out: Annotated[Path | None, typer.Option("--out", help="Write the net here")] = None,
) -> None:
    """Build the exact net for x^n."""
    outcome = _unwrap(_services(ctx).build_service.build_monomial(n, s))
    _emit(outcome, out)


@app.command("build-poly")
def build_poly(
    ctx: typer.Context,
    coeffs: Annotated[
        Path, typer.Option("--coeffs", help="Coefficients, ascending (CSV lines or JSON array)")
    ],
    s: Annotated[int, typer.Option("--s", help="Activation power s >= 2")],
    strategy: Annotated[
        Strategy, typer.Option("--strategy", help="Construction strategy")
    ] = Strategy.AUTO,
    out: Annotated[Path | None, typer.Option("--out", help="Write the net here")] = None,
) -> None:
    """Build a net for a univariate polynomial."""
    try:
        p = read_coefficients(coeffs)
    except PowerNetError as exc:
        _fail(exc)
    outcome = _unwrap(_services(ctx).build_service.build_polynomial(p, s, strategy))
    _emit(outcome, out)


@app.command("build-mpoly")
def build_mpoly(
    ctx: typer.Context,
    terms: Annotated[Path, typer.Option("--terms", help="Multivariate polynomial document")],
    s: Annotated[int, typer.Option("--s", help="Activation power s >= 2")],
    out: Annotated[Path | None, typer.Option("--out", help="Write the net here")] = None,
) -> None:
    """Build a net for a multivariate polynomial on a downward closed support."""
    try:
        f = read_multipoly(terms)
    except PowerNetError as exc:
        _fail(exc)
    outcome = _unwrap(_services(ctx).build_service.build_multipoly(f, s))
    _emit(outcome, out)


@app.command("eval")
def eval_net(
    ctx: typer.Context,
    net_path: Annotated[Path, typer.Option("--net", help="Net document")],
    x: Annotated[
        list[float] | None, typer.Option("--x", help="Input coordinate; repeat for d > 1")
    ] = None,
    points: Annotated[
        Path | None, typer.Option("--points", help="CSV file with one input per row")
    ] = None,
) -> None:
    """Evaluate a net at one point or at every row of a CSV file."""
    config = _services(ctx).config
    try:
        if (x is None) == (points is None):
            raise InvalidInputError("pass exactly one of --x or --points")
        net = read_net(net_path)
        if x is not None:
            rows = [evaluate(net, x).tolist()]
        else:
            assert points is not None
            values = evaluate_batch(
                net,
                read_points(points, net.input_dim),
                chunk=config.batch_chunk,
                workers=config.workers,
            )
            rows = values.tolist()
    except PowerNetError as exc:
        _fail(exc)
    write_text(None, "".join(",".join(format_cell(v) for v in row) + "\n" for row in rows))


@app.command("stats")
def stats_cmd(
    net_path: Annotated[Path, typer.Option("--net", help="Net document")],
) -> None:
    """Print depth, node and nonzero counts of a net as JSON."""
    try:
        net = read_net(net_path)
    except PowerNetError as exc:
        _fail(exc)
    typer.echo(stats(net).model_dump_json(indent=2))


def _parse_kinds(text: str) -> list[NodeKind]:
    kinds: list[NodeKind] = []
    for part in text.split(","):
        name = part.strip().lower()
        if not name:
            continue
        try:
            kinds.append(NodeKind(name))
        except ValueError:
            known = ", ".join(kind.value for kind in NodeKind)
            _fail(InvalidInputError(f"unknown node scheme {name!r}; choose from {known}"))
    if not kinds:
        _fail(InvalidInputError("no node schemes given"))
    return kinds


def _parse_degrees(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        _fail(InvalidInputError(f"degrees must be comma separated integers, got {text!r}"))


@app.command("cond")
def cond(
    ctx: typer.Context,
    schemes: Annotated[
        str, typer.Option("--schemes", help="Comma separated: chebyshev, equidistant, optimal")
    ] = "chebyshev,equidistant",
    max_s: Annotated[int, typer.Option("--max-s", help="Largest power in the table")] = 12,
    out: Annotated[Path | None, typer.Option("--out", help="Write the CSV here")] = None,
) -> None:
    """Tabulate the l-infinity condition number of the shift Vandermonde matrix."""
    kinds = _parse_kinds(schemes)
    rows = _unwrap(_services(ctx).experiment_service.condition_table(kinds, max_s))
    try:
        write_rows(out, ["s", "scheme", "cond_inf"], ([r.s, r.scheme, r.cond_inf] for r in rows))
    except PowerNetError as exc:
        _fail(exc)
    typer.echo(f"{len(rows)} rows", err=True)


@app.command("approx")
def approx(
    ctx: typer.Context,
    func: Annotated[str, typer.Option("--func", help="Target function name")],
    degree: Annotated[int, typer.Option("--N", help="Projection degree")],
    s: Annotated[int, typer.Option("--s", help="Activation power s >= 2")],
    d: Annotated[int, typer.Option("--d", help="Input dimension")] = 1,
    out: Annotated[Path | None, typer.Option("--out", help="Write the net here")] = None,
) -> None:
    """Project a target onto polynomials and compile the projection into a net."""
    outcome = _unwrap(_services(ctx).experiment_service.approximate(func, degree, s, d))
    typer.echo(
        f"depth {outcome.stats.depth}, nodes {outcome.stats.nodes}, "
        f"nonzeros {outcome.stats.nonzeros}",
        err=True,
    )
    try:
        if out is not None:
            write_net(out, outcome.net)
    except PowerNetError as exc:
        _fail(exc)
    typer.echo(outcome.report.model_dump_json(indent=2))


@app.command("sweep")
def sweep(
    ctx: typer.Context,
    func: Annotated[str, typer.Option("--func", help="Target function name")],
    degrees: Annotated[str, typer.Option("--Ns", help="Comma separated increasing degrees")],
    s: Annotated[int, typer.Option("--s", help="Activation power s >= 2")] = 2,
    d: Annotated[int, typer.Option("--d", help="Input dimension")] = 1,
    out: Annotated[Path | None, typer.Option("--out", help="Write the CSV here")] = None,
) -> None:
    """Measure the error decay over a list of degrees and fit its rate."""
    Ns = _parse_degrees(degrees)
    result = _unwrap(_services(ctx).experiment_service.sweep(func, Ns, s, d))
    try:
        write_rows(out, ["N", "l2", "linf"], ([row.N, row.l2, row.linf] for row in result.rows))
    except PowerNetError as exc:
        _fail(exc)
    summary = {
        "model": str(result.model),
        "rate": result.rate,
        "algebraic_slope": result.algebraic_slope,
        "exponential_slope": result.exponential_slope,
    }
    typer.echo(json.dumps(summary), err=True)
