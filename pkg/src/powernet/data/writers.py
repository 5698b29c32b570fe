"""Output helpers: net documents and CSV tables with round-trip floats."""

from __future__ import annotations

import csv
import io
import logging
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path

from powernet.core.serialization import serialize
from powernet.errors import InvalidInputError
from powernet.models.network import PowerNet

logger = logging.getLogger(__name__)

type Cell = str | int | float


def format_cell(value: Cell) -> str:
    """repr for floats so values read back bit for bit."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_rows(header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(value) for value in row])
    return buffer.getvalue()


def write_text(path: Path | None, text: str) -> None:
    """Write to ``path``, or to standard output when it is None."""
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    logger.info("Wrote %s", path)


def write_rows(
    path: Path | None, header: Sequence[str], rows: Iterable[Sequence[Cell]]
) -> None:
    write_text(path, render_rows(header, rows))


def write_net(path: Path | None, net: PowerNet) -> None:
    write_text(path, serialize(net))
