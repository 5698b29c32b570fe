"""Readers for coefficient files, polynomial documents, point sets and nets."""

from __future__ import annotations

import csv
import json
import logging
import math
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from powernet.core.serialization import deserialize
from powernet.errors import DocumentError, InvalidInputError
from powernet.models.documents import MultiPolyDocument
from powernet.models.network import FloatArray, PowerNet
from powernet.models.polynomials import MultiPoly, PolyCoeffs

logger = logging.getLogger(__name__)


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _parse_float(text: str, location: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise DocumentError(f"not a number: {text!r}", location) from exc
    if not math.isfinite(value):
        raise DocumentError(f"non-finite value {text!r}", location)
    return value


def read_coefficients(path: Path) -> PolyCoeffs:
    """Ascending coefficients from a JSON array (.json) or one value per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    text = _read_text(path)
    if path.suffix.lower() == ".json":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc
        if not isinstance(raw, list) or not raw:
            raise DocumentError("expected a non-empty JSON array of numbers", str(path))
        values = [_parse_float(str(entry), f"{path}[{index}]") for index, entry in enumerate(raw)]
    else:
        values = []
        for line_num, line in enumerate(text.splitlines(), 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                if stripped:
                    logger.debug("Skipping comment at %s:%d", path, line_num)
                continue
            values.append(_parse_float(stripped.rstrip(","), f"{path}:{line_num}"))
        if not values:
            raise DocumentError("no coefficients found", str(path))
    return PolyCoeffs(coeffs=values)


def read_multipoly(path: Path) -> MultiPoly:
    """A polynomial document {"dim": d, "terms": [{"k": [...], "a": real}]}."""
    text = _read_text(path)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc
    try:
        document = MultiPolyDocument.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise DocumentError(first["msg"], f"{path}:{location}") from exc
    terms: dict[tuple[int, ...], float] = {}
    for index, term in enumerate(document.terms):
        if len(term.k) != document.dim:
            raise DocumentError(
                f"exponent vector has length {len(term.k)}, expected {document.dim}",
                f"{path}:terms.{index}",
            )
        key = tuple(term.k)
        if key in terms:
            logger.warning("Merging repeated term %s in %s", key, path)
        terms[key] = terms.get(key, 0.0) + term.a
    return MultiPoly(dim=document.dim, terms=terms)


def read_points(path: Path, dim: int) -> FloatArray:
    """CSV rows of ``dim`` values each; blank and ``#`` lines are skipped."""
    rows: list[list[float]] = []
    lines = _read_text(path).splitlines()
    for line_num, record in enumerate(csv.reader(lines), 1):
        fields = [field.strip() for field in record]
        if not fields or not any(fields) or fields[0].startswith("#"):
            continue
        location = f"{path}:{line_num}"
        if len(fields) != dim:
            raise DocumentError(f"expected {dim} values, got {len(fields)}", location)
        rows.append([_parse_float(field, location) for field in fields])
    if not rows:
        logger.warning("No points found in %s", path)
        return np.zeros((0, dim))
    return np.array(rows)


def read_net(path: Path) -> PowerNet:
    return deserialize(_read_text(path), source=str(path))
