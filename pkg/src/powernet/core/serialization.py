"""JSON round trip for PowerNet values."""

from __future__ import annotations

import json

import numpy as np
from pydantic import ValidationError

from powernet.errors import DocumentError, ShapeError
from powernet.models.documents import LayerDocument, NetDocument
from powernet.models.network import AffineLayer, PowerNet


def to_document(net: PowerNet) -> NetDocument:
    return NetDocument(
        power=net.power,
        input_dim=net.input_dim,
        layers=[
            LayerDocument(A=layer.weights.tolist(), b=layer.bias.tolist()) for layer in net.layers
        ],
    )


def from_document(document: NetDocument) -> PowerNet:
    """Rebuild a net, re-checking every layer shape."""
    layers: list[AffineLayer] = []
    for index, layer in enumerate(document.layers):
        widths = {len(row) for row in layer.A}
        if len(widths) > 1:
            raise ShapeError(f"layer {index} has rows of different lengths {sorted(widths)}")
        try:
            layers.append(AffineLayer(weights=np.array(layer.A), bias=np.array(layer.b)))
        except ShapeError as exc:
            raise ShapeError(f"layer {index}: {exc}") from exc
    return PowerNet(power=document.power, layers=tuple(layers), input_dim=document.input_dim)


def serialize(net: PowerNet) -> str:
    """JSON text; floats use Python's shortest round-trip repr."""
    return json.dumps(to_document(net).model_dump(), indent=2) + "\n"


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"])


def deserialize(text: str, *, source: str = "<string>") -> PowerNet:
    """Parse a net document; malformed JSON or schema errors raise DocumentError."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from exc
    try:
        document = NetDocument.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise DocumentError(first["msg"], f"{source}:{_location(exc)}") from exc
    return from_document(document)
