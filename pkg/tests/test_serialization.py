"""Tests for net documents."""

from __future__ import annotations

import json
from collections.abc import Callable

import numpy as np
import pytest

from powernet.core.bivariate import xny_net
from powernet.core.monomial import monomial_net
from powernet.core.multipoly import hyperbolic_set, mpoly_net
from powernet.core.netcore import evaluate
from powernet.core.poly1d import build_poly_net, optimal_poly_net
from powernet.core.serialization import deserialize, from_document, serialize, to_document
from powernet.core.spectral import approximate_net_1d, approximate_net_md
from powernet.data.functions import get_function
from powernet.errors import DocumentError, InvalidInputError, ShapeError
from powernet.models.documents import LayerDocument, NetDocument
from powernet.models.network import PowerNet
from powernet.models.polynomials import MultiPoly, PolyCoeffs
from powernet.models.schemes import Strategy

_COEFFS = PolyCoeffs(coeffs=[0.3, -1.1, 0.0, 2.0 / 3.0, 1e-9, -0.25, 0.5, 0.125, -0.7, 1.0])


def _hyperbolic_poly() -> MultiPoly:
    indices = hyperbolic_set(6, 2)
    terms = {index: 1.0 / (1.0 + sum(index)) for index in indices}
    return MultiPoly(dim=2, terms=terms, support=indices)


_NETS: dict[str, Callable[[], PowerNet]] = {
    "monomial": lambda: monomial_net(37, 3, radius=1.5),
    "shallow": lambda: build_poly_net(PolyCoeffs(coeffs=[0.1, 0.2, 0.3]), 3, Strategy.SHALLOW),
    "horner": lambda: build_poly_net(_COEFFS, 2, Strategy.HORNER),
    "recursive": lambda: build_poly_net(_COEFFS, 3, Strategy.RECURSIVE),
    "optimal": lambda: build_poly_net(_COEFFS, 4, Strategy.OPTIMAL),
    "product": lambda: xny_net(2, 4, x_bound=2.0, y_bound=0.5),
    "multipoly": lambda: mpoly_net(_hyperbolic_poly(), 2),
    "approx": lambda: approximate_net_1d(np.exp, 10, 2, n_samples=64)[0],
    "approx_md": lambda: approximate_net_md(get_function("exp_sum", 2), 4, 2, 2, n_samples=64)[0],
}


class TestSerialize:
    def test_document_layout(self) -> None:
        payload = json.loads(serialize(monomial_net(2, 2)))
        assert payload == {
            "power": 2,
            "input_dim": 1,
            "layers": [
                {"A": [[1.0], [-1.0]], "b": [0.0, 0.0]},
                {"A": [[1.0, 1.0]], "b": [0.0]},
            ],
        }

    def test_trailing_newline(self) -> None:
        assert serialize(monomial_net(3, 2)).endswith("}\n")

    def test_weights_survive_bit_for_bit(self) -> None:
        net = optimal_poly_net(PolyCoeffs(coeffs=[0.1, -0.7, 1 / 3, 2.5e-8, 0.9]), 2)
        restored = deserialize(serialize(net))
        assert restored.power == net.power
        for layer, original in zip(restored.layers, net.layers, strict=True):
            np.testing.assert_array_equal(layer.weights, original.weights)
            np.testing.assert_array_equal(layer.bias, original.bias)
        assert evaluate(restored, [0.3])[0] == evaluate(net, [0.3])[0]

    @pytest.mark.parametrize("name", sorted(_NETS))
    def test_round_trip_is_weight_exact(self, name: str) -> None:
        net = _NETS[name]()
        restored = deserialize(serialize(net))
        assert (restored.power, restored.input_dim) == (net.power, net.input_dim)
        assert len(restored.layers) == len(net.layers)
        for layer, original in zip(restored.layers, net.layers, strict=True):
            np.testing.assert_array_equal(layer.weights, original.weights)
            np.testing.assert_array_equal(layer.bias, original.bias)
        assert serialize(restored) == serialize(net)

    def test_to_document(self) -> None:
        document = to_document(monomial_net(5, 3))
        assert document.power == 3
        assert len(document.layers) == monomial_net(5, 3).depth


class TestDeserialize:
    def test_malformed_json_reports_position(self) -> None:
        with pytest.raises(DocumentError) as excinfo:
            deserialize('{"power": 2,\n  "layers": [', source="net.json")
        assert excinfo.value.location.startswith("net.json:2:")

    def test_schema_error_reports_field(self) -> None:
        text = json.dumps({"power": 1, "input_dim": 1, "layers": [{"A": [[1.0]], "b": [0.0]}]})
        with pytest.raises(DocumentError) as excinfo:
            deserialize(text, source="net.json")
        assert excinfo.value.location == "net.json:power"

    def test_unknown_field(self) -> None:
        text = json.dumps(
            {"power": 2, "input_dim": 1, "layers": [{"A": [[1.0]], "b": [0.0]}], "extra": 1}
        )
        with pytest.raises(DocumentError):
            deserialize(text)

    def test_ragged_rows(self) -> None:
        document = NetDocument(
            power=2,
            input_dim=2,
            layers=[LayerDocument(A=[[1.0, 2.0], [3.0]], b=[0.0, 0.0])],
        )
        with pytest.raises(ShapeError):
            from_document(document)

    def test_layer_chain_mismatch(self) -> None:
        text = json.dumps(
            {
                "power": 2,
                "input_dim": 1,
                "layers": [{"A": [[1.0]], "b": [0.0]}, {"A": [[1.0, 1.0]], "b": [0.0]}],
            }
        )
        with pytest.raises(ShapeError):
            deserialize(text)

    def test_non_finite_weights(self) -> None:
        text = '{"power": 2, "input_dim": 1, "layers": [{"A": [[NaN]], "b": [0.0]}]}'
        with pytest.raises(InvalidInputError):
            deserialize(text)
