"""Tests for the univariate polynomial strategies."""

from __future__ import annotations

import math

import numpy as np
import pytest

from powernet.core.monomial import monomial_net
from powernet.core.multipoly import ceil_log
from powernet.core.netcore import evaluate, evaluate_batch, stats
from powernet.core.poly1d import (
    build_poly_net,
    coefficient_groups,
    horner_eval,
    horner_net,
    optimal_poly_net,
    poly_bound,
    recursive_poly_net,
    shallow_poly_net,
    trimmed,
    wide_groups,
)
from powernet.errors import StrategyError
from powernet.models.network import PowerNet
from powernet.models.polynomials import PolyCoeffs
from powernet.models.schemes import Strategy

DEGREES = (1, 2, 3, 4, 5, 6, 7, 9, 10, 16, 17, 25, 26, 40, 64, 81, 100)
DEEP = (Strategy.RECURSIVE, Strategy.OPTIMAL)


def _poly(coeffs: list[float] | np.ndarray) -> PolyCoeffs:
    return PolyCoeffs(coeffs=[float(c) for c in coeffs])


def _random_poly(rng: np.random.Generator, n: int) -> PolyCoeffs:
    return _poly(rng.uniform(-1.0, 1.0, size=n + 1))


def _assert_matches_horner(net: PowerNet, p: PolyCoeffs, x: np.ndarray) -> None:
    values = evaluate_batch(net, x[:, None])[:, 0]
    expected = horner_eval(p.coeffs, x)
    tolerance = 1e-9 * max(1.0, float(np.sum(np.abs(p.coeffs))))
    np.testing.assert_allclose(values, expected, rtol=0.0, atol=tolerance)


class TestHelpers:
    def test_trimmed(self) -> None:
        np.testing.assert_array_equal(trimmed(_poly([1.0, 2.0, 0.0, 0.0])), [1.0, 2.0])
        np.testing.assert_array_equal(trimmed(_poly([0.0, 0.0])), [0.0])

    def test_groups_pad_the_top(self) -> None:
        groups = coefficient_groups(np.arange(11.0), 2)
        assert [len(group) for group in groups] == [2, 2, 2, 2, 3]
        np.testing.assert_array_equal(groups[-1], [8.0, 9.0, 10.0])

    def test_groups_zero_fill(self) -> None:
        groups = coefficient_groups(np.arange(1.0, 6.0), 3)
        assert [group.tolist() for group in groups] == [[1.0, 2.0, 3.0], [4.0, 5.0, 0.0, 0.0]]

    def test_wide_groups(self) -> None:
        assert [list(run) for run in wide_groups(3, 2)] == [[0, 1, 2]]
        assert [list(run) for run in wide_groups(5, 2)] == [[0, 1], [2, 3, 4]]

    def test_poly_bound(self) -> None:
        assert poly_bound([1.0, -2.0, 3.0], 2.0) == 1.0 + 4.0 + 12.0

    def test_padded(self) -> None:
        np.testing.assert_array_equal(_poly([1.0, 2.0]).padded(3), [1.0, 2.0, 0.0, 0.0])


class TestShallow:
    def test_quadratic(self) -> None:
        net = shallow_poly_net(_poly([1.0, 2.0, 3.0]), 2)
        assert evaluate(net, [2.0])[0] == pytest.approx(17.0, rel=1e-13)
        assert stats(net).nodes == 4

    def test_constant(self) -> None:
        for s in (2, 3, 5):
            net = shallow_poly_net(_poly([5.0]), s)
            assert evaluate(net, [0.7])[0] == pytest.approx(5.0, rel=1e-14)

    def test_width_is_2s(self) -> None:
        assert stats(shallow_poly_net(_poly([0.0, 1.0, 0.0, 1.0]), 4)).nodes == 8

    def test_degree_too_high(self) -> None:
        with pytest.raises(StrategyError):
            shallow_poly_net(_poly([1.0, 1.0, 1.0, 1.0]), 2)


class TestHorner:
    def test_all_ones(self) -> None:
        assert evaluate(horner_net(_poly([1.0] * 4), 2), [1.0])[0] == pytest.approx(4.0)

    def test_fifth_power(self) -> None:
        net = horner_net(_poly([0.0] * 5 + [1.0]), 2)
        assert evaluate(net, [1.2])[0] == pytest.approx(2.48832, rel=1e-12)
        assert net.depth == 6

    def test_depth_is_degree_plus_one(self, rng: np.random.Generator) -> None:
        for n in (1, 2, 7, 12):
            assert horner_net(_random_poly(rng, n), 3).depth == n + 1

    def test_needs_degree_one(self) -> None:
        with pytest.raises(StrategyError):
            horner_net(_poly([2.0]), 2)


class TestDeepStrategies:
    def test_recursive_depth_example(self, rng: np.random.Generator) -> None:
        assert recursive_poly_net(_random_poly(rng, 10), 2).depth == 5

    def test_optimal_depth_example(self, rng: np.random.Generator) -> None:
        assert optimal_poly_net(_random_poly(rng, 10), 2).depth == 6

    def test_degree_ten_matches_horner(self, rng: np.random.Generator) -> None:
        p = _random_poly(rng, 10)
        x = rng.uniform(-1.0, 1.0, size=100)
        for strategy in DEEP:
            _assert_matches_horner(build_poly_net(p, 2, strategy), p, x)

    def test_pure_power_of_s(self) -> None:
        for s in (2, 3):
            p = _poly([0.0] * s + [1.0])
            assert evaluate(recursive_poly_net(p, s), [2.0])[0] == pytest.approx(2.0**s)

    def test_chebyshev_polynomial(self) -> None:
        coeffs = np.polynomial.chebyshev.cheb2poly([0.0] * 8 + [1.0])
        net = optimal_poly_net(_poly(coeffs), 2)
        theta = math.pi / 5
        assert evaluate(net, [math.cos(theta)])[0] == pytest.approx(math.cos(8 * theta), abs=1e-10)

    @pytest.mark.parametrize("s", [2, 3])
    def test_single_term_matches_monomial(self, s: int, rng: np.random.Generator) -> None:
        x = rng.uniform(-1.0, 1.0, size=50)
        for n in (5, 9, 13):
            p = _poly([0.0] * n + [1.0])
            values = evaluate_batch(optimal_poly_net(p, s), x[:, None])[:, 0]
            expected = evaluate_batch(monomial_net(n, s), x[:, None])[:, 0]
            np.testing.assert_allclose(values, expected, rtol=0.0, atol=1e-10)

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [2, 3, 4, 5])
    def test_exact_against_horner(self, s: int, rng: np.random.Generator) -> None:
        x = rng.uniform(-1.0, 1.0, size=200)
        for n in DEGREES:
            p = _random_poly(rng, n)
            for strategy in (Strategy.HORNER, *DEEP):
                _assert_matches_horner(build_poly_net(p, s, strategy), p, x)

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [2, 3, 4, 5])
    def test_every_degree_to_one_hundred(self, s: int, rng: np.random.Generator) -> None:
        x = rng.uniform(-1.0, 1.0, size=200)
        for n in range(1, 101):
            strategies = (Strategy.HORNER, *DEEP)
            if n <= s:
                strategies = (Strategy.SHALLOW, *strategies)
            for _ in range(5):
                p = _random_poly(rng, n)
                for strategy in strategies:
                    _assert_matches_horner(build_poly_net(p, s, strategy), p, x)
                if n <= s:
                    continue
                net = optimal_poly_net(p, s)
                counts = stats(net)
                assert counts.nodes <= 8 * n, (n, s)
                assert counts.nonzeros <= 24 * s * n, (n, s)
                if s ** round(math.log(n, s)) != n:
                    assert net.depth == ceil_log(n, s) + 2, (n, s)

    @pytest.mark.parametrize("s", [2, 3, 4, 5])
    def test_depth_laws(self, s: int, rng: np.random.Generator) -> None:
        for n in DEGREES:
            if n <= s:
                continue
            p = _random_poly(rng, n)
            assert recursive_poly_net(p, s).depth <= ceil_log(n, s) + 1, (n, s)
            depth = optimal_poly_net(p, s).depth
            if s ** round(math.log(n, s)) == n:
                assert depth <= ceil_log(n, s) + 2, (n, s)
            else:
                assert depth == ceil_log(n, s) + 2, (n, s)

    @pytest.mark.parametrize("s", [2, 3, 4, 5])
    def test_size_laws(self, s: int, rng: np.random.Generator) -> None:
        for n in DEGREES:
            if n <= s:
                continue
            counts = stats(optimal_poly_net(_random_poly(rng, n), s))
            assert counts.nodes <= 8 * n, (n, s)
            assert counts.nonzeros <= 24 * s * n, (n, s)

    @pytest.mark.parametrize(("n", "s"), [(3, 2), (4, 3), (5, 4), (6, 5), (7, 5), (9, 5)])
    def test_between_s_and_2s(self, n: int, s: int, rng: np.random.Generator) -> None:
        p = _random_poly(rng, n)
        net = optimal_poly_net(p, s)
        assert net.depth == ceil_log(n, s) + 2
        assert stats(net).nodes == 8 * s
        _assert_matches_horner(net, p, rng.uniform(-1.0, 1.0, size=100))

    def test_between_s_and_2s_on_wider_radius(self, rng: np.random.Generator) -> None:
        p = _random_poly(rng, 6)
        x = rng.uniform(-2.5, 2.5, size=80)
        values = evaluate_batch(optimal_poly_net(p, 4, radius=2.5), x[:, None])[:, 0]
        expected = horner_eval(p.coeffs, x)
        tolerance = 1e-9 * poly_bound(p.coeffs, 2.5)
        np.testing.assert_allclose(values, expected, rtol=0.0, atol=tolerance)

    def test_low_degree_builders_stay_shallow(self) -> None:
        p = _poly([1.0, -1.0, 2.0])
        assert recursive_poly_net(p, 3).depth == 2
        assert optimal_poly_net(p, 3).depth == 2

    def test_wider_radius(self, rng: np.random.Generator) -> None:
        p = _random_poly(rng, 12)
        x = rng.uniform(-3.0, 3.0, size=60)
        net = optimal_poly_net(p, 2, radius=3.0)
        values = evaluate_batch(net, x[:, None])[:, 0]
        expected = horner_eval(p.coeffs, x)
        tolerance = 1e-9 * poly_bound(p.coeffs, 3.0)
        np.testing.assert_allclose(values, expected, rtol=0.0, atol=tolerance)


class TestDispatch:
    def test_auto_shallow(self) -> None:
        assert build_poly_net(_poly([1.0, 2.0, 3.0, 4.0]), 4).depth == 2

    def test_auto_optimal(self, rng: np.random.Generator) -> None:
        p = _random_poly(rng, 9)
        auto = build_poly_net(p, 2)
        optimal = optimal_poly_net(p, 2)
        assert auto.depth == optimal.depth
        assert auto.hidden_widths == optimal.hidden_widths

    def test_strategies_agree(self, rng: np.random.Generator) -> None:
        p = _random_poly(rng, 6)
        values = {
            strategy: evaluate(build_poly_net(p, 2, strategy), [0.3])[0]
            for strategy in (Strategy.HORNER, Strategy.RECURSIVE, Strategy.OPTIMAL, Strategy.AUTO)
        }
        expected = horner_eval(p.coeffs, 0.3)
        for value in values.values():
            assert value == pytest.approx(float(expected), rel=1e-9, abs=1e-12)

    def test_shallow_rejected_for_high_degree(self, rng: np.random.Generator) -> None:
        with pytest.raises(StrategyError):
            build_poly_net(_random_poly(rng, 6), 2, Strategy.SHALLOW)
