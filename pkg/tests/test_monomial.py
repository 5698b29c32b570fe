"""Tests for the monomial builders."""

from __future__ import annotations

import numpy as np
import pytest

from powernet.core.monomial import (
    base_s_digits,
    compensated_power,
    monomial_net,
    power_low_net,
    power_s_net,
)
from powernet.core.multipoly import ceil_log
from powernet.core.netcore import evaluate, evaluate_batch, stats
from powernet.errors import InvalidInputError


def _node_bound(n: int, s: int) -> float:
    m = 0
    while s ** (m + 1) <= n:
        m += 1
    return m * ((s + 1) ** 2 / 2 + 2) + 2 * s


class TestPowerNets:
    def test_cube_of_negative(self) -> None:
        assert evaluate(power_s_net(3), [-2.0])[0] == -8.0

    def test_square_of_zero(self) -> None:
        assert evaluate(power_s_net(2), [0.0])[0] == 0.0

    def test_two_nodes(self) -> None:
        assert stats(power_s_net(5)).nodes == 2

    def test_rejects_power_one(self) -> None:
        with pytest.raises(InvalidInputError):
            power_s_net(1)

    def test_low_power_identity(self) -> None:
        assert evaluate(power_low_net(1, 2), [7.0])[0] == pytest.approx(7.0, rel=1e-14)

    def test_low_power_square(self) -> None:
        net = power_low_net(2, 3)
        assert evaluate(net, [1.5])[0] == pytest.approx(2.25, rel=1e-13)
        assert net.hidden_widths == [6]

    def test_low_power_range(self) -> None:
        with pytest.raises(InvalidInputError):
            power_low_net(4, 3)


class TestDigits:
    @pytest.mark.parametrize(
        ("n", "s", "digits"),
        [(7, 2, (1, 1, 1)), (10, 3, (1, 0, 1)), (9, 3, (0, 0, 1)), (1, 5, (1,))],
    )
    def test_examples(self, n: int, s: int, digits: tuple[int, ...]) -> None:
        result = base_s_digits(n, s)
        assert result.digits == digits
        assert result.value == n
        assert result.m == len(digits) - 1

    def test_rejects_zero(self) -> None:
        with pytest.raises(InvalidInputError):
            base_s_digits(0, 2)


class TestMonomialNet:
    def test_seventh_power(self) -> None:
        net = monomial_net(7, 2)
        assert evaluate(net, [1.5])[0] == pytest.approx(17.0859375, rel=1e-13)
        assert net.depth == 4

    def test_ninth_power_base_three(self) -> None:
        assert evaluate(monomial_net(9, 3), [-1.1])[0] == pytest.approx(-2.357947691, rel=1e-9)

    def test_small_exponents_are_affine(self) -> None:
        assert monomial_net(0, 3).depth == 1
        assert evaluate(monomial_net(0, 3), [4.0])[0] == 1.0
        assert evaluate(monomial_net(1, 3), [4.0])[0] == 4.0

    def test_negative_exponent(self) -> None:
        with pytest.raises(InvalidInputError):
            monomial_net(-1, 2)

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [2, 3, 4, 5])
    def test_exact_on_unit_interval(self, s: int, rng: np.random.Generator) -> None:
        x = rng.uniform(-1.0, 1.0, size=40)
        for n in range(1, 201):
            values = evaluate_batch(monomial_net(n, s), x[:, None])[:, 0]
            expected = compensated_power(x, n)
            tolerance = 1e-10 * np.maximum(1.0, np.abs(expected))
            assert np.all(np.abs(values - expected) <= tolerance), (n, s)

    @staticmethod
    def _wide_points(rng: np.random.Generator) -> np.ndarray:
        return np.concatenate([[-1.5, 1.5], rng.uniform(-1.5, 1.5, size=198)])

    @pytest.mark.parametrize(("n", "s"), [(65, 2), (28, 3), (17, 4), (124, 5)])
    def test_radius_keeps_large_powers_accurate(
        self, n: int, s: int, rng: np.random.Generator
    ) -> None:
        x = self._wide_points(rng)
        values = evaluate_batch(monomial_net(n, s, radius=1.5), x[:, None])[:, 0]
        expected = compensated_power(x, n)
        assert np.max(np.abs(values - expected)) <= 1e-10 * np.max(np.abs(expected))

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [2, 3, 4, 5])
    def test_exact_on_wider_interval(self, s: int, rng: np.random.Generator) -> None:
        x = self._wide_points(rng)
        for n in range(1, 201):
            values = evaluate_batch(monomial_net(n, s, radius=1.5), x[:, None])[:, 0]
            expected = compensated_power(x, n)
            error = np.max(np.abs(values - expected))
            assert error <= 1e-10 * np.max(np.abs(expected)), (n, s, error)

    def test_radius_leaves_shape_unchanged(self) -> None:
        plain = monomial_net(45, 3)
        wide = monomial_net(45, 3, radius=2.0)
        assert wide.hidden_widths == plain.hidden_widths
        assert evaluate(wide, [1.9])[0] == pytest.approx(1.9**45, rel=1e-10)

    @pytest.mark.parametrize("s", [2, 3, 4, 5])
    def test_depth_and_node_bounds(self, s: int) -> None:
        for n in range(1, 201):
            counts = stats(monomial_net(n, s))
            assert counts.depth <= ceil_log(n, s) + 1, (n, s)
            assert counts.nodes <= _node_bound(n, s), (n, s)

    def test_pure_powers_chain_squarings(self) -> None:
        net = monomial_net(16, 2)
        assert net.hidden_widths == [2, 2, 2, 2]
        assert evaluate(net, [0.5])[0] == pytest.approx(0.5**16, rel=1e-13)

    def test_parity(self) -> None:
        for n in (5, 6, 11, 12):
            net = monomial_net(n, 2)
            for x in (0.3, 0.9):
                forward = evaluate(net, [x])[0]
                backward = evaluate(net, [-x])[0]
                assert backward == pytest.approx((-1) ** n * forward, rel=1e-12, abs=1e-14)


def test_compensated_power_matches_integer_powers() -> None:
    assert compensated_power(np.array([3.0]), 20)[0] == 3.0**20
    np.testing.assert_array_equal(compensated_power(np.array([2.0, -2.0]), 0), [1.0, 1.0])
