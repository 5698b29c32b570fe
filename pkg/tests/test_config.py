"""Tests for configuration."""

from __future__ import annotations

import dataclasses

import pytest

from powernet.config import SEED_ENV_VAR, Config
from powernet.errors import InvalidInputError


def test_defaults() -> None:
    config = Config()
    assert config.seed == 0
    assert config.max_power == 12
    assert config.report_points_1d == 2048
    assert config.report_points_md == 4096
    assert config.domain == (-1.0, 1.0)


def test_overrides() -> None:
    config = Config.from_env(seed=5, domain_radius=2.0)
    assert config.seed == 5
    assert config.domain == (-2.0, 2.0)


def test_environment_seed_wins(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(SEED_ENV_VAR, " 42 ")
    assert Config.from_env(seed=5).seed == 42


def test_blank_environment_seed_is_ignored(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(SEED_ENV_VAR, "")
    assert Config.from_env(seed=3).seed == 3


def test_invalid_environment_seed(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(SEED_ENV_VAR, "abc")
    with pytest.raises(InvalidInputError, match=SEED_ENV_VAR):
        Config.from_env()


def test_frozen() -> None:
    config = Config()
    with pytest.raises(dataclasses.FrozenInstanceError):
        config.seed = 1  # type: ignore[misc]
