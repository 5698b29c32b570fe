"""Shared fixtures for PowerNet tests."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from powernet.config import SEED_ENV_VAR, Config
from powernet.services.container import ServiceContainer


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every test draws the same points."""
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def _clear_seed_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)


@pytest.fixture
def test_config() -> Config:
    return Config(seed=7)


@pytest.fixture
def services(test_config: Config) -> ServiceContainer:
    return ServiceContainer.create(test_config)


@pytest.fixture
def coeffs_file(tmp_path: Path) -> Path:
    """1 - 2x + 0.5x^3 + x^5 as one coefficient per line."""
    path = tmp_path / "coeffs.csv"
    path.write_text("# ascending degree\n1.0\n-2.0\n0\n\n0.5\n0\n1\n", encoding="utf-8")
    return path


@pytest.fixture
def multipoly_file(tmp_path: Path) -> Path:
    """1 + x y + x^2 y^2 on the full square of degree 2."""
    terms = [
        {"k": [i, j], "a": 1.0 if (i, j) in {(0, 0), (1, 1), (2, 2)} else 0.0}
        for i in range(3)
        for j in range(3)
    ]
    path = tmp_path / "poly.json"
    path.write_text(json.dumps({"dim": 2, "terms": terms}), encoding="utf-8")
    return path
