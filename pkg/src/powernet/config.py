"""Configuration for PowerNet."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from powernet.errors import InvalidInputError

SEED_ENV_VAR = "POWERNET_SEED"


@dataclass(frozen=True)
class Config:
    """Run configuration shared by the services and the CLI."""

    seed: int = 0
    oracle_points: int = 20
    oracle_rtol: float = 1e-9
    report_points_1d: int = 2048
    report_points_md: int = 4096
    domain_radius: float = 1.0
    batch_chunk: int = 4096
    workers: int = 1
    max_power: int = 12
    max_legendre_degree: int = 64
    max_hyperbolic_degree: int = 32

    @classmethod
    def from_env(cls, **overrides: object) -> Config:
        """Build a config from keyword overrides, letting POWERNET_SEED win over ``seed``."""
        config = cls(**overrides)  # type: ignore[arg-type]
        raw = os.environ.get(SEED_ENV_VAR, "").strip()
        if not raw:
            return config
        try:
            seed = int(raw)
        except ValueError as exc:
            raise InvalidInputError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from exc
        return replace(config, seed=seed)

    @property
    def domain(self) -> tuple[float, float]:
        return (-self.domain_radius, self.domain_radius)
