"""Service container wiring."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from powernet.services.build_service import BuildService
from powernet.services.experiment_service import ExperimentService

if TYPE_CHECKING:
    from powernet.config import Config


@dataclass
class ServiceContainer:
    """Holds all application services. Built once per command."""

    config: Config
    build_service: BuildService
    experiment_service: ExperimentService

    @classmethod
    def create(cls, config: Config) -> ServiceContainer:
        return cls(
            config=config,
            build_service=BuildService(config),
            experiment_service=ExperimentService(config),
        )
