"""Perception backend registry.

Backends carry their own RNG streams, so every call builds a fresh instance;
an episode owns the instances it was given.
"""
from typing import Any

from pixelnav.core.exceptions import ConfigError
from pixelnav.perception.base import Localizer, TraversabilityEstimator, YawEstimator
from pixelnav.perception.learned import DescriptorLocalizer, ProbabilityMapEstimator
from pixelnav.perception.oracle import OracleLocalizer, OracleMaskEstimator, OracleYawEstimator


def get_traversability_estimator(name: str, **options: Any) -> TraversabilityEstimator:
    if name == "oracle":
        return OracleMaskEstimator(**options)
    elif name == "probability":
        return ProbabilityMapEstimator(**options)
    raise ConfigError(f"Unknown traversability estimator: {name}")


def get_yaw_estimator(name: str, **options: Any) -> YawEstimator:
    if name == "oracle":
        return OracleYawEstimator(**options)
    raise ConfigError(f"Unknown yaw estimator: {name}")


def get_localizer(name: str, **options: Any) -> Localizer:
    if name == "oracle":
        return OracleLocalizer(**options)
    elif name == "descriptor":
        return DescriptorLocalizer(**options)
    raise ConfigError(f"Unknown localizer: {name}")
