import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import BaseSettings

from pixelnav.controller.schemas import MppiConfig
from pixelnav.core.exceptions import ConfigError, config_error_from
from pixelnav.episode.schemas import EpisodeConfig, SuiteConfig
from pixelnav.geometry.schemas import CameraModel
from pixelnav.simworld.schemas import SimConfig
from pixelnav.subgoal.schemas import SubgoalConfig
from pixelnav.topograph.schemas import GraphBuildParams
from pixelnav.traversability.schemas import TraversabilityConfig


class Settings(BaseSettings):
    model_config = {"env_file": ".env", "env_prefix": "PIXELNAV_", "extra": "ignore"}

    log_level: str = "INFO"
    output_dir: str = "runs"
    suite_workers: int = 1


settings = Settings()


class RunConfig(BaseModel):
    """Merged experiment manifest. `camera` overrides the world file's camera when set."""

    model_config = {"frozen": True}

    camera: CameraModel | None = None
    graph: GraphBuildParams = Field(default_factory=GraphBuildParams)
    traversability: TraversabilityConfig = Field(default_factory=TraversabilityConfig)
    subgoal: SubgoalConfig = Field(default_factory=SubgoalConfig)
    mppi: MppiConfig = Field(default_factory=MppiConfig)
    sim: SimConfig = Field(default_factory=SimConfig)
    episode: EpisodeConfig = Field(default_factory=EpisodeConfig)
    suite: SuiteConfig = Field(default_factory=SuiteConfig)

    def to_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)


def _parse_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(data: dict[str, Any], overrides: list[str]) -> dict[str, Any]:
    """Patch `a.b.c=value` entries into a nested dict; values are parsed as JSON when possible."""
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        parts = key.split(".")
        node = data
        for part in parts[:-1]:
            child = node.get(part)
            if not isinstance(child, dict):
                child = {}
                node[part] = child
            node = child
        node[parts[-1]] = _parse_value(raw)
    return data


def validate_run_config(data: dict[str, Any]) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise config_error_from(exc)


def load_run_config(
    path: str | Path | None = None,
    overrides: list[str] | None = None,
    seed: int | None = None,
    base: RunConfig | None = None,
) -> RunConfig:
    """File (or `base`) first, then dotted overrides, then `seed`."""
    data: dict[str, Any] = base.to_dict() if base is not None else {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path}: {exc}")
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path}: top level must be an object")
    data = apply_overrides(data, list(overrides or []))
    if seed is not None:
        data = apply_overrides(data, [f"episode.seed={seed}"])
    return validate_run_config(data)


def dump_run_config(cfg: RunConfig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(cfg.to_dict(), indent=2))
    return path
