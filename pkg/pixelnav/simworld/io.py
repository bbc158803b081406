"""JSON world files."""
from pathlib import Path

from pydantic import ValidationError

from pixelnav.core.exceptions import ConfigError, config_error_from
from pixelnav.simworld.schemas import WorldModel


def load_world(path: str | Path) -> WorldModel:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"world file not found: {path}")
    try:
        return WorldModel.model_validate_json(path.read_text())
    except ValidationError as exc:
        raise config_error_from(exc, prefix=f"world file {path}")


def save_world(world: WorldModel, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(world.model_dump_json(indent=2))
    return path
