"""
Shared fixtures: canonical cameras, the corridor scenario and its graph.
Everything here is pure in-memory state except `scenario_files`, which writes
the corridor world and graph into a per-test temporary directory.
"""
from pathlib import Path

import pytest

from pixelnav.config import RunConfig, load_run_config
from pixelnav.geometry.schemas import CameraModel
from pixelnav.simworld.expert import record_expert
from pixelnav.simworld.io import save_world
from pixelnav.simworld.scenarios import (
    blocked_corridor_world,
    corridor_world,
    target_corridor_world,
)
from pixelnav.simworld.schemas import SimConfig, WorldModel
from pixelnav.topograph.io import save_graph
from pixelnav.topograph.models import TopoGraph
from pixelnav.topograph.service import build_graph


@pytest.fixture
def hand_cam() -> CameraModel:
    """Round-number intrinsics used by the hand-derived examples."""
    return CameraModel(f_x=100.0, f_y=100.0, c_x=160.0, c_y=120.0, h_cam=0.5, width=320, height=240)


@pytest.fixture
def cam() -> CameraModel:
    return CameraModel()


@pytest.fixture
def corridor() -> WorldModel:
    return corridor_world()


@pytest.fixture(scope="session")
def corridor_graph() -> TopoGraph:
    """Expert run down the corridor, expressed in the scale-free frame."""
    scale = SimConfig().scale
    poses = record_expert(corridor_world())
    return build_graph([(p.x * scale, p.y * scale) for p in poses])


@pytest.fixture
def scenario_files(tmp_path: Path, corridor_graph: TopoGraph) -> dict[str, Path]:
    return {
        "corridor": save_world(corridor_world(), tmp_path / "corridor.world.json"),
        "target_corridor": save_world(target_corridor_world(), tmp_path / "target_corridor.world.json"),
        "blocked_corridor": save_world(blocked_corridor_world(), tmp_path / "blocked_corridor.world.json"),
        "graph": save_graph(corridor_graph, tmp_path / "corridor.graph.json"),
    }


@pytest.fixture
def corridor_config(scenario_files: dict[str, Path]) -> RunConfig:
    return load_run_config(
        overrides=[
            f"episode.world={scenario_files['corridor']}",
            f"episode.graph={scenario_files['graph']}",
        ]
    )
