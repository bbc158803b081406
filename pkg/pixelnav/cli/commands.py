"""Command implementations shared by the CLI and the HTTP surface."""
import logging
from collections.abc import Sequence
from pathlib import Path

from pixelnav.config import RunConfig, dump_run_config, load_run_config
from pixelnav.core.exceptions import ConfigError
from pixelnav.episode.io import (
    episode_summary,
    suite_summary,
    write_costs_csv,
    write_json,
    write_trajectory_csv,
)
from pixelnav.episode.models import EpisodeMetrics, SuiteResult
from pixelnav.episode.plot import emit_plot_data
from pixelnav.episode.service import run_episode
from pixelnav.episode.suite import run_suite
from pixelnav.geometry.models import Pose2D
from pixelnav.simworld.expert import record_expert
from pixelnav.simworld.io import load_world
from pixelnav.simworld.models import SimRobot
from pixelnav.simworld.service import render_traversability_mask
from pixelnav.subgoal.service import select_subgoal_pixel
from pixelnav.topograph.io import load_poses, save_graph, save_poses
from pixelnav.topograph.models import TopoGraph
from pixelnav.topograph.schemas import PoseSequenceDocument
from pixelnav.topograph.service import build_graph
from pixelnav.traversability.io import write_mask_pgm, write_overlay_pgm

logger = logging.getLogger(__name__)


def cmd_record(
    world_path: str | Path,
    out_path: str | Path,
    config: RunConfig,
    waypoints: Sequence[tuple[float, float]] | None = None,
) -> Path:
    world = load_world(world_path)
    poses = record_expert(
        world,
        waypoints,
        dt=config.sim.expert_dt,
        speed=config.sim.expert_speed,
        lookahead=config.sim.expert_lookahead,
    )
    s = config.sim.scale
    doc = PoseSequenceDocument(
        positions=[(p.x * s, p.y * s) for p in poses],
        step=config.sim.expert_dt,
    )
    return save_poses(doc, out_path)


def cmd_build_graph(poses_path: str | Path, out_path: str | Path, config: RunConfig) -> tuple[Path, TopoGraph]:
    doc = load_poses(poses_path)
    graph = build_graph(doc.positions, config.graph)
    return save_graph(graph, out_path), graph


def write_episode_artifacts(metrics: EpisodeMetrics, config: RunConfig, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    return [
        write_trajectory_csv(metrics, out / "trajectory.csv"),
        write_costs_csv(metrics, out / "costs.csv"),
        write_json(episode_summary(metrics), out / "summary.json"),
        dump_run_config(config, out / "config.json"),
    ]


def cmd_run(config: RunConfig, out_dir: str | Path) -> tuple[EpisodeMetrics, list[Path]]:
    metrics = run_episode(config)
    return metrics, write_episode_artifacts(metrics, config, out_dir)


def cmd_suite(config: RunConfig, out_dir: str | Path, trials: int | None = None) -> tuple[SuiteResult, Path]:
    if trials is not None:
        config = load_run_config(overrides=[f"suite.trials={trials}"], base=config)
    result = run_suite(config)
    return result, write_json(suite_summary(result), Path(out_dir) / "suite.json")


def cmd_plot(run_dir: str | Path, out_dir: str | Path, world_path: str | Path | None = None) -> list[Path]:
    run = Path(run_dir)
    trajectory = run / "trajectory.csv"
    if not trajectory.exists():
        raise ConfigError(f"no trajectory.csv in {run}")
    world = load_world(world_path) if world_path is not None else None
    return emit_plot_data(trajectory, run / "costs.csv", world, out_dir)


def cmd_export_mask(
    world_path: str | Path,
    pose: Pose2D,
    out_dir: str | Path,
    config: RunConfig,
    alpha: float | None = None,
) -> list[Path]:
    world = load_world(world_path)
    cam = config.camera or world.camera
    mask = render_traversability_mask(world, SimRobot(pose=pose, cam=cam), occlusion=config.sim.occlusion)
    out = Path(out_dir)
    written = [write_mask_pgm(mask, out / "mask.pgm")]
    if alpha is not None:
        subgoal = select_subgoal_pixel(mask, cam, alpha, config.subgoal)
        pixel = (int(subgoal.p.u), int(subgoal.p.v))
        logger.info("Subgoal pixel %s (%s)", pixel, subgoal.mode.value)
        written.append(write_overlay_pgm(mask, pixel, out / "overlay.pgm"))
    return written
