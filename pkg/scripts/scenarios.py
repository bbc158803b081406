"""Write the canonical scenario files. Run with: python -m scripts.scenarios [OUT_DIR]"""
import sys
from pathlib import Path

from pixelnav.cli.commands import cmd_build_graph, cmd_record
from pixelnav.config import RunConfig, dump_run_config, load_run_config
from pixelnav.simworld.io import save_world
from pixelnav.simworld.scenarios import (
    AVOIDANCE_OVERRIDES,
    blocked_corridor_world,
    corridor_world,
    far_side_target,
    side_target,
    target_corridor_world,
)


def main(out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    worlds = {
        "corridor": corridor_world(),
        "target_corridor": target_corridor_world(),
        "blocked_corridor": blocked_corridor_world(),
    }
    for name, world in worlds.items():
        print(f"  World: {save_world(world, out_dir / f'{name}.world.json')}")

    base = RunConfig()
    poses = cmd_record(out_dir / "corridor.world.json", out_dir / "corridor.poses.json", base)
    graph_path, graph = cmd_build_graph(poses, out_dir / "corridor.graph.json", base)
    print(f"  Graph: {graph_path} ({graph.size} nodes, {len(graph.edges)} edges)")

    graph_file = str(graph_path)
    configs = {
        "corridor": load_run_config(
            overrides=[f"episode.world={out_dir / 'corridor.world.json'}", f"episode.graph={graph_file}"]
        ),
        "blocked_corridor": load_run_config(
            overrides=[f"episode.world={out_dir / 'blocked_corridor.world.json'}", f"episode.graph={graph_file}"]
        ),
        "ablation": load_run_config(
            overrides=[
                f"episode.world={out_dir / 'target_corridor.world.json'}",
                f"episode.graph={graph_file}",
                *AVOIDANCE_OVERRIDES,
            ]
        ),
        "suite": load_run_config(
            overrides=[
                f"episode.world={out_dir / 'corridor.world.json'}",
                f"episode.graph={graph_file}",
                *AVOIDANCE_OVERRIDES,
            ]
        ).model_copy(
            update={
                "suite": base.suite.model_copy(update={"perturbations": [side_target(), far_side_target()]})
            }
        ),
    }
    for name, cfg in configs.items():
        print(f"  Config: {dump_run_config(cfg, out_dir / f'{name}.config.json')}")
    print("Scenarios complete.")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("scenarios"))
