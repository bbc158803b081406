"""Plot-ready columnar text: whitespace-separated columns, '#' header, blank line between polylines."""
from pathlib import Path

from pixelnav.episode.io import read_costs_csv, read_trajectory_csv
from pixelnav.simworld.schemas import WorldModel


def _write_table(path: Path, header: list[str], blocks: list[list[list[str]]]) -> Path:
    lines = ["# " + " ".join(header)]
    for i, block in enumerate(blocks):
        if i:
            lines.append("")
        lines.extend(" ".join(row) for row in block)
    path.write_text("\n".join(lines) + "\n")
    return path


def emit_plot_data(
    trajectory_csv: str | Path,
    costs_csv: str | Path | None,
    world: WorldModel | None,
    out_dir: str | Path,
) -> list[Path]:
    """
    Writes trajectory.dat (t x y theta v w), obstacles.dat (closed outlines,
    one block per obstacle plus the bounds) and costs.dat (per-step cost trace).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    rows = read_trajectory_csv(trajectory_csv)
    written.append(
        _write_table(
            out / "trajectory.dat",
            ["t", "x", "y", "theta", "v", "w"],
            [[[r["t"], r["x"], r["y"], r["theta"], r["v"], r["w"]] for r in rows]],
        )
    )

    if world is not None:
        blocks: list[list[list[str]]] = []
        outlines = [world.bounds.corners] + [obs.outline() for obs in world.obstacles]
        ids = [-1] + list(range(len(world.obstacles)))
        for obstacle_id, outline in zip(ids, outlines):
            closed = [*outline, outline[0]]
            blocks.append([[str(obstacle_id), repr(x), repr(y)] for x, y in closed])
        written.append(_write_table(out / "obstacles.dat", ["id", "x", "y"], blocks))

    if costs_csv is not None and Path(costs_csv).exists():
        costs = read_costs_csv(costs_csv)
        written.append(
            _write_table(
                out / "costs.dat",
                ["t", "obstacle", "subgoal", "control", "expected"],
                [[[c["t"], c["obstacle"], c["subgoal"], c["control"], c["expected"]] for c in costs]],
            )
        )
    return written
