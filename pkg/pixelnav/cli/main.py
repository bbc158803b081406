"""`pixelnav` command line."""
import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from pixelnav.cli.commands import (
    cmd_build_graph,
    cmd_export_mask,
    cmd_plot,
    cmd_record,
    cmd_run,
    cmd_suite,
)
from pixelnav.config import RunConfig, load_run_config, settings
from pixelnav.core.exceptions import AppError, ConfigError, config_error_from
from pixelnav.geometry.models import Pose2D

logger = logging.getLogger("pixelnav")


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}")
    if count is not None and len(values) != count:
        raise ConfigError(f"expected {count} comma-separated numbers, got {text!r}")
    return values


def _waypoints(text: str | None) -> list[tuple[float, float]] | None:
    if text is None:
        return None
    points = []
    for item in text.split(";"):
        x, y = _floats(item, 2)
        points.append((x, y))
    return points


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="run config JSON")
    common.add_argument("--seed", type=int, help="overrides episode.seed")
    common.add_argument("--out", type=Path, help=f"output directory (default: {settings.output_dir})")
    common.add_argument(
        "--override", action="append", default=[], metavar="KEY=VALUE",
        help="dotted config override, e.g. mppi.lambda=0.5 (repeatable)",
    )

    parser = argparse.ArgumentParser(prog="pixelnav", description="Vision-only navigation simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("record", parents=[common], help="record expert poses along waypoints")
    p.add_argument("world", type=Path)
    p.add_argument("--waypoints", help="'x,y;x,y;...' (default: the world's expert_waypoints)")

    p = sub.add_parser("build-graph", parents=[common], help="build a topological graph from poses")
    p.add_argument("poses", type=Path)

    sub.add_parser("run", parents=[common], help="run one closed-loop episode")

    p = sub.add_parser("suite", parents=[common], help="run the evaluation protocol")
    p.add_argument("--trials", type=int, help="overrides suite.trials")

    p = sub.add_parser("plot", parents=[common], help="emit plot data for a run directory")
    p.add_argument("run_dir", type=Path)
    p.add_argument("--world", type=Path, help="world file for obstacle outlines (default: episode.world)")

    p = sub.add_parser("export-mask", parents=[common], help="render the mask seen from a pose")
    p.add_argument("world", type=Path)
    p.add_argument("--pose", required=True, help="x,y,theta")
    p.add_argument("--alpha", type=float, help="also mark the subgoal pixel for this relative yaw")

    p = sub.add_parser("serve", parents=[common], help="start the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _dispatch(args: argparse.Namespace, config: RunConfig, out: Path) -> None:
    if args.command == "record":
        path = cmd_record(args.world, out / "poses.json", config, _waypoints(args.waypoints))
        print(path)
    elif args.command == "build-graph":
        path, graph = cmd_build_graph(args.poses, out / "graph.json", config)
        print(f"{path} nodes={graph.size} edges={len(graph.edges)}")
    elif args.command == "run":
        metrics, _ = cmd_run(config, out)
        print(
            f"outcome={metrics.outcome.value} steps={metrics.steps} dc={metrics.dc_count} "
            f"ic={metrics.ic_count} target_dc={metrics.target_dc_count} freezes={metrics.freeze_count}"
        )
    elif args.command == "suite":
        result, path = cmd_suite(config, out, trials=args.trials)
        m = result.metrics
        print(f"{path} adc={m.adc} aic={m.aic} tdcr={m.tdcr} af={m.af} grr={m.grr}")
    elif args.command == "plot":
        world = args.world or config.episode.world
        for path in cmd_plot(args.run_dir, out, world):
            print(path)
    elif args.command == "export-mask":
        x, y, theta = _floats(args.pose, 3)
        for path in cmd_export_mask(args.world, Pose2D(x, y, theta), out, config, alpha=args.alpha):
            print(path)
    elif args.command == "serve":
        import uvicorn

        uvicorn.run("pixelnav.main:app", host=args.host, port=args.port, log_level=settings.log_level.lower())


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_run_config(args.config, args.override, args.seed)
        out = args.out or Path(settings.output_dir)
        if args.command == "plot" and args.out is None:
            out = args.run_dir / "plot"
        _dispatch(args, config, out)
    except ValidationError as exc:
        err: AppError = config_error_from(exc)
        return _fail(err)
    except AppError as exc:
        return _fail(exc)
    return 0


def _fail(exc: AppError) -> int:
    message = exc.message.replace("\n", " ").replace('"', "'")
    print(f'error={type(exc).__name__} code={exc.exit_code} message="{message}"', file=sys.stderr)
    return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
