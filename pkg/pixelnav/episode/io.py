"""
Run artifacts.

- trajectory CSV: `t,x,y,theta,v,w,event` (several events in one step are joined with ';')
- cost trace CSV: `t,subgoal_u,subgoal_v,obstacle,subgoal,control,expected`
- JSON summaries for single episodes and suites
"""
import csv
from pathlib import Path

from pydantic import BaseModel

from pixelnav.core.exceptions import ConfigError
from pixelnav.episode.models import EpisodeMetrics, SuiteResult
from pixelnav.episode.schemas import (
    EpisodeSummaryResponse,
    SuiteMetricsResponse,
    SuiteRunResponse,
    SuiteRunRow,
)

TRAJECTORY_HEADER = ["t", "x", "y", "theta", "v", "w", "event"]
COSTS_HEADER = ["t", "subgoal_u", "subgoal_v", "obstacle", "subgoal", "control", "expected"]


def _open_for_write(path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_trajectory_csv(metrics: EpisodeMetrics, path: str | Path) -> Path:
    path = _open_for_write(path)
    with path.open("w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(TRAJECTORY_HEADER)
        for r in metrics.trajectory:
            writer.writerow([r.t, repr(r.x), repr(r.y), repr(r.theta), repr(r.v), repr(r.w), r.event])
    return path


def write_costs_csv(metrics: EpisodeMetrics, path: str | Path) -> Path:
    path = _open_for_write(path)
    with path.open("w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(COSTS_HEADER)
        for r in metrics.trajectory:
            writer.writerow(
                [
                    r.t,
                    repr(r.subgoal_u),
                    repr(r.subgoal_v),
                    repr(r.cost_obstacle),
                    repr(r.cost_subgoal),
                    repr(r.cost_control),
                    repr(r.expected_cost),
                ]
            )
    return path


def _read_rows(path: str | Path, header: list[str]) -> list[dict[str, str]]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"log file not found: {path}")
    with path.open(newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != header:
            raise ConfigError(f"{path}: expected header {','.join(header)}")
        return list(reader)


def read_trajectory_csv(path: str | Path) -> list[dict[str, str]]:
    return _read_rows(path, TRAJECTORY_HEADER)


def read_costs_csv(path: str | Path) -> list[dict[str, str]]:
    return _read_rows(path, COSTS_HEADER)


def episode_summary(metrics: EpisodeMetrics) -> EpisodeSummaryResponse:
    return EpisodeSummaryResponse.model_validate(
        {
            "dc_count": metrics.dc_count,
            "ic_count": metrics.ic_count,
            "target_dc_count": metrics.target_dc_count,
            "freeze_count": metrics.freeze_count,
            "goal_reached": metrics.goal_reached,
            "steps": metrics.steps,
            "outcome": metrics.outcome.value,
        }
    )


def suite_summary(result: SuiteResult) -> SuiteRunResponse:
    """Validated suite document; rates outside [0, 1] fail here, before anything is written."""
    return SuiteRunResponse(
        metrics=SuiteMetricsResponse.model_validate(result.metrics),
        locations={name: SuiteMetricsResponse.model_validate(m) for name, m in result.per_location.items()},
        runs=[
            SuiteRunRow(
                location=r.location,
                trial=r.trial,
                seed=r.seed,
                perturbation=r.perturbation,
                **episode_summary(r.metrics).model_dump(),
            )
            for r in result.runs
        ],
    )


def write_json(document: BaseModel, path: str | Path) -> Path:
    path = _open_for_write(path)
    path.write_text(document.model_dump_json(indent=2) + "\n")
    return path
