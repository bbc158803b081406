from fastapi import APIRouter

from pixelnav.config import validate_run_config
from pixelnav.episode.io import episode_summary, suite_summary
from pixelnav.episode.schemas import (
    EpisodeRunRequest,
    EpisodeRunResponse,
    SuiteRunRequest,
    SuiteRunResponse,
    TrajectoryRow,
)
from pixelnav.episode.service import run_episode
from pixelnav.episode.suite import run_suite
from pixelnav.topograph.io import graph_from_document

router = APIRouter(tags=["episodes"])


@router.post("/episodes/run", response_model=EpisodeRunResponse)
def run(body: EpisodeRunRequest) -> EpisodeRunResponse:
    config = validate_run_config(body.config)
    metrics = run_episode(config, body.world, graph_from_document(body.graph))
    trajectory = None
    if body.include_trajectory:
        trajectory = [
            TrajectoryRow(t=r.t, x=r.x, y=r.y, theta=r.theta, v=r.v, w=r.w, event=r.event)
            for r in metrics.trajectory
        ]
    return EpisodeRunResponse(**episode_summary(metrics).model_dump(), trajectory=trajectory)


@router.post("/suites/run", response_model=SuiteRunResponse)
def run_suite_endpoint(body: SuiteRunRequest) -> SuiteRunResponse:
    # In-process: the server's own workers already parallelise requests.
    config = validate_run_config(body.config)
    result = run_suite(config, workers=1)
    return suite_summary(result)
