"""
Evaluation suites: per location, `trials` unperturbed runs followed by
`trials` runs for every perturbation obstacle. Runs are independent and may
execute in a process pool; results are always ordered by run index.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from pixelnav.config import RunConfig, settings
from pixelnav.core.exceptions import ConfigError, EmptySuite
from pixelnav.episode.models import RunSummary, SuiteResult
from pixelnav.episode.schemas import EpisodeConfig, LocationSpec
from pixelnav.episode.service import compute_suite_metrics, run_episode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteTask:
    index: int
    location: LocationSpec
    trial: int
    perturbation: int | None
    config: RunConfig


def plan_suite(config: RunConfig) -> list[SuiteTask]:
    suite = config.suite
    locations = list(suite.locations)
    if not locations:
        if config.episode.world is None or config.episode.graph is None:
            raise ConfigError("suite: no locations and no episode.world/episode.graph to fall back on")
        locations = [LocationSpec(name="default", world=config.episode.world, graph=config.episode.graph)]

    tasks: list[SuiteTask] = []
    conditions: list[int | None] = [None, *range(len(suite.perturbations))]
    for location in locations:
        for condition in conditions:
            for trial in range(suite.trials):
                episode = EpisodeConfig.model_validate(
                    {
                        **config.episode.model_dump(),
                        "world": location.world,
                        "graph": location.graph,
                        "seed": config.episode.seed + trial,
                        "perturbation": (
                            None if condition is None else suite.perturbations[condition].model_dump()
                        ),
                    }
                )
                tasks.append(
                    SuiteTask(
                        index=len(tasks),
                        location=location,
                        trial=trial,
                        perturbation=condition,
                        config=config.model_copy(update={"episode": episode}),
                    )
                )
    return tasks


def _run_task(task: SuiteTask) -> RunSummary:
    metrics = run_episode(task.config)
    return RunSummary(
        location=task.location.name,
        trial=task.trial,
        seed=task.config.episode.seed,
        perturbation=task.perturbation,
        metrics=metrics,
    )


def run_suite(config: RunConfig, workers: int | None = None) -> SuiteResult:
    tasks = plan_suite(config)
    if not tasks:
        raise EmptySuite()
    workers = workers or config.suite.workers or settings.suite_workers
    logger.info("Suite: %d runs on %d worker(s)", len(tasks), workers)

    if workers <= 1:
        runs = [_run_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_run_task, tasks))

    overall = compute_suite_metrics([r.metrics for r in runs], [r.perturbed for r in runs])
    per_location = {}
    for name in dict.fromkeys(r.location for r in runs):
        subset = [r for r in runs if r.location == name]
        per_location[name] = compute_suite_metrics(
            [r.metrics for r in subset], [r.perturbed for r in subset]
        )
    logger.info(
        "Suite done: adc=%.3f aic=%.3f tdcr=%.3f af=%.3f grr=%.3f",
        overall.adc, overall.aic, overall.tdcr, overall.af, overall.grr,
    )
    return SuiteResult(metrics=overall, per_location=per_location, runs=runs)
