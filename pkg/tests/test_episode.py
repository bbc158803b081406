"""
Closed-loop episodes on the corridor scenarios, suite metric aggregation and
the run artifacts (CSV logs, plot tables).
"""
import json

import pytest
from pydantic import ValidationError

from pixelnav.config import RunConfig, load_run_config
from pixelnav.core.exceptions import ConfigError, EmptySuite
from pixelnav.episode.io import (
    TRAJECTORY_HEADER,
    read_costs_csv,
    read_trajectory_csv,
    suite_summary,
    write_costs_csv,
    write_json,
    write_trajectory_csv,
)
from pixelnav.episode.models import (
    EpisodeMetrics,
    Outcome,
    RunSummary,
    StepRecord,
    SuiteMetrics,
    SuiteResult,
)
from pixelnav.episode.plot import emit_plot_data
from pixelnav.episode.schemas import EpisodeConfig
from pixelnav.episode.service import _FreezeDetector, compute_suite_metrics, run_episode
from pixelnav.simworld.scenarios import AVOIDANCE_OVERRIDES, corridor_world, side_target, target_corridor_world


def _config_for(scenario_files, world: str, *extra: str):
    return load_run_config(
        overrides=[
            f"episode.world={scenario_files[world]}",
            f"episode.graph={scenario_files['graph']}",
            *extra,
        ]
    )


class TestFreezeDetector:
    def test_fires_once_per_window_then_rearms(self):
        detector = _FreezeDetector(v_freeze=0.1, window=3)
        assert [detector.update(0.0) for _ in range(3)] == [False, False, True]
        assert not any(detector.update(0.0) for _ in range(4))
        assert detector.update(1.0) is False
        assert [detector.update(0.0) for _ in range(3)] == [False, False, True]

    def test_moving_robot_never_freezes(self):
        detector = _FreezeDetector(v_freeze=0.02, window=5)
        assert not any(detector.update(0.3) for _ in range(50))

    def test_sign_of_velocity_is_ignored(self):
        detector = _FreezeDetector(v_freeze=0.1, window=2)
        assert not any(detector.update(v) for v in (-0.5, 0.5, -0.5))


class TestSuiteMetrics:
    def test_averages(self):
        runs = [EpisodeMetrics(dc_count=1), EpisodeMetrics(dc_count=0), EpisodeMetrics(dc_count=2)]
        metrics = compute_suite_metrics(runs, [False] * 3)
        assert metrics.adc == 1.0
        assert metrics.aic == 0.0
        assert metrics.tdcr == 0.0
        assert metrics.perturbation_runs == 0

    def test_goal_reaching_rate(self):
        runs = [EpisodeMetrics(goal_reached=True, outcome=Outcome.GOAL) for _ in range(3)]
        assert compute_suite_metrics(runs, [False] * 3).grr == 1.0

    def test_target_rate_over_perturbation_runs(self):
        runs = [EpisodeMetrics(target_dc_count=n) for n in (1, 0, 3, 0, 0, 1)]
        runs += [EpisodeMetrics(target_dc_count=5)]
        metrics = compute_suite_metrics(runs, [True] * 6 + [False])
        assert metrics.tdcr == 0.5
        assert metrics.runs == 7
        assert metrics.perturbation_runs == 6

    def test_freeze_average(self):
        runs = [EpisodeMetrics(freeze_count=n) for n in (2, 0, 1, 1)]
        assert compute_suite_metrics(runs, [False] * 4).af == 1.0

    def test_empty(self):
        with pytest.raises(EmptySuite):
            compute_suite_metrics([], [])

    def test_flag_count_mismatch(self):
        with pytest.raises(ConfigError):
            compute_suite_metrics([EpisodeMetrics()], [True, False])


class TestRunEpisode:
    def test_open_corridor_reaches_goal(self, corridor_config):
        metrics = run_episode(corridor_config)
        assert metrics.goal_reached
        assert metrics.outcome is Outcome.GOAL
        assert metrics.collision_count == 0
        assert metrics.target_dc_count == 0
        assert metrics.trajectory[-1].events[-1] == "goal"
        assert metrics.steps == len(metrics.trajectory)

    def test_single_step(self, scenario_files):
        metrics = run_episode(_config_for(scenario_files, "corridor", "episode.max_steps=1"))
        assert metrics.steps == 1
        assert not metrics.goal_reached
        assert metrics.outcome is Outcome.MAX_STEPS

    def test_blocked_corridor_freezes_without_contact(self, scenario_files):
        cfg = _config_for(scenario_files, "blocked_corridor", "episode.max_steps=100")
        metrics = run_episode(cfg)
        assert metrics.freeze_count >= 1
        assert metrics.collision_count == 0
        assert not metrics.goal_reached
        assert any("freeze" in r.events for r in metrics.trajectory)

    def test_replay_is_deterministic(self, scenario_files, tmp_path):
        cfg = _config_for(scenario_files, "corridor", "episode.max_steps=30", "episode.seed=5")
        a = write_trajectory_csv(run_episode(cfg), tmp_path / "a.csv")
        b = write_trajectory_csv(run_episode(cfg), tmp_path / "b.csv")
        assert a.read_bytes() == b.read_bytes()

    def test_obstacle_term_avoids_target(self, scenario_files):
        avoid = run_episode(_config_for(scenario_files, "target_corridor", *AVOIDANCE_OVERRIDES))
        blind = run_episode(_config_for(scenario_files, "target_corridor", *AVOIDANCE_OVERRIDES, "mppi.w_obst=0"))
        assert avoid.target_dc_count == 0
        assert avoid.goal_reached
        assert blind.target_dc_count >= 1

    def test_perturbation_is_marked_as_target(self):
        obstacle = side_target().model_dump() | {"is_target": False}
        assert EpisodeConfig.model_validate({"perturbation": obstacle}).perturbation.is_target

    def test_camera_height_error_must_keep_camera_above_ground(self, scenario_files):
        with pytest.raises(ConfigError, match="camera_height_error"):
            run_episode(_config_for(scenario_files, "corridor", "sim.camera_height_error=-1.0"))

    def test_camera_height_error_changes_the_plan(self, scenario_files):
        exact = run_episode(_config_for(scenario_files, "corridor", "episode.max_steps=5"))
        skewed = run_episode(_config_for(scenario_files, "corridor", "episode.max_steps=5", "sim.camera_height_error=0.2"))
        assert [r.expected_cost for r in exact.trajectory] != [r.expected_cost for r in skewed.trajectory]

    def test_robot_past_goal_node_is_lost(self, scenario_files):
        world = corridor_world().model_copy(update={"start_pose": (5.0, 0.0, 0.0)})
        metrics = run_episode(_config_for(scenario_files, "corridor", "episode.goal_node=3"), world=world)
        assert metrics.outcome is Outcome.LOST
        assert not metrics.goal_reached
        assert metrics.steps == 1
        last = metrics.trajectory[-1]
        assert last.events == ("lost",)
        assert (last.v, last.w) == (0.0, 0.0)
        assert last.node > 3

    @pytest.mark.parametrize(
        "override", ["episode.localizer=descriptor", "traversability.backend=probability", "episode.yaw_estimator=learned"]
    )
    def test_image_derived_backends_rejected(self, scenario_files, override):
        with pytest.raises(ConfigError, match=override.split("=")[0]):
            _config_for(scenario_files, "corridor", override)

    def test_avoidance_overrides_touch_only_documented_keys(self):
        tuned = load_run_config(overrides=AVOIDANCE_OVERRIDES).to_dict()
        defaults = RunConfig().to_dict()
        changed = {
            f"{section}.{key}"
            for section, values in defaults.items()
            if isinstance(values, dict)
            for key, value in values.items()
            if tuned[section][key] != value
        }
        assert changed == {"sim.occlusion", "traversability.n_per_contour", "mppi.r_safe", "episode.d_goal"}
        assert tuned["mppi"]["r_safe"] == pytest.approx(corridor_world().robot_radius + side_target().radius)

    def test_world_required(self):
        with pytest.raises(ConfigError, match="episode.world"):
            run_episode(RunConfig())

    def test_goal_node_must_exist(self, scenario_files):
        with pytest.raises(ConfigError, match="goal_node"):
            run_episode(_config_for(scenario_files, "corridor", "episode.goal_node=100000"))


class TestArtifacts:
    @pytest.fixture
    def metrics(self) -> EpisodeMetrics:
        return EpisodeMetrics(
            dc_count=1,
            steps=2,
            trajectory=[
                StepRecord(t=0, x=0.1, y=0.0, theta=0.0, v=0.5, w=0.0, subgoal_u=160.0, subgoal_v=170.0,
                           cost_obstacle=2.0, cost_subgoal=3.0, cost_control=0.25, expected_cost=5.0),
                StepRecord(t=1, x=0.2, y=0.0, theta=0.0, v=0.0, w=0.0, events=("dc:0", "freeze")),
            ],
        )

    def test_trajectory_csv(self, metrics, tmp_path):
        path = write_trajectory_csv(metrics, tmp_path / "run" / "trajectory.csv")
        assert path.read_text().splitlines()[0] == ",".join(TRAJECTORY_HEADER)
        rows = read_trajectory_csv(path)
        assert [r["event"] for r in rows] == ["", "dc:0;freeze"]
        assert float(rows[1]["x"]) == 0.2

    def test_costs_csv_marks_hold_steps(self, metrics, tmp_path):
        rows = read_costs_csv(write_costs_csv(metrics, tmp_path / "costs.csv"))
        assert rows[0]["expected"] == "5.0"
        assert rows[1]["subgoal_u"] == "nan"

    def test_wrong_header_rejected(self, metrics, tmp_path):
        path = write_costs_csv(metrics, tmp_path / "costs.csv")
        with pytest.raises(ConfigError):
            read_trajectory_csv(path)

    def test_missing_log(self, tmp_path):
        with pytest.raises(ConfigError):
            read_trajectory_csv(tmp_path / "nope.csv")

    def test_plot_tables(self, metrics, tmp_path):
        trajectory = write_trajectory_csv(metrics, tmp_path / "trajectory.csv")
        costs = write_costs_csv(metrics, tmp_path / "costs.csv")
        written = emit_plot_data(trajectory, costs, target_corridor_world(), tmp_path / "plot")
        assert [p.name for p in written] == ["trajectory.dat", "obstacles.dat", "costs.dat"]

        lines = (tmp_path / "plot" / "trajectory.dat").read_text().splitlines()
        assert lines[0] == "# t x y theta v w"
        assert len(lines) == 3

        blocks = (tmp_path / "plot" / "obstacles.dat").read_text().split("\n\n")
        assert len(blocks) == 2
        bounds_rows = blocks[0].splitlines()[1:]
        assert bounds_rows[0] == bounds_rows[-1]
        assert all(row.startswith("-1 ") for row in bounds_rows)

    def test_plot_without_world(self, metrics, tmp_path):
        trajectory = write_trajectory_csv(metrics, tmp_path / "trajectory.csv")
        written = emit_plot_data(trajectory, None, None, tmp_path / "plot")
        assert [p.name for p in written] == ["trajectory.dat"]

    def test_suite_summary_is_validated(self, metrics, tmp_path):
        rates = SuiteMetrics(adc=1.0, aic=0.0, af=0.0, tdcr=0.0, grr=0.0, runs=1, perturbation_runs=0)
        result = SuiteResult(
            metrics=rates,
            per_location={"default": rates},
            runs=[RunSummary(location="default", trial=0, seed=0, perturbation=None, metrics=metrics)],
        )
        path = write_json(suite_summary(result), tmp_path / "suite.json")
        doc = json.loads(path.read_text())
        assert doc["runs"][0]["outcome"] == "max_steps"
        assert doc["locations"]["default"]["runs"] == 1

    def test_suite_summary_rejects_rate_above_one(self):
        rates = SuiteMetrics(adc=0.0, aic=0.0, af=0.0, tdcr=1.5, grr=0.0, runs=1, perturbation_runs=1)
        with pytest.raises(ValidationError):
            suite_summary(SuiteResult(metrics=rates, per_location={}, runs=[]))
