"""
Closed-loop episode runner and suite metrics.

Each step: (every R_reloc steps) localize → shortest path → subgoal node;
then mask → yaw → subgoal pixel → contour points → MPPI, and the first control
is applied to the true metric pose. Contacts are edge-triggered, classified as
direct/indirect by field-of-view visibility and resolved by pushing the robot out.
"""
import logging
import math
from collections import deque
from collections.abc import Sequence

import numpy as np

from pixelnav.config import RunConfig
from pixelnav.controller.models import ControlInput, RobotState
from pixelnav.controller.service import mppi_solve, step_dynamics
from pixelnav.core.exceptions import ConfigError, EmptySuite, NoPath, NoTraversableRegion
from pixelnav.episode.models import EpisodeMetrics, Outcome, StepRecord, SuiteMetrics
from pixelnav.geometry.models import Pose2D
from pixelnav.geometry.service import wrap_angle
from pixelnav.perception.base import Localizer, Observation, TraversabilityEstimator, YawEstimator
from pixelnav.perception.registry import get_localizer, get_traversability_estimator, get_yaw_estimator
from pixelnav.simworld.io import load_world
from pixelnav.simworld.models import SimRobot
from pixelnav.simworld.schemas import WorldModel
from pixelnav.simworld.service import (
    check_collision,
    distance_to_graph,
    is_obstacle_visible,
    push_out,
)
from pixelnav.subgoal.service import select_subgoal_pixel
from pixelnav.topograph.io import load_graph
from pixelnav.topograph.models import TopoGraph
from pixelnav.topograph.service import localize, select_subgoal_node, shortest_path
from pixelnav.traversability.service import (
    extract_contours,
    obstacle_ground_points,
    sample_obstacle_points,
)

logger = logging.getLogger(__name__)


class _FreezeDetector:
    """Mean |v| below v_freeze over a full window fires once; re-arms when |v| recovers."""

    def __init__(self, v_freeze: float, window: int):
        self.v_freeze = v_freeze
        self._speeds: deque[float] = deque(maxlen=window)
        self._armed = True

    def update(self, v: float) -> bool:
        speed = abs(v)
        if speed >= self.v_freeze:
            self._armed = True
        self._speeds.append(speed)
        if (
            self._armed
            and len(self._speeds) == self._speeds.maxlen
            and sum(self._speeds) / len(self._speeds) < self.v_freeze
        ):
            self._armed = False
            self._speeds.clear()
            return True
        return False


def _default_backends(
    config: RunConfig, seed: int
) -> tuple[TraversabilityEstimator, YawEstimator, Localizer]:
    loc_ss, yaw_ss = np.random.SeedSequence(seed).spawn(2)
    estimator = get_traversability_estimator(config.traversability.backend, occlusion=config.sim.occlusion)
    yaw = get_yaw_estimator(
        config.episode.yaw_estimator,
        sigma=config.subgoal.yaw_sigma,
        rng=np.random.default_rng(yaw_ss),
    )
    localizer = get_localizer(
        config.episode.localizer,
        sigma_pos=config.sim.sigma_pos,
        scale=config.sim.scale,
        rng=np.random.default_rng(loc_ss),
    )
    return estimator, yaw, localizer


def _goal_node(goal_node: int | None, world: WorldModel, graph: TopoGraph, scale: float) -> int:
    """Explicit id, else the node nearest the world's goal region, else the last node."""
    if goal_node is not None:
        return goal_node
    if world.goal_region is not None:
        cx, cy = world.goal_region.center
        return localize(graph, position=(cx * scale, cy * scale))
    return graph.size - 1


def run_episode(
    config: RunConfig,
    world: WorldModel | None = None,
    graph: TopoGraph | None = None,
    *,
    traversability: TraversabilityEstimator | None = None,
    yaw_estimator: YawEstimator | None = None,
    localizer: Localizer | None = None,
) -> EpisodeMetrics:
    ep = config.episode
    if world is None:
        if ep.world is None:
            raise ConfigError("episode.world: a world file is required")
        world = load_world(ep.world)
    if graph is None:
        if ep.graph is None:
            raise ConfigError("episode.graph: a graph file is required")
        graph = load_graph(ep.graph)
    if graph.size == 0:
        raise ConfigError("graph has no nodes")
    goal = _goal_node(ep.goal_node, world, graph, config.sim.scale)
    if goal >= graph.size:
        raise ConfigError(f"episode.goal_node: node {goal} not in graph of {graph.size} nodes")
    if ep.perturbation is not None:
        world = world.with_obstacle(ep.perturbation)

    default_trav, default_yaw, default_loc = _default_backends(config, ep.seed)
    traversability = traversability or default_trav
    yaw_estimator = yaw_estimator or default_yaw
    localizer = localizer or default_loc

    cam_true = config.camera or world.camera
    cam_plan = cam_true.with_height(cam_true.h_cam + config.sim.camera_height_error)
    if cam_plan.h_cam <= 0.0:
        raise ConfigError("sim.camera_height_error: planner camera height must stay positive")
    mppi_cfg = config.mppi.model_copy(update={"rng_seed": ep.seed})
    scale = config.sim.scale
    goal_xy = graph.positions[goal] / scale
    targets = set(world.target_ids)

    pose = Pose2D(*world.start_pose)
    pose = Pose2D(pose.x, pose.y, wrap_angle(pose.theta))
    freeze = _FreezeDetector(ep.v_freeze, ep.t_freeze)
    in_contact = False
    nominal: np.ndarray | None = None
    subgoal_node = -1
    node = -1
    dc = ic = target_dc = freezes = 0
    outcome = Outcome.MAX_STEPS
    trajectory: list[StepRecord] = []
    logger.info(
        "Episode start: seed=%d goal=%d nodes=%d obstacles=%d perturbed=%s",
        ep.seed, goal, graph.size, len(world.obstacles), ep.perturbation is not None,
    )

    for t in range(ep.max_steps):
        robot = SimRobot(pose=pose, cam=cam_true)
        observation = Observation(step=t, robot=robot, world=world)
        if t % ep.reloc_period == 0:
            node = localizer.localize(observation, graph)
            try:
                path = shortest_path(graph, node, goal, method=ep.path_method)
            except NoPath:
                # Edges only point forward, so a robot localized past the goal node is lost.
                logger.warning("Step %d: no path from node %d to goal %d, robot lost", t, node, goal)
                outcome = Outcome.LOST
                trajectory.append(
                    StepRecord(
                        t=t, x=pose.x, y=pose.y, theta=pose.theta, v=0.0, w=0.0,
                        events=("lost",), node=node, subgoal_node=subgoal_node,
                    )
                )
                break
            subgoal_node = select_subgoal_node(path, ep.l_sg)

        mask = traversability.estimate(observation)
        yaw = yaw_estimator.estimate(observation, graph.nodes[subgoal_node])
        record: dict[str, float] = {}
        try:
            subgoal = select_subgoal_pixel(mask, cam_plan, yaw.alpha, config.subgoal)
        except NoTraversableRegion:
            logger.warning("Step %d: empty traversability mask, holding position", t)
            control = ControlInput(v=0.0, w=0.0)
            nominal = None
        else:
            points = sample_obstacle_points(
                extract_contours(mask),
                cam_plan,
                n_per_contour=config.traversability.n_per_contour,
                rng_seed=np.random.SeedSequence(ep.seed, spawn_key=(t,)),
            )
            out = mppi_solve(
                RobotState(),
                cam_plan,
                subgoal.p,
                obstacle_ground_points(points, cam_plan),
                mppi_cfg,
                warm_start=nominal,
                seed_key=t,
            )
            control = out.control
            nominal = out.nominal_sequence
            record = {
                "subgoal_u": subgoal.p.u,
                "subgoal_v": subgoal.p.v,
                "cost_obstacle": out.breakdown.obstacle,
                "cost_subgoal": out.breakdown.subgoal,
                "cost_control": out.breakdown.control,
                "expected_cost": out.expected_cost,
            }
            logger.debug(
                "Step %d: node=%d sg_node=%d sg=(%.0f, %.0f) u=(%.3f, %.3f)",
                t, node, subgoal_node, subgoal.p.u, subgoal.p.v, control.v, control.w,
            )

        moved = step_dynamics(RobotState(pose.x, pose.y, pose.theta), control, mppi_cfg.dt)
        pose = Pose2D(moved.x, moved.y, moved.theta)

        events: list[str] = []
        contact = check_collision(world, (pose.x, pose.y))
        if contact is not None:
            if not in_contact:
                visible = is_obstacle_visible(world, SimRobot(pose=pose, cam=cam_true), contact.obstacle_id)
                if visible:
                    dc += 1
                    events.append(f"dc:{contact.obstacle_id}")
                    if contact.obstacle_id in targets:
                        target_dc += 1
                else:
                    ic += 1
                    events.append(f"ic:{contact.obstacle_id}")
                logger.info("Step %d: %s", t, events[-1])
            pose = push_out(world, pose, contact)
            nominal = None
        in_contact = contact is not None

        if freeze.update(control.v):
            freezes += 1
            events.append("freeze")

        done = False
        if math.hypot(pose.x - goal_xy[0], pose.y - goal_xy[1]) <= ep.d_goal:
            events.append("goal")
            outcome = Outcome.GOAL
            done = True
        elif distance_to_graph(graph, pose, scale) > ep.d_lost:
            events.append("lost")
            outcome = Outcome.LOST
            logger.warning("Step %d: robot lost (> %.2f m from every node)", t, ep.d_lost)
            done = True

        trajectory.append(
            StepRecord(
                t=t,
                x=pose.x,
                y=pose.y,
                theta=pose.theta,
                v=control.v,
                w=control.w,
                events=tuple(events),
                node=node,
                subgoal_node=subgoal_node,
                **record,
            )
        )
        if done:
            break

    metrics = EpisodeMetrics(
        dc_count=dc,
        ic_count=ic,
        target_dc_count=target_dc,
        freeze_count=freezes,
        goal_reached=outcome is Outcome.GOAL,
        steps=len(trajectory),
        outcome=outcome,
        trajectory=trajectory,
    )
    logger.info(
        "Episode finished: outcome=%s steps=%d dc=%d ic=%d target_dc=%d freezes=%d",
        outcome.value, metrics.steps, dc, ic, target_dc, freezes,
    )
    return metrics


def compute_suite_metrics(
    runs: Sequence[EpisodeMetrics], perturbation_flags: Sequence[bool]
) -> SuiteMetrics:
    if not runs:
        raise EmptySuite()
    if len(runs) != len(perturbation_flags):
        raise ConfigError(
            f"{len(runs)} runs but {len(perturbation_flags)} perturbation flags"
        )
    n = len(runs)
    perturbed = [m for m, flag in zip(runs, perturbation_flags) if flag]
    hits = sum(1 for m in perturbed if m.target_dc_count >= 1)
    return SuiteMetrics(
        adc=sum(m.dc_count for m in runs) / n,
        aic=sum(m.ic_count for m in runs) / n,
        af=sum(m.freeze_count for m in runs) / n,
        tdcr=hits / len(perturbed) if perturbed else 0.0,
        grr=sum(1 for m in runs if m.goal_reached) / n,
        runs=n,
        perturbation_runs=len(perturbed),
    )
