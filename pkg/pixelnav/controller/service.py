"""
Sampling-based MPC (MPPI) over unicycle kinematics.

Stage cost q(x, u) = w_obst·q_obst(x) + w_sg·q_sg(x) + uᵀ Q_ctrl u where
q_sg is the pixel distance between the projected position and the subgoal
pixel, and q_obst counts backprojected obstacle points within r_safe.
Rollouts are scored on the state reached after each input.
"""
import logging
import math

import numpy as np
from numpy.typing import NDArray
from pydantic import ValidationError

from pixelnav.controller.models import (
    ControlInput,
    CostBreakdown,
    PlannerOutput,
    RobotState,
    RolloutBatch,
)
from pixelnav.controller.schemas import MppiConfig
from pixelnav.core.exceptions import InvalidConfig, config_error_from
from pixelnav.geometry.models import PixelPoint
from pixelnav.geometry.schemas import CameraModel
from pixelnav.geometry.service import EPS_PROJ, project_ground_array, wrap_angle, wrap_angles

logger = logging.getLogger(__name__)

# Unprojectable-state penalty in image diagonals.
Q_MAX_DIAGONALS = 10.0
# Added to the mirrored draw of an antithetic pair whose costs tie.
ANTITHETIC_TIE = 1e-3
TIE_RTOL = 1e-9


def unprojectable_penalty(cam: CameraModel) -> float:
    return Q_MAX_DIAGONALS * cam.diagonal


def step_dynamics(s: RobotState, u: ControlInput, dt: float) -> RobotState:
    return RobotState(
        x=s.x + u.v * math.cos(s.theta) * dt,
        y=s.y + u.v * math.sin(s.theta) * dt,
        theta=wrap_angle(s.theta + u.w * dt),
    )


def subgoal_cost(s: RobotState, cam: CameraModel, sg: PixelPoint) -> float:
    if s.x < EPS_PROJ:
        return unprojectable_penalty(cam)
    u = cam.c_x - cam.f_x * s.y / s.x
    v = cam.c_y + cam.f_y * cam.h_cam / s.x
    return math.hypot(u - sg.u, v - sg.v)


def obstacle_cost(s: RobotState, obstacles: NDArray[np.float64], r_safe: float) -> int:
    obstacles = np.asarray(obstacles, dtype=np.float64).reshape(-1, 2)
    if obstacles.shape[0] == 0:
        return 0
    d = np.hypot(obstacles[:, 0] - s.x, obstacles[:, 1] - s.y)
    return int(np.count_nonzero(d < r_safe))


def control_cost(u: ControlInput, q_ctrl: tuple[float, float]) -> float:
    return q_ctrl[0] * u.v * u.v + q_ctrl[1] * u.w * u.w


def total_cost(
    s: RobotState,
    u: ControlInput,
    cam: CameraModel,
    sg: PixelPoint,
    obstacles: NDArray[np.float64],
    cfg: MppiConfig,
) -> float:
    return (
        cfg.w_obst * obstacle_cost(s, obstacles, cfg.r_safe)
        + cfg.w_sg * subgoal_cost(s, cam, sg)
        + control_cost(u, cfg.q_ctrl)
    )


# ── Batched rollouts ─────────────────────────────────────────────────────────


def _validated(cfg: MppiConfig) -> MppiConfig:
    try:
        return MppiConfig.model_validate(cfg.model_dump(by_alias=True))
    except ValidationError as exc:
        raise InvalidConfig(config_error_from(exc, prefix="mppi").message)


def clamp_controls(controls: NDArray[np.float64], cfg: MppiConfig) -> NDArray[np.float64]:
    out = np.empty_like(controls)
    out[..., 0] = np.clip(controls[..., 0], cfg.v_min, cfg.v_max)
    out[..., 1] = np.clip(controls[..., 1], -cfg.w_max, cfg.w_max)
    return out


def sample_noise(cfg: MppiConfig, seed_key: int = 0) -> NDArray[np.float64]:
    """
    (M, K, 2) control noise. Each rollout's stream is derived from
    (rng_seed, seed_key, rollout index) so results do not depend on evaluation
    order. With antithetic sampling, rollout 2j+1 reuses the stream of 2j with
    the angular noise negated.
    """
    m, k = cfg.num_samples, cfg.horizon_steps
    scale = np.array([cfg.sigma_v, cfg.sigma_w])
    noise = np.empty((m, k, 2))
    stride = 2 if cfg.antithetic else 1
    for i in range(0, m, stride):
        stream = np.random.SeedSequence(entropy=cfg.rng_seed, spawn_key=(seed_key, i // stride))
        eps = np.random.default_rng(stream).standard_normal((k, 2)) * scale
        noise[i] = eps
        if cfg.antithetic and i + 1 < m:
            noise[i + 1, :, 0] = eps[:, 0]
            noise[i + 1, :, 1] = -eps[:, 1]
    return noise


def rollout_states(
    s0: RobotState, controls: NDArray[np.float64], dt: float
) -> NDArray[np.float64]:
    """(M, K, 3) states reached after each input of (M, K, 2) control sequences."""
    m, k, _ = controls.shape
    states = np.empty((m, k, 3))
    x = np.full(m, s0.x)
    y = np.full(m, s0.y)
    theta = np.full(m, s0.theta)
    for t in range(k):
        v = controls[:, t, 0]
        w = controls[:, t, 1]
        x = x + v * np.cos(theta) * dt
        y = y + v * np.sin(theta) * dt
        theta = wrap_angles(theta + w * dt)
        states[:, t, 0] = x
        states[:, t, 1] = y
        states[:, t, 2] = theta
    return states


def score_rollouts(
    states: NDArray[np.float64],
    controls: NDArray[np.float64],
    cam: CameraModel,
    sg: PixelPoint,
    obstacles: NDArray[np.float64],
    cfg: MppiConfig,
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Per-rollout summed (obstacle, subgoal, control) cost terms, weights applied."""
    pixels = project_ground_array(cam, states[..., :2])
    dist = np.hypot(pixels[..., 0] - sg.u, pixels[..., 1] - sg.v)
    q_sg = np.where(np.isnan(dist), unprojectable_penalty(cam), dist)

    q_obst = np.zeros(states.shape[:2])
    if obstacles.shape[0] > 0:
        r2 = cfg.r_safe * cfg.r_safe
        for t in range(states.shape[1]):
            dx = states[:, t, 0:1] - obstacles[None, :, 0]
            dy = states[:, t, 1:2] - obstacles[None, :, 1]
            q_obst[:, t] = np.count_nonzero(dx * dx + dy * dy < r2, axis=1)

    q_u = cfg.q_ctrl[0] * controls[..., 0] ** 2 + cfg.q_ctrl[1] * controls[..., 1] ** 2
    return (
        cfg.w_obst * q_obst.sum(axis=1),
        cfg.w_sg * q_sg.sum(axis=1),
        q_u.sum(axis=1),
    )


def break_antithetic_ties(costs: NDArray[np.float64]) -> NDArray[np.float64]:
    """
    Mirror-symmetric scenes give both draws of a pair the same cost; the
    primary (even) draw then wins so a vanishing temperature still selects a
    single sample.
    """
    out = costs.copy()
    m = costs.shape[0] - costs.shape[0] % 2
    # Mirrored pixels differ only by rounding, so ties are relative.
    tied = np.isclose(costs[0:m:2], costs[1:m:2], rtol=TIE_RTOL, atol=0.0)
    out[1:m:2] += np.where(tied, ANTITHETIC_TIE, 0.0)
    return out


def softmax_weights(costs: NDArray[np.float64], lambda_: float) -> NDArray[np.float64]:
    shifted = np.exp(-(costs - costs.min()) / lambda_)
    return shifted / shifted.sum()


def mppi_solve(
    s0: RobotState,
    cam: CameraModel,
    sg: PixelPoint,
    obstacles: NDArray[np.float64],
    cfg: MppiConfig,
    warm_start: NDArray[np.float64] | None = None,
    seed_key: int = 0,
) -> PlannerOutput:
    cfg = _validated(cfg)
    k = cfg.horizon_steps
    obstacles = np.asarray(obstacles, dtype=np.float64).reshape(-1, 2)
    if warm_start is None:
        nominal = np.zeros((k, 2))
    else:
        nominal = np.asarray(warm_start, dtype=np.float64).reshape(-1, 2)
        if nominal.shape[0] != k:
            raise InvalidConfig(f"mppi.warm_start: expected {k} steps, got {nominal.shape[0]}")

    controls = clamp_controls(nominal[None, :, :] + sample_noise(cfg, seed_key), cfg)
    states = rollout_states(s0, controls, cfg.dt)
    obst, subg, ctrl = score_rollouts(states, controls, cam, sg, obstacles, cfg)
    costs = obst + subg + ctrl
    if cfg.antithetic:
        costs = break_antithetic_ties(costs)
    weights = softmax_weights(costs, cfg.lambda_)

    sequence = clamp_controls(np.einsum("m,mkc->kc", weights, controls), cfg)
    shifted = np.concatenate([sequence[1:], sequence[-1:]], axis=0)

    final_states = rollout_states(s0, sequence[None], cfg.dt)
    b_obst, b_subg, b_ctrl = score_rollouts(final_states, sequence[None], cam, sg, obstacles, cfg)
    breakdown = CostBreakdown(obstacle=float(b_obst[0]), subgoal=float(b_subg[0]), control=float(b_ctrl[0]))

    expected = float(weights @ costs)
    first = ControlInput(v=float(sequence[0, 0]), w=float(sequence[0, 1]))
    logger.debug(
        "mppi: sg=(%.1f, %.1f) u0=(%.3f, %.3f) expected=%.3f min=%.3f",
        sg.u, sg.v, first.v, first.w, expected, float(costs.min()),
    )
    return PlannerOutput(
        control=first,
        sequence=sequence,
        nominal_sequence=shifted,
        expected_cost=expected,
        breakdown=breakdown,
        rollouts=RolloutBatch(controls=controls, costs=costs, weights=weights),
    )
