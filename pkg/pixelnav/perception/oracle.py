"""Simulator-backed perception: ground-truth masks, yaw and localization with optional Gaussian noise."""
import numpy as np

from pixelnav.perception.base import Localizer, Observation, TraversabilityEstimator, YawEstimator
from pixelnav.simworld.service import oracle_localize, render_traversability_mask
from pixelnav.subgoal.models import YawEstimate
from pixelnav.subgoal.service import oracle_yaw
from pixelnav.topograph.models import TopoGraph, TopoNode
from pixelnav.traversability.models import TraversabilityMask


class OracleMaskEstimator(TraversabilityEstimator):
    def __init__(self, occlusion: bool = True):
        self.occlusion = occlusion

    @property
    def name(self) -> str:
        return "oracle"

    def estimate(self, observation: Observation) -> TraversabilityMask:
        return render_traversability_mask(observation.world, observation.robot, occlusion=self.occlusion)


class OracleYawEstimator(YawEstimator):
    def __init__(self, sigma: float = 0.0, rng: np.random.Generator | None = None):
        self.sigma = sigma
        self._rng = rng

    @property
    def name(self) -> str:
        return "oracle"

    def estimate(self, observation: Observation, subgoal: TopoNode) -> YawEstimate:
        return oracle_yaw(observation.robot.pose, subgoal, sigma=self.sigma, rng=self._rng)


class OracleLocalizer(Localizer):
    """Nearest node to the noised true position; `scale` maps metres to the graph frame."""

    def __init__(self, sigma_pos: float = 0.0, scale: float = 1.0, rng: np.random.Generator | None = None):
        self.sigma_pos = sigma_pos
        self.scale = scale
        self._rng = rng

    @property
    def name(self) -> str:
        return "oracle"

    def localize(self, observation: Observation, graph: TopoGraph) -> int:
        return oracle_localize(
            observation.world,
            observation.robot,
            graph,
            sigma_pos=self.sigma_pos,
            rng=self._rng,
            scale=self.scale,
        )
