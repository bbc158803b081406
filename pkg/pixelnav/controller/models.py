from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True)
class RobotState:
    """Pose in the current robot frame R; theta in (−π, π]."""
    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0


@dataclass(frozen=True)
class ControlInput:
    v: float
    w: float


@dataclass(frozen=True)
class CostBreakdown:
    """Summed cost terms of one rollout (already weighted)."""
    obstacle: float
    subgoal: float
    control: float


@dataclass(frozen=True)
class RolloutBatch:
    controls: NDArray[np.float64]  # (M, K, 2), clamped
    costs: NDArray[np.float64]  # (M,)
    weights: NDArray[np.float64]  # (M,), softmax

    @property
    def mean_cost(self) -> float:
        return float(self.costs.mean())

    @property
    def best_index(self) -> int:
        return int(np.argmin(self.costs))


@dataclass(frozen=True)
class PlannerOutput:
    control: ControlInput
    sequence: NDArray[np.float64]  # (K, 2) optimised sequence
    nominal_sequence: NDArray[np.float64]  # (K, 2) time-shifted warm start for the next call
    expected_cost: float
    breakdown: CostBreakdown
    rollouts: RolloutBatch

    @property
    def nominal_controls(self) -> list[ControlInput]:
        return [ControlInput(v=float(v), w=float(w)) for v, w in self.nominal_sequence]
