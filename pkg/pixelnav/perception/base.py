from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from pixelnav.simworld.models import SimRobot
from pixelnav.simworld.schemas import WorldModel
from pixelnav.subgoal.models import YawEstimate
from pixelnav.topograph.models import TopoGraph, TopoNode
from pixelnav.traversability.models import TraversabilityMask


@dataclass(frozen=True)
class Observation:
    """
    Everything a perception backend may look at for one decision step.
    Oracles read the simulator truth; learned backends read the image-derived
    fields and must not touch `world`.
    """
    step: int
    robot: SimRobot
    world: WorldModel
    descriptor: tuple[float, ...] | None = None
    probabilities: NDArray[np.float64] | None = None


class TraversabilityEstimator(ABC):
    """Produces the binary traversability mask of the current view."""

    @property
    @abstractmethod
    def name(self) -> str:
        ...

    @abstractmethod
    def estimate(self, observation: Observation) -> TraversabilityMask:
        ...


class YawEstimator(ABC):
    """Relative rotation between the current view and the subgoal node's view."""

    @property
    @abstractmethod
    def name(self) -> str:
        ...

    @abstractmethod
    def estimate(self, observation: Observation, subgoal: TopoNode) -> YawEstimate:
        ...


class Localizer(ABC):
    """Maps the current observation to a graph node id."""

    @property
    @abstractmethod
    def name(self) -> str:
        ...

    @abstractmethod
    def localize(self, observation: Observation, graph: TopoGraph) -> int:
        ...
