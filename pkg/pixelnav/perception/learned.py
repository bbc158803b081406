"""Backends fed by image-derived data (probability maps, global descriptors)."""
from pixelnav.core.exceptions import ConfigError
from pixelnav.perception.base import Localizer, Observation, TraversabilityEstimator
from pixelnav.topograph.models import TopoGraph
from pixelnav.topograph.service import localize
from pixelnav.traversability.models import TraversabilityMask
from pixelnav.traversability.service import DEFAULT_THRESHOLD, binarize_probabilities


class ProbabilityMapEstimator(TraversabilityEstimator):
    """Thresholds a per-pixel traversability probability map supplied with the observation."""

    def __init__(self, threshold: float = DEFAULT_THRESHOLD):
        self.threshold = threshold

    @property
    def name(self) -> str:
        return "probability"

    def estimate(self, observation: Observation) -> TraversabilityMask:
        if observation.probabilities is None:
            raise ConfigError("probability estimator needs observation.probabilities")
        return binarize_probabilities(observation.probabilities, self.threshold)


class DescriptorLocalizer(Localizer):
    """Cosine-similarity retrieval over node descriptors."""

    @property
    def name(self) -> str:
        return "descriptor"

    def localize(self, observation: Observation, graph: TopoGraph) -> int:
        if observation.descriptor is None:
            raise ConfigError("descriptor localizer needs observation.descriptor")
        return localize(graph, descriptor=observation.descriptor)
