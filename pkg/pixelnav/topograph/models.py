from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np
from numpy.typing import NDArray

from pixelnav.topograph.schemas import GraphBuildParams


@dataclass(frozen=True)
class PoseSample:
    """Position in the scale-free frame and its relative direction φ ∈ (−π, π]."""
    z: tuple[float, float]
    phi: float


@dataclass(frozen=True)
class TopoNode:
    id: int
    pose: PoseSample
    descriptor: tuple[float, ...] | None = None


@dataclass(frozen=True)
class TopoEdge:
    source: int
    target: int
    weight: float


@dataclass(frozen=True)
class TopoGraph:
    nodes: tuple[TopoNode, ...]
    edges: tuple[TopoEdge, ...]
    build_params: GraphBuildParams = field(default_factory=GraphBuildParams)

    def __post_init__(self) -> None:
        n = len(self.nodes)
        for i, node in enumerate(self.nodes):
            if node.id != i:
                raise ValueError(f"Node ids must be contiguous 0..{n - 1}; got {node.id} at index {i}")
        for e in self.edges:
            if not (0 <= e.source < n and 0 <= e.target < n):
                raise ValueError(f"Edge {e.source}->{e.target} references a missing node")
            if e.source == e.target:
                raise ValueError(f"Self-loop on node {e.source}")

    @property
    def size(self) -> int:
        return len(self.nodes)

    @cached_property
    def positions(self) -> NDArray[np.float64]:
        return np.array([node.pose.z for node in self.nodes], dtype=np.float64).reshape(-1, 2)

    @cached_property
    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(node.id for node in self.nodes)
        g.add_weighted_edges_from((e.source, e.target, e.weight) for e in self.edges)
        return g

    def edge_set(self) -> set[tuple[int, int]]:
        return {(e.source, e.target) for e in self.edges}
