"""
Topological graph: construction from a recorded trajectory, localization,
pathfinding and subgoal-node selection.

Edges are directed along the recording (i → i′, i < i′). A pair is connected
when it passes both the Euclidean criterion (distance < ρ·μ, μ the mean non-zero
step) and the angular criterion (wrapped |φ[i] − φ[i′]| < φ_max). Consecutive
nodes are always connected, so the last node is reachable from every node.
"""
import logging
import math
from collections.abc import Sequence
from typing import Literal

import networkx as nx
import numpy as np
from numpy.typing import NDArray

from pixelnav.core.exceptions import (
    DegenerateTrajectory,
    MissingDescriptors,
    NodeNotFound,
    NoPath,
    TooFewPoses,
)
from pixelnav.geometry.service import wrap_angle
from pixelnav.topograph.models import PoseSample, TopoEdge, TopoGraph, TopoNode
from pixelnav.topograph.schemas import GraphBuildParams

logger = logging.getLogger(__name__)

PathMethod = Literal["dijkstra", "astar"]


def compute_relative_directions(positions: Sequence[tuple[float, float]]) -> list[float]:
    """
    φ[i] = atan2 of the step z[i+1] − z[i]; the last pose copies its predecessor.
    Zero-length steps inherit the previous direction, or the next one when no
    previous direction exists yet.
    """
    n = len(positions)
    if n < 2:
        raise TooFewPoses(n)
    pts = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
    steps = np.diff(pts, axis=0)
    lengths = np.hypot(steps[:, 0], steps[:, 1])

    raw: list[float | None] = []
    for (dx, dy), length in zip(steps, lengths):
        if length > 0.0:
            raw.append(wrap_angle(math.atan2(dy / length, dx / length)))
        else:
            raw.append(None)

    phis: list[float | None] = list(raw)
    previous: float | None = None
    for i, value in enumerate(phis):
        if value is None:
            phis[i] = previous
        else:
            previous = value
    following: float | None = None
    for i in range(len(phis) - 1, -1, -1):
        if raw[i] is not None:
            following = raw[i]
        if phis[i] is None:
            phis[i] = following if following is not None else 0.0

    result = [float(p) for p in phis]  # type: ignore[arg-type]
    result.append(result[-1])
    return result


def mean_step_length(positions: NDArray[np.float64]) -> float:
    steps = np.diff(positions, axis=0)
    lengths = np.hypot(steps[:, 0], steps[:, 1])
    nonzero = lengths[lengths > 0.0]
    if nonzero.size == 0:
        raise DegenerateTrajectory()
    return float(nonzero.mean())


def _angular_distance(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    d = np.abs(a - b) % (2.0 * math.pi)
    return np.minimum(d, 2.0 * math.pi - d)


def build_graph(
    positions: Sequence[tuple[float, float]],
    params: GraphBuildParams | None = None,
    descriptors: Sequence[Sequence[float]] | None = None,
) -> TopoGraph:
    params = params or GraphBuildParams()
    kept = list(positions)[:: params.downsample_stride]
    kept_descriptors = list(descriptors)[:: params.downsample_stride] if descriptors is not None else None
    if len(kept) < 2:
        raise TooFewPoses(len(kept))

    pts = np.asarray(kept, dtype=np.float64).reshape(-1, 2)
    mu = mean_step_length(pts)
    phis = np.asarray(compute_relative_directions(kept))

    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    dphi = _angular_distance(phis[:, None], phis[None, :])
    connect = (dist < params.rho * mu) & (dphi < params.phi_max)
    connect = np.triu(connect, k=1)
    idx = np.arange(len(kept) - 1)
    connect[idx, idx + 1] = True

    nodes = tuple(
        TopoNode(
            id=i,
            pose=PoseSample(z=(float(pts[i, 0]), float(pts[i, 1])), phi=float(phis[i])),
            descriptor=tuple(float(x) for x in kept_descriptors[i]) if kept_descriptors else None,
        )
        for i in range(len(kept))
    )
    sources, targets = np.nonzero(connect)
    edges = tuple(
        TopoEdge(source=int(i), target=int(j), weight=float(dist[i, j]))
        for i, j in zip(sources, targets)
    )
    logger.info(
        "Built graph: %d nodes, %d edges (mu=%.4g, rho=%.3g, phi_max=%.3g)",
        len(nodes), len(edges), mu, params.rho, params.phi_max,
    )
    return TopoGraph(nodes=nodes, edges=edges, build_params=params)


def localize(
    graph: TopoGraph,
    *,
    descriptor: Sequence[float] | None = None,
    position: tuple[float, float] | None = None,
    noise_sigma: float = 0.0,
    rng: np.random.Generator | None = None,
) -> int:
    """
    Descriptor backend: argmax cosine similarity over node descriptors.
    Oracle backend: argmin Euclidean distance from the (optionally noised)
    position to node poses. Ties go to the smallest node id.
    """
    if graph.size == 0:
        raise NodeNotFound(0)
    if descriptor is not None:
        if any(node.descriptor is None for node in graph.nodes):
            raise MissingDescriptors()
        table = np.array([node.descriptor for node in graph.nodes], dtype=np.float64)
        query = np.asarray(descriptor, dtype=np.float64)
        norms = np.linalg.norm(table, axis=1) * np.linalg.norm(query)
        sims = np.where(norms > 0, table @ query / np.where(norms > 0, norms, 1.0), -np.inf)
        return int(np.argmax(sims))
    if position is None:
        raise ValueError("localize needs either a descriptor or a position")
    query_xy = np.asarray(position, dtype=np.float64)
    if noise_sigma > 0.0:
        if rng is None:
            raise ValueError("noise_sigma > 0 requires an rng")
        query_xy = query_xy + rng.normal(0.0, noise_sigma, size=2)
    d = np.hypot(*(graph.positions - query_xy).T)
    return int(np.argmin(d))


def path_cost(graph: TopoGraph, path: Sequence[int]) -> float:
    g = graph.digraph
    return float(sum(g[a][b]["weight"] for a, b in zip(path[:-1], path[1:])))


def shortest_path(
    graph: TopoGraph,
    source: int,
    target: int,
    method: PathMethod = "dijkstra",
) -> list[int]:
    """
    Minimal-weight directed path.

    Dijkstra: among equal-cost paths the one with fewer hops wins, then the
    lexicographically smaller node sequence. The tie-break is a pass over the
    predecessor DAG of one Dijkstra run; equal-cost paths are never enumerated.

    A*: a minimal-weight path under the Euclidean heuristic; its cost equals
    Dijkstra's but ties are resolved by search order.
    """
    for node_id in (source, target):
        if not 0 <= node_id < graph.size:
            raise NodeNotFound(node_id)
    if source == target:
        return [source]
    g = graph.digraph
    if method == "astar":
        pos = graph.positions

        def heuristic(a: int, b: int) -> float:
            return float(math.hypot(*(pos[a] - pos[b])))

        try:
            return list(nx.astar_path(g, source, target, heuristic=heuristic, weight="weight"))
        except nx.NetworkXNoPath:
            raise NoPath(source, target)

    pred, dist = nx.dijkstra_predecessor_and_distance(g, source, weight="weight")
    if target not in dist:
        raise NoPath(source, target)
    # Edges (p, v) with dist[p] + w == dist[v]; every path through them is optimal.
    tight = nx.DiGraph([(p, v) for v, ps in pred.items() for p in ps])
    needed = nx.ancestors(tight, target) | {target}
    best: dict[int, tuple[int, tuple[int, ...]]] = {source: (0, (source,))}
    for node in nx.topological_sort(tight.subgraph(needed)):
        if node != source:
            best[node] = min((best[p][0] + 1, best[p][1] + (node,)) for p in pred[node])
    return list(best[target][1])


def select_subgoal_node(path: Sequence[int], l_sg: int) -> int:
    if not path:
        raise ValueError("path must be nonempty")
    if l_sg < 1:
        raise ValueError(f"l_sg must be >= 1, got {l_sg}")
    return int(path[min(l_sg, len(path) - 1)])
