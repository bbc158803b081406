"""JSON files for graphs and recorded pose sequences."""
from pathlib import Path

from pydantic import ValidationError

from pixelnav.core.exceptions import ConfigError, config_error_from
from pixelnav.topograph.models import PoseSample, TopoEdge, TopoGraph, TopoNode
from pixelnav.topograph.schemas import (
    EdgeDocument,
    GraphDocument,
    NodeDocument,
    PoseSequenceDocument,
)


def graph_to_document(graph: TopoGraph) -> GraphDocument:
    return GraphDocument(
        nodes=[
            NodeDocument(
                id=node.id,
                pose=node.pose.z,
                phi=node.pose.phi,
                descriptor=list(node.descriptor) if node.descriptor is not None else None,
            )
            for node in graph.nodes
        ],
        edges=[EdgeDocument(from_=e.source, to=e.target, weight=e.weight) for e in graph.edges],
        build_params=graph.build_params,
    )


def graph_from_document(doc: GraphDocument) -> TopoGraph:
    nodes = tuple(
        TopoNode(
            id=n.id,
            pose=PoseSample(z=(n.pose[0], n.pose[1]), phi=n.phi),
            descriptor=tuple(n.descriptor) if n.descriptor is not None else None,
        )
        for n in sorted(doc.nodes, key=lambda n: n.id)
    )
    edges = tuple(TopoEdge(source=e.from_, target=e.to, weight=e.weight) for e in doc.edges)
    try:
        return TopoGraph(nodes=nodes, edges=edges, build_params=doc.build_params)
    except ValueError as exc:
        raise ConfigError(f"graph: {exc}")


def save_graph(graph: TopoGraph, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = graph_to_document(graph)
    path.write_text(doc.model_dump_json(by_alias=True, exclude_none=True, indent=2))
    return path


def load_graph(path: str | Path) -> TopoGraph:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"graph file not found: {path}")
    try:
        doc = GraphDocument.model_validate_json(path.read_text())
    except ValidationError as exc:
        raise config_error_from(exc, prefix=f"graph file {path}")
    return graph_from_document(doc)


def save_poses(doc: PoseSequenceDocument, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(doc.model_dump_json(indent=2))
    return path


def load_poses(path: str | Path) -> PoseSequenceDocument:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"pose file not found: {path}")
    try:
        return PoseSequenceDocument.model_validate_json(path.read_text())
    except ValidationError as exc:
        raise config_error_from(exc, prefix=f"pose file {path}")
