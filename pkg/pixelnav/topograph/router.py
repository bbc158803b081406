from fastapi import APIRouter

from pixelnav.topograph.io import graph_to_document
from pixelnav.topograph.schemas import BuildGraphRequest, GraphDocument
from pixelnav.topograph.service import build_graph

router = APIRouter(prefix="/graphs", tags=["graphs"])


@router.post("/build", response_model=GraphDocument)
def build(body: BuildGraphRequest) -> GraphDocument:
    graph = build_graph(body.positions, body.params, body.descriptors)
    return graph_to_document(graph)
