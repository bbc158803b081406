"""HTTP surface: health, graph building and episode runs."""
import pytest
from httpx import ASGITransport, AsyncClient

from pixelnav.main import app
from pixelnav.simworld.scenarios import corridor_world
from pixelnav.topograph.io import graph_to_document


@pytest.fixture
async def client():
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
        yield ac


@pytest.mark.asyncio
async def test_health(client):
    resp = await client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


@pytest.mark.asyncio
async def test_build_graph(client):
    resp = await client.post(
        "/graphs/build",
        json={
            "positions": [[0, 0], [1, 0], [2, 0], [10, 0]],
            "params": {"rho": 1.0, "phi_max": 0.5},
        },
    )
    assert resp.status_code == 200
    doc = resp.json()
    assert {(e["from"], e["to"]) for e in doc["edges"]} == {(0, 1), (0, 2), (1, 2), (2, 3)}
    assert len(doc["nodes"]) == 4


@pytest.mark.asyncio
async def test_build_graph_stationary_poses(client):
    resp = await client.post("/graphs/build", json={"positions": [[1, 1], [1, 1]]})
    assert resp.status_code == 409


@pytest.mark.asyncio
async def test_run_episode(client, corridor_graph):
    resp = await client.post(
        "/episodes/run",
        json={
            "world": corridor_world().model_dump(mode="json"),
            "graph": graph_to_document(corridor_graph).model_dump(mode="json", by_alias=True),
            "config": {"episode": {"max_steps": 5}},
            "include_trajectory": True,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["steps"] == 5
    assert body["outcome"] == "max_steps"
    assert [row["t"] for row in body["trajectory"]] == [0, 1, 2, 3, 4]
    assert body["trajectory"][-1]["x"] > corridor_world().start_pose[0]


@pytest.mark.asyncio
async def test_run_episode_invalid_config(client, corridor_graph):
    resp = await client.post(
        "/episodes/run",
        json={
            "world": corridor_world().model_dump(mode="json"),
            "graph": graph_to_document(corridor_graph).model_dump(mode="json", by_alias=True),
            "config": {"mppi": {"lambda": -1.0}},
        },
    )
    assert resp.status_code == 422
    assert "mppi.lambda" in resp.json()["detail"]


@pytest.mark.asyncio
async def test_suite_needs_locations(client):
    resp = await client.post("/suites/run", json={"config": {}})
    assert resp.status_code == 422
    assert "suite" in resp.json()["detail"]
