import httpx
import pytest
from fastapi.testclient import TestClient

from shardlab.main import app

client = TestClient(app)


def test_health():
    response = client.get("/api/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


def test_build_endpoint():
    response = client.post("/api/build", json={"type": "A2"})
    assert response.status_code == 200
    body = response.json()
    assert body["group_size"] == 6
    assert body["shard_count"] == 4
    assert len(body["shards"]) == 4


def test_build_rejects_unknown_type():
    response = client.post("/api/build", json={"type": "E9"})
    assert response.status_code == 422


def test_build_rejects_repeated_generator():
    response = client.post("/api/build", json={"type": "A3", "coxeter_element": "s1,s1,s2"})
    assert response.status_code == 422


def test_build_rejects_short_coxeter_element():
    response = client.post("/api/build", json={"type": "A3", "coxeter_element": "s1,s2"})
    assert response.status_code == 400


def test_verify_endpoint():
    response = client.post("/api/verify", json={"type": "A2", "coxeter_element": "s2,s1"})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"]
    assert {"name", "theorem", "passed"} <= set(body["checks"][0])


def test_export_endpoint():
    response = client.post("/api/export/shard_order", json={"type": "A2", "format": "json"})
    assert response.status_code == 200
    body = response.json()
    assert body["target"] == "shard_order"
    assert body["format"] == "json"
    assert '"nodes"' in body["content"]


def test_export_unknown_target():
    response = client.post("/api/export/bogus", json={"type": "A2"})
    assert response.status_code == 404


def test_export_nc_needs_a_coxeter_element():
    response = client.post("/api/export/nc", json={"type": "A2"})
    assert response.status_code == 400


@pytest.mark.asyncio
async def test_health_async():
    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(transport=transport, base_url="http://test") as ac:
        response = await ac.get("/api/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_build_needs_exactly_one_source():
    assert client.post("/api/build", json={}).status_code == 422
    response = client.post("/api/build", json={"type": "A2", "arrangement": "a2.txt"})
    assert response.status_code == 422


def test_arrangement_rejects_a_coxeter_element():
    response = client.post("/api/build", json={"arrangement": "a2.txt", "coxeter_element": "s1,s2"})
    assert response.status_code == 422


def test_build_from_an_arrangement_path(tmp_path):
    source = tmp_path / "a2.txt"
    source.write_text("3 2 1\n1 -1 0\n0 1 -1\n1 0 -1\n")
    response = client.post("/api/build", json={"arrangement": str(source)})
    assert response.status_code == 200
    assert response.json()["shard_count"] == 4
