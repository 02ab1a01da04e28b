"""Tests for the HTTP API."""

import pytest

from src.services.graphio import parse_graph6

pytestmark = pytest.mark.asyncio


async def test_health(client):
    resp = await client.get("/health")
    assert resp.status_code == 200
    data = resp.json()
    assert data["status"] == "ok"
    assert "biclique" in data["drivers"]


# --- POST /detect ---


async def test_detect_copy(client):
    resp = await client.post("/detect", json={"pattern": "K3", "host": "W4"})
    assert resp.status_code == 200
    data = resp.json()
    assert data["tag"] == "PATTERN_COPY"
    assert data["mode"] == "HOST"
    assert sorted(data["map"]) == ["0", "1", "2"]
    assert data["verified"] is True


async def test_detect_absent(client):
    resp = await client.post("/detect", json={"pattern": "K3", "host": "PETERSEN"})
    assert resp.status_code == 200
    data = resp.json()
    assert data["tag"] == "FAILURE"
    assert data["reason"] == "absent"
    assert data["verified"] is False


async def test_detect_bad_graph(client):
    resp = await client.post("/detect", json={"pattern": "K3", "host": "not a graph"})
    assert resp.status_code == 400


# --- POST /dichotomy/{driver} ---


async def test_dichotomy_independent_set(client):
    resp = await client.post("/dichotomy/k4star-clique", json={"host": "E10", "n": 3})
    assert resp.status_code == 200
    data = resp.json()
    assert data["tag"] == "INDEPENDENT_SET"
    assert len(data["vertices"]) == 3
    assert data["driver"] == "k4star-clique"
    assert data["verified"] is True


async def test_dichotomy_biclique_hole(client):
    resp = await client.post("/dichotomy/biclique", json={"host": "E8", "pattern": "K2", "n": 2})
    assert resp.status_code == 200
    data = resp.json()
    assert data["tag"] == "BICLIQUE_HOLE"
    assert len(data["left"]) == len(data["right"]) == 2
    assert data["verified"] is True


async def test_dichotomy_complement_embedding(client):
    resp = await client.post("/dichotomy/k4star", json={"host": "E30", "target": "C4"})
    assert resp.status_code == 200
    data = resp.json()
    assert data["tag"] == "COMPLEMENT_EMBEDDING"
    assert data["mode"] == "COMPLEMENT"
    assert data["verified"] is True


async def test_dichotomy_missing_field(client):
    resp = await client.post("/dichotomy/k4star", json={"host": "E10"})
    assert resp.status_code == 400
    assert "target" in resp.json()["detail"]


async def test_dichotomy_precondition(client):
    resp = await client.post("/dichotomy/k4star-clique", json={"host": "E10", "n": 2})
    assert resp.status_code == 400


async def test_dichotomy_unknown_driver(client):
    resp = await client.post("/dichotomy/nope", json={"host": "E10"})
    assert resp.status_code == 422


async def test_dichotomy_rejects_bad_config(client):
    resp = await client.post("/dichotomy/k4star-clique", json={"host": "E10", "n": 3, "config": {"C0": 0}})
    assert resp.status_code == 422


# --- POST /ramsey ---


async def test_ramsey_value(client):
    resp = await client.post("/ramsey", json={"pattern": "K3", "target": "K3", "nmax": 6})
    assert resp.status_code == 200
    data = resp.json()
    assert data["value"] == 6
    assert data["exceeded"] is False


async def test_ramsey_exceeded_returns_witness(client):
    resp = await client.post("/ramsey", json={"pattern": "K3", "target": "K3", "nmax": 5})
    data = resp.json()
    assert data["exceeded"] is True
    assert data["value"] is None
    assert parse_graph6(data["witness"]).n == 5


async def test_ramsey_nmax_limit(client):
    resp = await client.post("/ramsey", json={"pattern": "K3", "target": "K3", "nmax": 10})
    assert resp.status_code == 422


# --- POST /stress ---


async def test_stress(client):
    resp = await client.post("/stress", json={"driver": "biclique", "trials": 3, "seed": 1, "spec": {"n": 1}})
    assert resp.status_code == 200
    data = resp.json()
    assert data["witness_failures"] == 0
    assert sum(data["per_tag"].values()) == 3
    assert "FAILURE" not in data["per_tag"]
