"""HTTP surface: endpoints, schemas, error mapping."""

import pytest
from fastapi.testclient import TestClient

from trustlp.service.app import app

from conftest import U1_ROWS, U2_ROWS


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def grid(rows):
    return [[str(v) for v in row] for row in rows]


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_sgv_endpoint(client):
    resp = client.post("/sgv", json={"matrix": grid(U1_ROWS)})
    assert resp.status_code == 200
    body = resp.json()
    assert body["schema"] == 1
    assert body["command"] == "sgv"
    assert body["sgv"] == "1"
    assert body["sgv_attained_exactly"] is False
    assert body["kernel"] == [["1", "1"], ["0", "0"]]
    assert body["certification"]["objectives_equal"] is True
    assert "sgv_decimal" not in body  # only with decimal=true


def test_sgv_decimal_field(client):
    body = client.post("/sgv", json={"matrix": grid(U2_ROWS), "decimal": True}).json()
    assert body["sgv"] == "3/2"
    assert body["sgv_decimal"] == 1.5


def test_info_endpoint_bounds(client):
    body = client.post("/info", json={"matrix": grid(U2_ROWS)}).json()
    assert body["informativeness"] == "3/2"
    assert body["bounds"] == {"applicable": True, "lower": "3/2", "upper": "3/2"}


def test_info_joint_flag(client):
    body = client.post("/info", json={"matrix": grid(U2_ROWS), "joint": True}).json()
    assert body["informativeness"] == "3/2"


def test_eps_ses_endpoint(client):
    body = client.post(
        "/eps-ses",
        json={"matrix": grid(U1_ROWS), "ks": [1, 10, 100], "delta": "1/10"},
    ).json()
    assert body["delta"] == "1/10"
    assert [s["epsilon"] for s in body["steps"]] == ["1/10", "1/100", "1/1000"]
    assert [s["wceu"] for s in body["steps"]] == ["9/10", "99/100", "999/1000"]
    assert all(s["unique_best_response"] for s in body["steps"])


def test_graph_endpoint(client):
    body = client.post("/graph", json={"matrix": grid(U2_ROWS)}).json()
    assert body["shape"]["kind"] == "cycle"
    assert body["shape"]["uniform_weight"] == "1"
    assert body["matching"]["weight"] == "1"
    assert body["closed_form_sgv"] == {"applicable": True, "value": "3/2"}
    assert body["agrees_with_lp"] is True
    assert body["edge_list"] == "0 2 1\n1 0 1\n2 1 1\n"


def test_compare_endpoint(client):
    body = client.post("/compare", json={"matrix": grid(U2_ROWS)}).json()
    assert body["behavioral_informativeness"] == "3/2"
    assert body["deterministic_informativeness"] == "3"
    assert body["ordering"] == "<"


def test_verify_endpoint(client):
    body = client.post(
        "/verify", json={"matrix": grid(U1_ROWS), "grid": 16, "seed": 3, "samples": 10}
    ).json()
    assert body["ok"] is True
    assert [g["gap"] for g in body["grids"]] == ["1/4", "1/8", "1/16"]
    assert body["vertex"]["optimum"] == "1"


def test_normalize_roundtrip(client):
    body = client.post(
        "/sgv", json={"matrix": [["2", "3"], ["1", "2"]], "normalize": True}
    ).json()
    assert body["normalization_shift"] == "4"
    assert "sgv" in body


def test_error_nonzero_diagonal(client):
    resp = client.post("/sgv", json={"matrix": [["1", "0"], ["0", "0"]]})
    assert resp.status_code == 422
    assert resp.json()["error"] == "InvalidInstance"


def test_error_bad_cell(client):
    resp = client.post("/sgv", json={"matrix": [["0", "nope"], ["0", "0"]]})
    assert resp.status_code == 422
    assert "cell (0,1)" in resp.json()["detail"]


def test_error_resource_limit(client):
    resp = client.post("/verify", json={"matrix": grid(U2_ROWS), "grid": 400})
    assert resp.status_code == 413
    assert resp.json()["error"] == "ResourceLimit"


def test_error_ragged_matrix(client):
    resp = client.post("/sgv", json={"matrix": [["0", "1"], ["-1"]]})
    assert resp.status_code == 422


def test_error_malformed_json_body(client):
    resp = client.post("/sgv", json={"matrix": "not a grid"})
    assert resp.status_code == 422  # pydantic validation
