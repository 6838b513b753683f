import json
import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from chaincodes import commands
from chaincodes.service import app

Z4 = {"p": 2, "e": 2}
C2 = {"kind": "cyclic", "n": 2}


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json()["status"] == "ok"


def test_ring_info_matches_command_layer(client):
    ring = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}}
    body = client.post("/ring/info", json={"ring": ring}).json()
    assert body == json.loads(json.dumps(commands.cmd_ring_info(ring)))


def test_acp_route(client):
    body = client.post("/code/acp", json={
        "ring": Z4, "group": C2,
        "code_c": {"generators": [[1, 1]]},
        "code_d": {"generators": [[1, 3]]},
    }).json()
    assert body["outputs"]["acp"]["is_acp"] is False
    assert body["outputs"]["acp"]["sum_size"] == 8


def test_dual_route(client):
    body = client.post("/code/dual", json={"ring": Z4, "group": C2, "code": {"generators": [[1, 3]]}}).json()
    assert body["ok"] and body["outputs"]["dual"]["log_p_size"] == 2


def test_dual_basis_and_trace(client):
    ring = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}}
    body = client.post("/dual-basis", json={"ring": ring}).json()
    assert body["outputs"]["dual_basis"] == [[0, 2], [2, 1]]
    body = client.post("/trace", json={"ring": ring, "element": [4, 1]}).json()
    assert body["outputs"]["trace"] == 4 * 2 + 5 - 9


def test_library_error_is_422_with_code(client):
    r = client.post("/ring/info", json={"ring": {"p": 6, "e": 1}})
    assert r.status_code == 422 and r.json()["code"] == "not_prime"


def test_non_input_error_is_400(client):
    r = client.post("/idempotents", json={"ring": {"p": 3, "e": 2}, "group": {"kind": "symmetric", "n": 3}})
    assert r.status_code == 400 and r.json()["code"] == "not_abelian"


def test_schema_violation(client):
    r = client.post("/group/new", json={"group": {"kind": "cyclic", "n": 3, "extra": 1}})
    assert r.status_code == 422 and "detail" in r.json()


def test_verify_subset(client):
    body = client.post("/verify/paper-examples", json={"names": ["acp_counterexample"]}).json()
    assert body["ok"] and body["verdicts"] == {"acp_counterexample": True}
