import pytest
from fastapi.testclient import TestClient
from pydantic import ValidationError

from api.schemas.tls import TlsElementDoc
from api.services.monomial_ideal import ara_bounds
from application import app
from conftest import EXAMPLE_2_EDGES, EXAMPLE_2_LABELS


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def _forest(labels, edges) -> dict:
    return {"labels": labels, "edges": [list(e) for e in edges]}


EXAMPLE_2 = _forest(EXAMPLE_2_LABELS, EXAMPLE_2_EDGES)
T33 = _forest(["a", "b", "x1", "x2", "x3", "y1", "y2", "y3"], [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)])
TRIANGLE = _forest(["a", "b", "c"], [(0, 1), (1, 2), (0, 2)])


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_pd(client, example_2):
    response = client.post("/api/pd", json=EXAMPLE_2)
    assert response.status_code == 200
    body = response.json()
    assert body["pd"] == 5
    bounds = ara_bounds(example_2)
    assert body["invariants"]["upper_bound"] == bounds.upper_bound
    assert body["invariants"]["rho"] == bounds.invariants.rho
    assert body["bound_collapsed"] == bounds.collapsed
    assert len(body["ideal"]["generators"]) == 8
    assert body["trace"][0]["depth"] >= 0


def test_build_family(client):
    response = client.post("/api/ara/build", json={"family": {"name": "double-star", "args": [2, 3]}})
    assert response.status_code == 200
    body = response.json()
    assert body["length"] == body["pd"] == 4
    assert body["verified"]
    assert body["family"] == "double-star"


def test_build_forest_with_oracle(client):
    response = client.post("/api/ara/build", json={"forest": EXAMPLE_2, "verify": ["sv", "oracle"], "fields": [2]})
    assert response.status_code == 200
    body = response.json()
    assert body["length"] == 5
    assert [doc["p"] for doc in body["oracle"]] == [2]
    assert body["verified"]


def test_build_errors(client):
    unstretched = client.post("/api/ara/build", json={"forest": T33})
    assert unstretched.status_code == 422
    assert unstretched.json()["detail"]["error"] == "not_stretched"

    assert client.post("/api/ara/build", json={"forest": TRIANGLE}).status_code == 400
    assert client.post("/api/ara/build", json={}).status_code == 400
    both = {"forest": EXAMPLE_2, "family": {"name": "line", "args": [5]}}
    assert client.post("/api/ara/build", json=both).status_code == 400


def test_verify_round_trip(client):
    built = client.post("/api/ara/build", json={"forest": EXAMPLE_2}).json()
    response = client.post("/api/ara/verify", json={"tls": built["tls"], "fields": [2, 3]})
    assert response.status_code == 200
    body = response.json()
    assert body["verified"] and body["length"] == 5

    tls = dict(built["tls"])
    tls["elements"] = tls["elements"][:-1]
    broken = client.post("/api/ara/verify", json={"tls": tls, "verify": ["sv"]}).json()
    assert not broken["verified"]
    assert broken["sv"]["condition"] == "i"


def test_sv_check(client):
    partition = {"blocks": [[[0, 1]], [[1, 2], [0, 3]]]}
    response = client.post("/api/sv/check", json={"partition": partition})
    assert response.status_code == 200
    assert response.json()["ok"]

    partition = {"blocks": [[[0, 1]], [[2, 3], [4, 5]]]}
    body = client.post("/api/sv/check", json={"partition": partition}).json()
    assert not body["ok"] and body["condition"] == "iii"


def test_resolution(client):
    response = client.post("/api/resolution", json={"family": {"name": "double-star", "args": [2, 3]}, "matrices": True})
    assert response.status_code == 200
    body = response.json()
    assert body["betti"] == [6, 9, 5, 1]
    assert len(body["matrices"]["4"]) == 4

    gens = [{"a": 1, "b": 1}, {"b": 1, "c": 1}, {"c": 1, "d": 1}, {"d": 1, "e": 1}]
    body = client.post("/api/resolution", json={"generators": gens}).json()
    assert not body["minimal"] and body["betti"] is None

    assert client.post("/api/resolution", json={}).status_code == 400


def test_families(client):
    response = client.get("/api/families/line", params={"r": 7})
    assert response.status_code == 200
    assert response.json()["sharp"] is False

    response = client.get("/api/families/double-star", params={"r": 2, "s": 3})
    assert response.json()["pd"] == 4

    assert client.get("/api/families/double-star", params={"r": 2}).status_code == 400
    assert client.get("/api/families/line", params={"r": 1}).status_code == 400


def test_verify_rejects_empty_summands(client):
    isolated = {"nvars": 2, "elements": [{"left": [0, 1], "right": None}]}
    response = client.post("/api/ara/verify", json={"tls": isolated, "verify": ["sv"]})
    assert response.status_code == 200
    assert response.json()["verified"]

    for element in ({"left": [0, 1], "right": []}, {"left": [], "right": [0, 1]}):
        doc = {"nvars": 2, "elements": [element]}
        assert client.post("/api/ara/verify", json={"tls": doc}).status_code == 422

    with pytest.raises(ValidationError):
        TlsElementDoc(left=[0, 1], right=[])
