import json

import pytest
from fastapi.testclient import TestClient

from toruscalc.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_polytope_build_qn(client):
    r = client.post("/polytope/build", json={"type": "qn", "n": 3})
    assert r.status_code == 200
    body = r.json()
    assert body["f_vector"] == [2, 3, 3]
    assert body["vertex_count"] == 2
    assert body["is_nice_corners"] and not body["is_simple_polytope"]


def test_polytope_build_rejects_bad_n(client):
    assert client.post("/polytope/build", json={"type": "qn", "n": 0}).status_code == 422
    assert client.post("/polytope/build", json={"type": "dodecahedron", "n": 3}).status_code == 422


def test_polytope_connect_round_trip(client):
    q = client.post("/polytope/build", json={"type": "qn", "n": 3}).json()["lattice"]
    face = next(f for f in q["faces"] if f["dim"] == 2 and f["facets"] == [0])
    spec = {"left_face_id": face["id"], "right_face_id": face["id"], "facet_pairing": {0: 0}}
    r = client.post("/polytope/connect", json={"lhs": q, "rhs": q, "spec": spec, "face_dim": 2})
    assert r.status_code == 200
    assert r.json()["vertex_count"] == 4
    assert len(r.json()["lattice"]["facets"]) == 5


def test_polytope_connect_dim_mismatch(client):
    q = client.post("/polytope/build", json={"type": "qn", "n": 3}).json()["lattice"]
    face = next(f for f in q["faces"] if f["dim"] == 2 and f["facets"] == [0])
    spec = {"left_face_id": face["id"], "right_face_id": face["id"], "facet_pairing": {0: 0}}
    r = client.post("/polytope/connect", json={"lhs": q, "rhs": q, "spec": spec, "face_dim": 1})
    assert r.status_code == 422


def test_charfun_validate(client):
    t = client.post("/polytope/build", json={"type": "simplex", "n": 2}).json()["lattice"]
    good = {"n": 2, "xi": {"0": [1, 0], "1": [0, 1], "2": [-1, -1]}}
    r = client.post("/charfun/validate", json={"polytope": t, "xi": good})
    assert r.status_code == 200 and r.json()["ok"]
    bad = {"n": 2, "xi": {"0": [1, 0], "1": [0, 1], "2": [1, 2]}}
    r = client.post("/charfun/validate", json={"polytope": t, "xi": bad})
    assert r.status_code == 200 and not r.json()["ok"]
    assert r.json()["violating_faces"][0]["facets"] == [0, 2]
    imprimitive = {"n": 2, "xi": {"0": [2, 0], "1": [0, 1], "2": [1, 2]}}
    r = client.post("/charfun/validate", json={"polytope": t, "xi": imprimitive})
    assert r.status_code == 422


def test_betti_conn_sum_routes(client):
    r = client.post("/betti/conn-sum", json={"n": 3, "k": 2, "method": "all"})
    body = r.json()
    assert body["agree"]
    assert body["results"]["closed"] == [1, 0, 2, 2, 2, 0, 1]
    r = client.post("/betti/conn-sum", json={"n": 2, "k": 2, "method": "all"})
    body = r.json()
    assert not body["agree"] and body["registered_discrepancy"]
    assert body["results"]["closed"] == [1, 1, 2, 1, 1]
    assert body["results"]["mv"] == body["results"]["model"] == [1, 1, 4, 1, 1]
    assert client.post("/betti/conn-sum", json={"n": 3, "k": 9}).status_code == 422


def test_betti_complement_routes(client):
    r = client.post("/betti/complement", json={"n": 3, "orbit_dim": 3, "method": "wedge"})
    assert r.json()["wedge"] == [[4, 3], [3, 3], [2, 1]]
    r2 = client.post("/betti/complement", json={"n": 3, "orbit_dim": 3, "method": "recursive"})
    assert r2.json()["betti"] == r.json()["betti"]


def test_cdga_verify_route(client):
    r = client.post("/cdga/verify", json={"n": 2, "k": 1, "checks": ["axioms", "quotient"]})
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] and set(body["results"]) == {"axioms", "quotient"}


def test_cdga_dump_route(client):
    r = client.post("/cdga/dump", json={"n": 2, "k": 1, "model": "a"})
    body = r.json()
    labels = [b["label"] for b in body["basis"]]
    assert labels == ["1", "u1", "v1", "mu"]
    assert body["d"] == []
    assert ["1", "2", "3", "-1"][-1] in [p[3] for p in body["product"]]


def test_ring_routes(client):
    t = client.post("/polytope/build", json={"type": "simplex", "n": 2}).json()["lattice"]
    xi = {"n": 2, "xi": {"0": [1, 0], "1": [0, 1], "2": [-1, -1]}}
    r = client.post("/ring/quasitoric", json={"polytope": t, "xi": xi})
    assert r.status_code == 200
    cp2 = r.json()["ring"]
    assert r.json()["betti"] == [1, 0, 1, 0, 1]
    r2 = client.post("/ring/connect", json={"lhs": cp2, "rhs": cp2})
    assert r2.json()["betti"] == [1, 0, 2, 0, 1]
    assert r2.json()["pairing_nondegenerate"]
    r3 = client.post(
        "/ring/equivariant-connect", json={"lhs": cp2, "rhs": cp2, "n": 2, "k": 1}
    )
    assert r3.json()["betti"] == [1, 0, 4, 0, 1]


def test_verify_all_route_small(client):
    r = client.post("/verify/all", json={"max_n": 2, "allow_known_discrepancies": True})
    assert r.status_code == 200
    body = r.json()
    assert body["ok"]
    assert body["failures"] == []
    assert len(body["known_discrepancies"]) == 1
    r2 = client.post("/verify/all", json={"max_n": 2, "allow_known_discrepancies": False})
    assert not r2.json()["ok"]


def test_deterministic_output(client):
    payload = {"type": "cube", "n": 2}
    a = client.post("/polytope/build", json=payload).json()
    b = client.post("/polytope/build", json=payload).json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
