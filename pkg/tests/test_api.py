from urllib.parse import quote

import pytest
from fastapi.testclient import TestClient

from twoeig.graphs.graph import complete_graph, cycle_graph, path_graph
from twoeig.graphs.graph6 import graph6_encode
from twoeig.graphs.named_graphs import named_graph
from twoeig.main import app

C4 = graph6_encode(cycle_graph(4))


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_bound(client):
    response = client.post("/bound", json={"graph6": graph6_encode(path_graph(5))})
    assert response.status_code == 200
    verdict = response.json()["verdict"]
    assert verdict["status"] == "Excluded"
    assert verdict["reports"]


def test_bad_graph6_is_unprocessable(client):
    assert client.post("/bound", json={"graph6": "C!"}).status_code == 422
    assert client.post("/bound", json={}).status_code == 422


def test_disconnected_graph_is_a_bad_request(client):
    response = client.post("/bound", json={"graph6": "A?"})
    assert response.status_code == 400


def test_certify(client):
    response = client.post("/certify", json={"graph6": C4})
    assert response.status_code == 200
    outcome = response.json()["outcome"]
    assert outcome["certificate"]["source"] == "closed-form"
    assert outcome["failure"] is None


def test_certify_rejects_bad_params(client):
    response = client.post("/certify", json={"graph6": C4, "restarts": 0})
    assert response.status_code == 422


def test_comborth(client):
    body = client.post("/comborth", json={"graph6": graph6_encode(named_graph("Q3"))}).json()
    assert body["pattern_allows_comb_orth"] and body["quadrangular"]
    assert body["condensable"] == []
    assert body["bounds"]["edges"] == 12


def test_classify_and_lookup(client):
    g2p = client.post("/classify", json={"graph6": graph6_encode(named_graph("G2p"))}).json()
    assert g2p["verdict"] == "Certified" and g2p["provenance"] == "closed-form"

    k5 = client.post("/classify", json={"graph6": graph6_encode(complete_graph(5))}).json()
    assert k5["provenance"] == "ssp-closure"

    stored = client.get(f"/records/{quote(k5['graph6'], safe='')}")
    assert stored.status_code == 200
    assert stored.json() == k5


def test_missing_record(client):
    response = client.get(f"/records/{quote(C4, safe='')}")
    assert response.status_code == 404


def test_record_lookup_documents_percent_encoding(client):
    operation = client.get("/openapi.json").json()["paths"]["/records/{graph6}"]["get"]
    assert "percent-encode" in operation["summary"]
    assert "%3F" in operation["description"]
