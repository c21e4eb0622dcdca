import json
import random

import pytest
from fastapi.testclient import TestClient

from oerdex.api import create_app
from oerdex.kg import resource_to_json
from oerdex.service import Config, Registry
from tests.conftest import CHEMOTION_ID, SEED_CSV, VOCAB_DIR, random_resource

TOKEN = "test-admin-token"


@pytest.fixture(scope="module")
def client(vocabs):
    registry = Registry(Config(vocab_dir=VOCAB_DIR, durable=False,
                               admin_token=TOKEN))
    registry.ingest(SEED_CSV)
    return TestClient(create_app(registry))


def auth():
    return {"Authorization": f"Bearer {TOKEN}"}


def test_get_item_seed_record(client):
    response = client.get(f"/items/{CHEMOTION_ID}")
    assert response.status_code == 200
    body = response.json()
    assert "Chemotion" in body["title"]
    assert body["revision"] == 1
    labels = body["classifier_labels"]
    assert labels["target_group"] == [{"id": "dalia-tg:bachelor",
                                       "label": "bachelor"}]


def test_get_item_malformed_id(client):
    response = client.get("/items/not-a-uuid")
    assert response.status_code == 400
    assert set(response.json()) == {"code", "message", "details"}


def test_get_item_unknown(client):
    response = client.get("/items/00000000-0000-4000-8000-000000000000")
    assert response.status_code == 404


def test_search_chemotion_rank_one(client):
    body = client.get("/search", params={"q": "chemotion"}).json()
    assert body["hits"][0]["id"] == CHEMOTION_ID


def test_search_bachelor_facet(client):
    body = client.get("/search",
                      params={"facets": "target_group:bachelor"}).json()
    assert body["total"] == 172


def test_search_page_beyond_last(client):
    body = client.get("/search", params={"q": "chemotion", "page": 50}).json()
    assert body["hits"] == [] and body["total"] >= 1


def test_search_bad_facet_syntax(client):
    assert client.get("/search", params={"facets": "nonsense"}).status_code == 400
    assert client.get("/search",
                      params={"facets": "target_group:webinar"}).status_code == 400


def test_stats_route(client):
    body = client.get("/stats").json()
    assert body["total"] == 405
    bachelor = next(r for r in body["facets"]["target_group"]
                    if r["term"] == "dalia-tg:bachelor")
    assert bachelor == {"term": "dalia-tg:bachelor", "label": "bachelor",
                        "count": 172, "pct": 42.5}


def test_stats_schema_golden(client):
    # stable response shape for the portal sidebar and stats page
    body = client.get("/stats").json()
    assert set(body) == {"total", "facets"}
    assert set(body["facets"]) == {"resource_type", "media_type", "discipline",
                                   "target_group", "proficiency_level"}
    for rows in body["facets"].values():
        for row in rows:
            assert set(row) == {"term", "label", "count", "pct"}


def test_search_schema_golden(client):
    body = client.get("/search", params={"q": "data"}).json()
    assert set(body) == {"total", "page", "page_size", "hits", "facet_counts"}
    for hit in body["hits"]:
        assert set(hit) == {"id", "title", "snippet", "score"}


def test_export_routes(client):
    nt = client.get("/export", params={"format": "nt"})
    assert nt.status_code == 200
    assert nt.headers["content-type"].startswith("application/n-triples")
    assert len(nt.content.splitlines()) > 405
    assert client.get("/export", params={"format": "xml"}).status_code == 400
    payload = json.loads(client.get("/export", params={"format": "json"}).content)
    assert len(payload) == 405


def test_vocabularies_route(client):
    body = client.get("/vocabularies").json()
    assert {t["id"] for t in body["proficiency_level"]} == {
        "dalia-pl:beginner", "dalia-pl:intermediate", "dalia-pl:advanced"}


def test_submission_flow(client, vocabs):
    rng = random.Random(20)
    record = resource_to_json(random_resource(rng, 1000, vocabs))
    record.pop("id")
    created = client.post("/submissions",
                          json={"record": record, "submitter": "carol"})
    assert created.status_code == 201
    sub = created.json()
    assert sub["state"] == "Pending"

    unauthorized = client.post(f"/submissions/{sub['id']}/review",
                               json={"decision": "Approve"})
    assert unauthorized.status_code == 401
    # the unauthorized call must not have mutated anything
    assert client.get("/stats").json()["total"] == 405

    decided = client.post(f"/submissions/{sub['id']}/review",
                          json={"decision": "Approve", "reviewer": "mod"},
                          headers=auth())
    assert decided.status_code == 200
    assert decided.json()["state"] == "Approved"
    assert client.get("/stats").json()["total"] == 406

    again = client.post(f"/submissions/{sub['id']}/review",
                        json={"decision": "Reject"}, headers=auth())
    assert again.status_code == 409


def test_submission_invalid_payload(client):
    response = client.post("/submissions", json={"record": {"title": ""}})
    assert response.status_code == 422
    body = response.json()
    assert body["code"] in ("VALIDATION_FAILED", "INVALID_PAYLOAD")


def test_ingest_route_and_auth(client, tmp_path, vocabs):
    from oerdex.dif import write_dif
    rng = random.Random(21)
    sheet = tmp_path / "mini.csv"
    write_dif(sheet, [random_resource(rng, 2000, vocabs)])
    files = {"file": ("mini.csv", sheet.read_bytes(), "text/csv")}
    assert client.post("/ingest", files=files).status_code == 401
    response = client.post("/ingest", files=files, headers=auth())
    assert response.status_code == 200
    body = response.json()
    assert body["created"] == 1 and body["skipped"] == 0
