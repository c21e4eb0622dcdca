import random

import pytest

from oerdex.dif import mint_id
from oerdex.errors import NotPending, UnknownSubmission, ValidationFailed
from oerdex.search import SearchQuery
from oerdex.seedgen import write_seed
from oerdex.service import Config, Registry
from tests.conftest import VOCAB_DIR, random_resource


def fresh_registry(tmp_path=None):
    data_dir = None
    if tmp_path is not None:
        return Registry(Config(vocab_dir=VOCAB_DIR, data_dir=tmp_path / "data"))
    return Registry(Config(vocab_dir=VOCAB_DIR, durable=False))


def test_submit_happy_path(registry, vocabs):
    rng = random.Random(1)
    payload = random_resource(rng, 0, vocabs)
    submission = registry.submit(payload, "alice")
    assert submission.state == "Pending"
    assert submission.dedup.kind == "None"


def test_submit_missing_title_fails(registry, vocabs):
    rng = random.Random(2)
    payload = random_resource(rng, 0, vocabs)
    payload.title = ""
    with pytest.raises(ValidationFailed):
        registry.submit(payload, "alice")


def test_submit_duplicate_url_advisory(registry, vocabs):
    rng = random.Random(3)
    existing = random_resource(rng, 0, vocabs)
    registry.store.upsert(existing)
    clone = random_resource(rng, 1, vocabs)
    clone.external_url = existing.external_url + "/"  # normalizes to the same
    clone.id = mint_id(clone.external_url)
    submission = registry.submit(clone, "bob")
    assert submission.state == "Pending"  # advisory, not auto-rejected
    assert submission.dedup.kind == "NormalizedUrlMatch"
    assert submission.dedup.existing == existing.id


def test_exact_url_verdict(registry, vocabs):
    rng = random.Random(4)
    existing = random_resource(rng, 0, vocabs)
    registry.store.upsert(existing)
    clone = random_resource(rng, 1, vocabs)
    clone.external_url = existing.external_url
    clone.id = existing.id
    submission = registry.submit(clone, "bob")
    assert submission.dedup.kind == "ExactUrl"


def test_approve_makes_record_searchable(registry, vocabs):
    rng = random.Random(5)
    payload = random_resource(rng, 0, vocabs)
    payload.title = "approval flow smoke record"
    submission = registry.submit(payload, "alice")
    assert registry.query(SearchQuery(text="approval")).total == 0
    decided = registry.review(submission.id, "Approve", reviewer="mod")
    assert decided.state == "Approved"
    assert decided.resource_id == payload.id
    result = registry.query(SearchQuery(text="approval"))
    assert [h.id for h in result.hits] == [payload.id]


def test_review_terminal_state_immutable(registry, vocabs):
    rng = random.Random(6)
    submission = registry.submit(random_resource(rng, 0, vocabs), "alice")
    registry.review(submission.id, "Approve", reviewer="mod")
    with pytest.raises(NotPending):
        registry.review(submission.id, "Reject", reviewer="mod")


def test_reject_leaves_store_unchanged(registry, vocabs):
    rng = random.Random(7)
    submission = registry.submit(random_resource(rng, 0, vocabs), "alice")
    before = len(registry.store)
    decided = registry.review(submission.id, "Reject", reviewer="mod",
                              notes="not an OER")
    assert decided.state == "Rejected" and decided.notes == "not an OER"
    assert len(registry.store) == before


def test_unknown_submission(registry):
    with pytest.raises(UnknownSubmission):
        registry.review("cafebabe-0000-0000-0000-000000000000", "Approve", "mod")


def test_bulk_ingest_fresh_seed(tmp_path, registry):
    sheet = write_seed(tmp_path / "seed.csv", 42)
    report = registry.ingest(sheet)
    assert report.created == 405
    assert report.updated == 0
    assert all(v.kind == "None" for v in report.verdicts)


def test_bulk_ingest_idempotent(tmp_path, registry):
    sheet = write_seed(tmp_path / "seed.csv", 42)
    registry.ingest(sheet)
    triples_once = registry.store.triples
    report = registry.ingest(sheet)
    assert report.created == 0
    assert report.updated == 405
    assert len(registry.store) == 405
    assert registry.store.triples == triples_once


def test_two_rows_one_url(tmp_path, registry, vocabs):
    rng = random.Random(8)
    a = random_resource(rng, 0, vocabs)
    b = random_resource(rng, 1, vocabs)
    b.external_url = a.external_url + "/"
    b.id = mint_id(b.external_url)
    from oerdex.dif import write_dif
    sheet = tmp_path / "dup.csv"
    write_dif(sheet, [a, b])
    report = registry.ingest(sheet)
    assert len(registry.store) == 1
    assert report.verdicts[1].kind == "NormalizedUrlMatch"


def test_no_path_creates_invalid_resource(tmp_path, registry, vocabs):
    from oerdex.dif import validate_record
    sheet = write_seed(tmp_path / "seed.csv", 42)
    registry.ingest(sheet)
    for record in registry.store.records():
        assert validate_record(record, vocabs) == []


def test_submissions_survive_wal_replay(tmp_path, vocabs):
    reg = fresh_registry(tmp_path)
    rng = random.Random(9)
    approved = reg.submit(random_resource(rng, 0, vocabs), "alice")
    reg.review(approved.id, "Approve", reviewer="mod")
    pending = reg.submit(random_resource(rng, 1, vocabs), "bob")

    reopened = fresh_registry(tmp_path)
    assert len(reopened.store) == 1
    states = {s.id: s.state for s in reopened.queue.submissions.values()}
    assert states == {approved.id: "Approved", pending.id: "Pending"}
