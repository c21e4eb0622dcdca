"""The two curation paths: moderated single submissions and bulk sheets.

Community submissions go through a Pending -> {Approved, Rejected,
Duplicate} state machine; approval mints the id and writes to the graph.
Bulk ingestion reuses the sheet parser row by row, treating URL-duplicate
rows as in-place updates so re-running a sheet is idempotent.
"""

from __future__ import annotations

import datetime as dt
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .dif import (LearningResource, ValidationReport, mint_id, parse_dif,
                  validate_record)
from .errors import NotPending, UnknownSubmission, ValidationFailed
from .kg import GraphStore, resource_from_json, resource_to_json
from .vocab import VocabularySet

PENDING = "Pending"
APPROVED = "Approved"
REJECTED = "Rejected"
DUPLICATE = "Duplicate"

TERMINAL_STATES = {APPROVED, REJECTED, DUPLICATE}


@dataclass
class DedupVerdict:
    kind: str  # "ExactUrl" | "NormalizedUrlMatch" | "None"
    existing: str | None = None

    def to_json(self):
        return {"kind": self.kind, "existing": self.existing}


@dataclass
class Submission:
    id: str
    payload: LearningResource
    submitter: str
    state: str = PENDING
    reviewer: str | None = None
    decided_at: str | None = None
    notes: str = ""
    dedup: DedupVerdict = field(default_factory=lambda: DedupVerdict("None"))
    resource_id: str | None = None

    def to_json(self):
        return {
            "id": self.id,
            "payload": resource_to_json(self.payload),
            "submitter": self.submitter,
            "state": self.state,
            "reviewer": self.reviewer,
            "decided_at": self.decided_at,
            "notes": self.notes,
            "dedup": self.dedup.to_json(),
            "resource_id": self.resource_id,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Submission":
        return cls(
            id=data["id"],
            payload=resource_from_json(data["payload"]),
            submitter=data["submitter"],
            state=data["state"],
            reviewer=data.get("reviewer"),
            decided_at=data.get("decided_at"),
            notes=data.get("notes", ""),
            dedup=DedupVerdict(**data.get("dedup", {"kind": "None"})),
            resource_id=data.get("resource_id"),
        )


@dataclass
class IngestReport:
    validation: ValidationReport
    verdicts: list[DedupVerdict]
    created: int
    updated: int
    skipped: int

    def to_json(self):
        return {
            "validation": self.validation.to_json(),
            "verdicts": [v.to_json() for v in self.verdicts],
            "created": self.created,
            "updated": self.updated,
            "skipped": self.skipped,
        }


def check_duplicate(resource: LearningResource, store: GraphStore) -> DedupVerdict:
    """Advisory URL-based duplicate check against the current store."""
    try:
        minted = mint_id(resource.external_url)
    except Exception:
        return DedupVerdict("None")
    existing = store.get_record(minted)
    if existing is None:
        return DedupVerdict("None")
    if existing.external_url == resource.external_url:
        return DedupVerdict("ExactUrl", existing=minted)
    return DedupVerdict("NormalizedUrlMatch", existing=minted)


class CurationQueue:
    """Submission inbox sharing the graph store's write-ahead log."""

    def __init__(self, store: GraphStore, vocabularies: VocabularySet):
        self.store = store
        self.vocabularies = vocabularies
        self.submissions: dict[str, Submission] = {}
        for entry in store.replay_raw():
            if entry.get("op") == "submission":
                submission = Submission.from_json(entry["submission"])
                self.submissions[submission.id] = submission

    def _persist(self, submission: Submission) -> None:
        self.store.log_raw({"op": "submission",
                            "submission": submission.to_json()})

    def submit(self, payload: LearningResource, submitter: str) -> Submission:
        messages = validate_record(payload, self.vocabularies)
        errors = [m for m in messages if m.severity == "error"]
        if errors:
            raise ValidationFailed("submission payload is invalid", messages=errors)
        submission = Submission(
            id=str(uuid.uuid4()),
            payload=payload,
            submitter=submitter,
            dedup=check_duplicate(payload, self.store),
        )
        self.submissions[submission.id] = submission
        self._persist(submission)
        return submission

    def review(self, submission_id: str, decision: str, reviewer: str,
               notes: str = "", on_approve=None) -> Submission:
        """Decide a pending submission.  ``decision`` is Approve, Reject,
        or MarkDuplicate; approval upserts the resource and invokes
        ``on_approve(resource)`` for index maintenance."""
        submission = self.submissions.get(submission_id)
        if submission is None:
            raise UnknownSubmission(f"no submission {submission_id}",
                                    id=submission_id)
        if submission.state != PENDING:
            raise NotPending(
                f"submission {submission_id} already {submission.state}",
                state=submission.state)
        if decision not in ("Approve", "Reject", "MarkDuplicate"):
            raise ValueError(f"unknown decision {decision!r}")

        submission.reviewer = reviewer
        submission.notes = notes
        submission.decided_at = dt.datetime.now(dt.timezone.utc).isoformat()
        if decision == "Approve":
            resource = submission.payload
            self.store.upsert(resource, curator=reviewer, source="web-form")
            submission.state = APPROVED
            submission.resource_id = resource.id
            if on_approve is not None:
                on_approve(resource)
        elif decision == "Reject":
            submission.state = REJECTED
        else:
            submission.state = DUPLICATE
        self._persist(submission)
        return submission

    def pending(self) -> list[Submission]:
        return [s for s in self.submissions.values() if s.state == PENDING]


def bulk_ingest(path: str | Path, store: GraphStore,
                vocabularies: VocabularySet, mode: str = "strict",
                curator: str = "bulk") -> IngestReport:
    """Ingest a curation sheet: validate, dedup, and upsert row by row.

    Each accepted row commits independently, so a failure partway through
    loses nothing already written.
    """
    report = parse_dif(path, vocabularies, mode)
    verdicts: list[DedupVerdict] = []
    created = updated = 0
    for resource in report.accepted:
        verdict = check_duplicate(resource, store)
        if store.get_record(resource.id) is not None:
            if verdict.kind == "None":
                verdict = DedupVerdict("NormalizedUrlMatch", existing=resource.id)
            updated += 1
        else:
            created += 1
        verdicts.append(verdict)
        store.upsert(resource, curator=curator, source=Path(path).name)
    return IngestReport(validation=report, verdicts=verdicts,
                        created=created, updated=updated,
                        skipped=report.rejected_count)
