"""The flat interchange record model and CSV spreadsheet ingestion.

A curation sheet is a fixed-header UTF-8 CSV; every data row is validated
independently so one bad row never sinks the file.  Record ids are minted
deterministically from the normalized external URL, which makes repeated
ingestion of the same sheet idempotent.
"""

from __future__ import annotations

import csv
import datetime as dt
import re
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable
from urllib.parse import urlsplit, urlunsplit

from .errors import FileMissing, HeaderMismatch, InvalidUrl
from .vocab import VocabularyKind, VocabularySet

# Fixed project namespace for name-based resource ids.
ID_NAMESPACE = uuid.UUID("6ba7b811-9dad-11d1-80b4-00c04fd430c8")

DIF_COLUMNS = [
    "title", "description", "languages", "keywords", "license", "url",
    "date_published", "authors", "resource_types", "media_types",
    "disciplines", "target_groups", "proficiency_levels",
    "communities", "collections",
]

# Present only in fixture sheets; pins historical ids the mint cannot reproduce.
ID_OVERRIDE_COLUMN = "id_override"

ORCID_RE = re.compile(r"^\d{4}-\d{4}-\d{4}-\d{3}[\dX]$")
LANG_TAG_RE = re.compile(r"^[A-Za-z]{2,3}(-[A-Za-z0-9]{1,8})*$")
UUID_RE = re.compile(
    r"^[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}$"
)

CLASSIFIER_FIELDS = {
    "resource_types": VocabularyKind.RESOURCE_TYPE,
    "media_types": VocabularyKind.MEDIA_TYPE,
    "disciplines": VocabularyKind.DISCIPLINE,
    "target_groups": VocabularyKind.TARGET_GROUP,
    "proficiency_levels": VocabularyKind.PROFICIENCY_LEVEL,
}


@dataclass(frozen=True)
class Author:
    name: str
    identifier: str | None = None


@dataclass(frozen=True)
class Message:
    """One coded validation finding attached to a row or record."""

    code: str
    fieldname: str
    severity: str  # "error" | "warning"
    detail: str = ""

    def to_json(self):
        return {
            "code": self.code, "field": self.fieldname,
            "severity": self.severity, "detail": self.detail,
        }


@dataclass
class LearningResource:
    """One OER record: the eight core fields plus classifiers and links.

    Multi-valued unordered fields (languages, keywords, classifiers,
    communities, collections) are kept sorted and deduplicated so a record
    has a single canonical form; only the author list keeps input order.
    """

    id: str
    title: str
    external_url: str
    description: str = ""
    languages: list[str] = field(default_factory=list)
    keywords: list[str] = field(default_factory=list)
    license: str = ""
    date_published: dt.date | None = None
    authors: list[Author] = field(default_factory=list)
    resource_types: list[str] = field(default_factory=list)
    media_types: list[str] = field(default_factory=list)
    disciplines: list[str] = field(default_factory=list)
    target_groups: list[str] = field(default_factory=list)
    proficiency_levels: list[str] = field(default_factory=list)
    communities: list[str] = field(default_factory=list)
    collections: list[str] = field(default_factory=list)

    def __post_init__(self):
        for name in ("languages", "keywords", "resource_types", "media_types",
                     "disciplines", "target_groups", "proficiency_levels",
                     "communities", "collections"):
            setattr(self, name, sorted(set(getattr(self, name))))

    def classifier_ids(self, kind: VocabularyKind) -> list[str]:
        for fieldname, k in CLASSIFIER_FIELDS.items():
            if k is kind:
                return getattr(self, fieldname)
        raise KeyError(kind)


@dataclass
class RowResult:
    row: int
    outcome: str  # "Accepted" | "AcceptedWithWarnings" | "Rejected"
    messages: list[Message]

    def to_json(self):
        return {
            "row": self.row, "outcome": self.outcome,
            "messages": [m.to_json() for m in self.messages],
        }


@dataclass
class ValidationReport:
    source: str
    row_results: list[RowResult]
    accepted: list[LearningResource]

    @property
    def accepted_count(self) -> int:
        return len(self.accepted)

    @property
    def rejected_count(self) -> int:
        return sum(1 for r in self.row_results if r.outcome == "Rejected")

    def to_json(self):
        return {
            "source": self.source,
            "rows": [r.to_json() for r in self.row_results],
            "accepted_count": self.accepted_count,
            "rejected_count": self.rejected_count,
        }


def normalize_url(url: str) -> str:
    """Lowercase scheme and host, drop a single trailing slash."""
    parts = urlsplit(url)
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise InvalidUrl(f"not an absolute http(s) URL: {url!r}", url=url)
    path = parts.path
    if path.endswith("/"):
        path = path[:-1]
    return urlunsplit((parts.scheme.lower(), parts.netloc.lower(), path,
                       parts.query, parts.fragment))


def mint_id(external_url: str, namespace: uuid.UUID = ID_NAMESPACE) -> str:
    """Deterministic name-based UUID for a resource URL."""
    return str(uuid.uuid5(namespace, normalize_url(external_url)))


def _split(cell: str) -> list[str]:
    return [v.strip() for v in cell.split(";") if v.strip()]


def _parse_date(cell: str) -> tuple[dt.date | None, Message | None]:
    cell = cell.strip()
    if not cell:
        return None, Message("MISSING_FIELD", "date_published", "warning",
                             "no publication date")
    if re.fullmatch(r"\d{4}", cell):
        return dt.date(int(cell), 1, 1), Message(
            "YEAR_ONLY_DATE", "date_published", "warning",
            f"year-only date {cell} expanded to {cell}-01-01")
    try:
        return dt.date.fromisoformat(cell), None
    except ValueError:
        return None, Message("INVALID_DATE", "date_published", "error",
                             f"unparseable date {cell!r}")


def _parse_authors(cell: str) -> tuple[list[Author], list[Message]]:
    authors, messages = [], []
    for value in _split(cell):
        name, _, orcid = value.partition("|")
        name = name.strip()
        orcid = orcid.strip()
        if not name:
            messages.append(Message("MISSING_REQUIRED", "authors", "error",
                                    f"author entry {value!r} has empty name"))
            continue
        if orcid and not ORCID_RE.match(orcid):
            messages.append(Message("INVALID_ORCID", "authors", "error",
                                    f"malformed identifier {orcid!r}"))
            continue
        authors.append(Author(name, orcid or None))
    if not authors:
        messages.append(Message("EMPTY_AUTHORS", "authors", "warning",
                                "no authors given"))
    return authors, messages


def validate_record(resource: LearningResource,
                    vocabularies: VocabularySet) -> list[Message]:
    """Check every record invariant; an empty result means the record is valid.

    Pure function: no mutation, no IO beyond reading the clock for the
    future-date rule.
    """
    messages: list[Message] = []
    if not resource.title.strip():
        messages.append(Message("MISSING_REQUIRED", "title", "error", "title is empty"))
    if not UUID_RE.match(resource.id):
        messages.append(Message("INVALID_ID", "id", "error",
                                f"not a canonical UUID: {resource.id!r}"))
    try:
        normalize_url(resource.external_url)
    except InvalidUrl as exc:
        messages.append(Message("INVALID_URL", "external_url", "error", exc.message))
    if resource.date_published and resource.date_published > dt.date.today():
        messages.append(Message("FUTURE_DATE", "date_published", "error",
                                f"{resource.date_published} is in the future"))
    for tag in resource.languages:
        if not LANG_TAG_RE.match(tag):
            messages.append(Message("INVALID_LANGUAGE", "languages", "error",
                                    f"malformed language tag {tag!r}"))
    for author in resource.authors:
        if not author.name.strip():
            messages.append(Message("MISSING_REQUIRED", "authors", "error",
                                    "author with empty name"))
        if author.identifier and not ORCID_RE.match(author.identifier):
            messages.append(Message("INVALID_ORCID", "authors", "error",
                                    f"malformed identifier {author.identifier!r}"))
    for fieldname, kind in CLASSIFIER_FIELDS.items():
        for term_id in getattr(resource, fieldname):
            if not vocabularies.knows(term_id, kind):
                messages.append(Message("UNKNOWN_TERM", fieldname, "error",
                                        f"{term_id!r} not in {kind.value} vocabulary"))
    return messages


def _build_row(row: dict, vocabularies: VocabularySet,
               mode: str) -> tuple[LearningResource | None, list[Message]]:
    messages: list[Message] = []

    title = row["title"].strip()
    if not title:
        messages.append(Message("MISSING_REQUIRED", "title", "error", "title is empty"))

    url = row["url"].strip()
    if not url:
        messages.append(Message("MISSING_REQUIRED", "url", "error", "url is empty"))
        resource_id = ""
    else:
        try:
            resource_id = mint_id(url)
        except InvalidUrl as exc:
            messages.append(Message("INVALID_URL", "url", "error", exc.message))
            resource_id = ""
    override = row.get(ID_OVERRIDE_COLUMN, "").strip()
    if override:
        if UUID_RE.match(override):
            resource_id = override
        else:
            messages.append(Message("INVALID_ID", ID_OVERRIDE_COLUMN, "error",
                                    f"override {override!r} is not a UUID"))

    date, date_msg = _parse_date(row["date_published"])
    if date_msg:
        messages.append(date_msg)
    if date and date > dt.date.today():
        messages.append(Message("FUTURE_DATE", "date_published", "error",
                                f"{date} is in the future"))

    authors, author_msgs = _parse_authors(row["authors"])
    messages.extend(author_msgs)

    languages = []
    for tag in _split(row["languages"]):
        if LANG_TAG_RE.match(tag):
            languages.append(tag)
        else:
            severity = "error" if mode == "strict" else "warning"
            messages.append(Message("INVALID_LANGUAGE", "languages", severity,
                                    f"malformed language tag {tag!r}"))

    if not row["description"].strip():
        messages.append(Message("MISSING_FIELD", "description", "warning",
                                "no description"))
    if not row["license"].strip():
        messages.append(Message("MISSING_FIELD", "license", "warning", "no license"))

    classifiers: dict[str, list[str]] = {}
    for fieldname, kind in CLASSIFIER_FIELDS.items():
        kept = []
        for value in _split(row[fieldname]):
            try:
                kept.append(vocabularies.resolve(value, kind).id)
            except Exception:
                severity = "error" if mode == "strict" else "warning"
                messages.append(Message("UNKNOWN_TERM", fieldname, severity,
                                        f"{value!r} not in {kind.value} vocabulary"))
        classifiers[fieldname] = kept

    if any(m.severity == "error" for m in messages):
        return None, messages

    resource = LearningResource(
        id=resource_id,
        title=title,
        external_url=url,
        description=row["description"].strip(),
        languages=languages,
        keywords=_split(row["keywords"]),
        license=row["license"].strip(),
        date_published=date,
        authors=authors,
        communities=_split(row["communities"]),
        collections=_split(row["collections"]),
        **classifiers,
    )
    return resource, messages


def parse_dif(path: str | Path, vocabularies: VocabularySet,
              mode: str = "strict") -> ValidationReport:
    """Parse a curation sheet into a per-row validation report.

    ``mode`` is ``strict`` (unknown classifier terms reject the row) or
    ``lenient`` (unknown terms are dropped with a warning).  Only a
    malformed header aborts the whole file.
    """
    path = Path(path)
    if not path.is_file():
        raise FileMissing(f"sheet not found: {path}", path=str(path))
    if mode not in ("strict", "lenient"):
        raise ValueError(f"mode must be strict or lenient, got {mode!r}")

    with path.open(newline="", encoding="utf-8-sig") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            header = []
        expected = list(DIF_COLUMNS)
        found = [h.strip() for h in header]
        if found not in (expected, expected + [ID_OVERRIDE_COLUMN]) and found != []:
            raise HeaderMismatch("sheet header does not match the interchange format",
                                 expected=expected, found=found)
        columns = found or expected

        row_results: list[RowResult] = []
        accepted: list[LearningResource] = []
        for rownum, cells in enumerate(reader, start=1):
            if not any(cell.strip() for cell in cells):
                continue
            cells = list(cells) + [""] * (len(columns) - len(cells))
            row = dict(zip(columns, cells))
            resource, messages = _build_row(row, vocabularies, mode)
            if resource is None:
                outcome = "Rejected"
            elif messages:
                outcome = "AcceptedWithWarnings"
                accepted.append(resource)
            else:
                outcome = "Accepted"
                accepted.append(resource)
            row_results.append(RowResult(rownum, outcome, messages))

    return ValidationReport(source=path.name, row_results=row_results,
                            accepted=accepted)


def write_dif(path: str | Path, resources: Iterable[LearningResource],
              id_override: bool = False) -> None:
    """Serialize records back to sheet form (used by fixtures and tests)."""
    columns = DIF_COLUMNS + ([ID_OVERRIDE_COLUMN] if id_override else [])
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for r in resources:
            authors = ";".join(
                f"{a.name}|{a.identifier}" if a.identifier else a.name
                for a in r.authors)
            row = [
                r.title, r.description, ";".join(r.languages),
                ";".join(r.keywords), r.license, r.external_url,
                r.date_published.isoformat() if r.date_published else "",
                authors, ";".join(r.resource_types), ";".join(r.media_types),
                ";".join(r.disciplines), ";".join(r.target_groups),
                ";".join(r.proficiency_levels), ";".join(r.communities),
                ";".join(r.collections),
            ]
            if id_override:
                row.append(r.id)
            writer.writerow(row)
