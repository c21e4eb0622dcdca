"""Triple-based knowledge graph: mapping, persistence, import/export.

Resources are stored as subject-predicate-object triples under stable item
IRIs.  The mapping to and from the record model is total and lossless; the
canonical N-Triples export is sorted so identical stores serialize to
identical bytes.  Durability comes from an append-only write-ahead log.
"""

from __future__ import annotations

import datetime as dt
import json
import re
import struct
import threading
from dataclasses import dataclass
from pathlib import Path

from .dif import Author, LearningResource
from .errors import IoFailure, MissingType, ParseError, StorageFailure, UnknownSubject
from .vocab import VocabularyKind

DEFAULT_BASE_IRI = "https://search.dalia.education/"
VOCAB_IRI_BASE = "https://vocab.dalia.education/"

SCHEMA = "https://schema.org/"
PROJ = VOCAB_IRI_BASE + "terms/"
XSD = "http://www.w3.org/2001/XMLSchema#"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"

DEFAULT_CLASS_IRI = SCHEMA + "LearningResource"

XSD_STRING = XSD + "string"
XSD_DATE = XSD + "date"
XSD_INTEGER = XSD + "integer"

# Predicate per classifier kind; Schema.org where the semantics line up,
# project namespace otherwise.
CLASSIFIER_PREDICATES = {
    VocabularyKind.RESOURCE_TYPE: SCHEMA + "learningResourceType",
    VocabularyKind.MEDIA_TYPE: PROJ + "mediaType",
    VocabularyKind.DISCIPLINE: PROJ + "discipline",
    VocabularyKind.TARGET_GROUP: SCHEMA + "educationalLevel",
    VocabularyKind.PROFICIENCY_LEVEL: PROJ + "proficiencyLevel",
}
PREDICATE_CLASSIFIERS = {iri: kind for kind, iri in CLASSIFIER_PREDICATES.items()}

P_NAME = SCHEMA + "name"
P_DESCRIPTION = SCHEMA + "description"
P_KEYWORDS = SCHEMA + "keywords"
P_LICENSE = SCHEMA + "license"
P_URL = SCHEMA + "url"
P_DATE = SCHEMA + "datePublished"
P_LANGUAGE = SCHEMA + "inLanguage"
P_CREATOR = SCHEMA + "creator"
P_IDENTIFIER = SCHEMA + "identifier"
P_POSITION = PROJ + "position"
P_COMMUNITY = PROJ + "community"
P_COLLECTION = PROJ + "collection"

WAL_MAGIC = b"DKG1"


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: str = XSD_STRING
    lang: str | None = None


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: "str | Literal"  # str means IRI


def term_iri(term_id: str) -> str:
    prefix, _, local = term_id.partition(":")
    return f"{VOCAB_IRI_BASE}{prefix}/{local}"


def iri_to_term(iri: str) -> str | None:
    if not iri.startswith(VOCAB_IRI_BASE) or iri.startswith(PROJ):
        return None
    prefix, _, local = iri[len(VOCAB_IRI_BASE):].partition("/")
    if not prefix or not local:
        return None
    return f"{prefix}:{local}"


def item_iri(resource_id: str, base_iri: str = DEFAULT_BASE_IRI) -> str:
    return f"{base_iri}items/{resource_id}"


def iri_to_id(subject: str, base_iri: str = DEFAULT_BASE_IRI) -> str | None:
    prefix = f"{base_iri}items/"
    return subject[len(prefix):] if subject.startswith(prefix) else None


def to_triples(resource: LearningResource,
               base_iri: str = DEFAULT_BASE_IRI,
               class_iri: str = DEFAULT_CLASS_IRI) -> set[Triple]:
    """Map a record to its full triple set.  Deterministic and total."""
    s = item_iri(resource.id, base_iri)
    triples = {Triple(s, RDF_TYPE, class_iri),
               Triple(s, P_NAME, Literal(resource.title)),
               Triple(s, P_URL, Literal(resource.external_url))}
    if resource.description:
        triples.add(Triple(s, P_DESCRIPTION, Literal(resource.description)))
    if resource.license:
        triples.add(Triple(s, P_LICENSE, Literal(resource.license)))
    if resource.date_published:
        triples.add(Triple(s, P_DATE,
                           Literal(resource.date_published.isoformat(), XSD_DATE)))
    for tag in resource.languages:
        triples.add(Triple(s, P_LANGUAGE, Literal(tag)))
    for kw in resource.keywords:
        triples.add(Triple(s, P_KEYWORDS, Literal(kw)))
    for pos, author in enumerate(resource.authors):
        node = f"{s}/authors/{pos}"
        triples.add(Triple(s, P_CREATOR, node))
        triples.add(Triple(node, P_NAME, Literal(author.name)))
        triples.add(Triple(node, P_POSITION, Literal(str(pos), XSD_INTEGER)))
        if author.identifier:
            triples.add(Triple(node, P_IDENTIFIER, Literal(author.identifier)))
    for kind, predicate in CLASSIFIER_PREDICATES.items():
        for term_id in resource.classifier_ids(kind):
            triples.add(Triple(s, predicate, term_iri(term_id)))
    for value in resource.communities:
        triples.add(Triple(s, P_COMMUNITY, Literal(value)))
    for value in resource.collections:
        triples.add(Triple(s, P_COLLECTION, Literal(value)))
    return triples


def from_triples(subject: str, store: "GraphStore",
                 warnings: list | None = None) -> LearningResource:
    """Rebuild a record from its subject's triples (inverse of to_triples)."""
    triples = store.triples_for(subject)
    if not triples:
        raise UnknownSubject(f"no triples for subject {subject}", subject=subject)
    if not any(t.predicate == RDF_TYPE for t in triples):
        raise MissingType(f"subject {subject} has no type triple", subject=subject)

    resource_id = iri_to_id(subject, store.base_iri)
    if resource_id is None:
        raise UnknownSubject(f"subject {subject} is not an item IRI", subject=subject)

    fields: dict = {
        "id": resource_id, "title": "", "external_url": "", "description": "",
        "license": "", "date_published": None,
        "languages": [], "keywords": [], "communities": [], "collections": [],
        "resource_types": [], "media_types": [], "disciplines": [],
        "target_groups": [], "proficiency_levels": [],
    }
    author_nodes: list[str] = []
    for t in triples:
        obj = t.object
        if t.predicate == RDF_TYPE:
            continue
        elif t.predicate == P_NAME:
            fields["title"] = obj.lexical
        elif t.predicate == P_URL:
            fields["external_url"] = obj.lexical
        elif t.predicate == P_DESCRIPTION:
            fields["description"] = obj.lexical
        elif t.predicate == P_LICENSE:
            fields["license"] = obj.lexical
        elif t.predicate == P_DATE:
            fields["date_published"] = dt.date.fromisoformat(obj.lexical)
        elif t.predicate == P_LANGUAGE:
            fields["languages"].append(obj.lexical)
        elif t.predicate == P_KEYWORDS:
            fields["keywords"].append(obj.lexical)
        elif t.predicate == P_COMMUNITY:
            fields["communities"].append(obj.lexical)
        elif t.predicate == P_COLLECTION:
            fields["collections"].append(obj.lexical)
        elif t.predicate == P_CREATOR:
            author_nodes.append(obj)
        elif t.predicate in PREDICATE_CLASSIFIERS:
            term_id = iri_to_term(obj) if isinstance(obj, str) else None
            if term_id is None:
                if warnings is not None:
                    warnings.append(f"unresolvable term IRI {obj}")
                continue
            kind = PREDICATE_CLASSIFIERS[t.predicate]
            for fieldname, k in (("resource_types", VocabularyKind.RESOURCE_TYPE),
                                 ("media_types", VocabularyKind.MEDIA_TYPE),
                                 ("disciplines", VocabularyKind.DISCIPLINE),
                                 ("target_groups", VocabularyKind.TARGET_GROUP),
                                 ("proficiency_levels", VocabularyKind.PROFICIENCY_LEVEL)):
                if k is kind:
                    fields[fieldname].append(term_id)
        else:
            if warnings is not None:
                warnings.append(f"ignored unknown predicate {t.predicate}")

    authors: list[tuple[int, Author]] = []
    for node in author_nodes:
        node_triples = store.triples_for(node)
        name, identifier, position = "", None, 0
        for t in node_triples:
            if t.predicate == P_NAME:
                name = t.object.lexical
            elif t.predicate == P_IDENTIFIER:
                identifier = t.object.lexical
            elif t.predicate == P_POSITION:
                position = int(t.object.lexical)
        authors.append((position, Author(name, identifier)))
    fields["authors"] = [a for _, a in sorted(authors, key=lambda p: p[0])]
    return LearningResource(**fields)


# ---------------------------------------------------------------------------
# N-Triples serialization

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape(text: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in text)


_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


def _unescape(text: str) -> str:
    out, i = [], 0
    while i < len(text):
        c = text[i]
        if c == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            if nxt in _UNESCAPES:
                out.append(_UNESCAPES[nxt])
                i += 2
                continue
            if nxt == "u" and i + 6 <= len(text):
                out.append(chr(int(text[i + 2:i + 6], 16)))
                i += 6
                continue
            if nxt == "U" and i + 10 <= len(text):
                out.append(chr(int(text[i + 2:i + 10], 16)))
                i += 10
                continue
        out.append(c)
        i += 1
    return "".join(out)


def _nt_object(obj: "str | Literal") -> str:
    if isinstance(obj, str):
        return f"<{obj}>"
    if obj.lang:
        return f'"{_escape(obj.lexical)}"@{obj.lang}'
    if obj.datatype and obj.datatype != XSD_STRING:
        return f'"{_escape(obj.lexical)}"^^<{obj.datatype}>'
    return f'"{_escape(obj.lexical)}"'


def triple_to_ntriples(t: Triple) -> str:
    return f"<{t.subject}> <{t.predicate}> {_nt_object(t.object)} ."


_NT_LINE = re.compile(
    r'^<([^<>\s]+)>\s+<([^<>\s]+)>\s+'
    r'(<[^<>\s]+>|"(?:[^"\\]|\\.)*"(?:@[A-Za-z0-9-]+|\^\^<[^<>\s]+>)?)\s*\.\s*$'
)


def parse_ntriples_line(line: str) -> Triple:
    match = _NT_LINE.match(line)
    if match is None:
        raise ParseError(f"malformed N-Triples line: {line!r}")
    subject, predicate, obj_src = match.groups()
    if obj_src.startswith("<"):
        obj: str | Literal = obj_src[1:-1]
    else:
        body, suffix = obj_src, ""
        if body.endswith(">") and "^^<" in body:
            body, _, dtype = body.rpartition("^^<")
            obj = Literal(_unescape(body[1:-1]), dtype[:-1])
        elif not body.endswith('"') and "@" in body:
            body, _, lang = body.rpartition("@")
            obj = Literal(_unescape(body[1:-1]), XSD_STRING, lang)
        else:
            obj = Literal(_unescape(body[1:-1]))
        del suffix
    return Triple(subject, predicate, obj)


# ---------------------------------------------------------------------------
# Record (de)serialization for the JSON export and the write-ahead log

def resource_to_json(r: LearningResource) -> dict:
    return {
        "id": r.id, "title": r.title, "description": r.description,
        "languages": r.languages, "keywords": r.keywords,
        "license": r.license, "url": r.external_url,
        "date_published": r.date_published.isoformat() if r.date_published else None,
        "authors": [{"name": a.name, "identifier": a.identifier} for a in r.authors],
        "resource_types": r.resource_types, "media_types": r.media_types,
        "disciplines": r.disciplines, "target_groups": r.target_groups,
        "proficiency_levels": r.proficiency_levels,
        "communities": r.communities, "collections": r.collections,
    }


def resource_from_json(data: dict) -> LearningResource:
    return LearningResource(
        id=data["id"], title=data["title"],
        description=data.get("description", ""),
        languages=list(data.get("languages", [])),
        keywords=list(data.get("keywords", [])),
        license=data.get("license", ""),
        external_url=data["url"],
        date_published=(dt.date.fromisoformat(data["date_published"])
                        if data.get("date_published") else None),
        authors=[Author(a["name"], a.get("identifier"))
                 for a in data.get("authors", [])],
        resource_types=list(data.get("resource_types", [])),
        media_types=list(data.get("media_types", [])),
        disciplines=list(data.get("disciplines", [])),
        target_groups=list(data.get("target_groups", [])),
        proficiency_levels=list(data.get("proficiency_levels", [])),
        communities=list(data.get("communities", [])),
        collections=list(data.get("collections", [])),
    )


class WriteAheadLog:
    """Append-only, length-prefixed record log with a leading magic string.

    A torn final record (crash mid-write) is ignored on replay; everything
    before it is recovered.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        if not self.path.exists():
            self.path.write_bytes(WAL_MAGIC)
        self._handle = self.path.open("ab")

    def append(self, record: dict) -> None:
        payload = json.dumps(record, sort_keys=True).encode("utf-8")
        try:
            self._handle.write(struct.pack(">I", len(payload)) + payload)
            self._handle.flush()
        except OSError as exc:
            raise StorageFailure(f"write-ahead log append failed: {exc}") from exc

    def replay(self):
        data = self.path.read_bytes()
        if data[:4] != WAL_MAGIC:
            raise StorageFailure(f"{self.path} is not a DKG1 log")
        offset = 4
        while offset + 4 <= len(data):
            (length,) = struct.unpack(">I", data[offset:offset + 4])
            if offset + 4 + length > len(data):
                break  # torn tail
            yield json.loads(data[offset + 4:offset + 4 + length])
            offset += 4 + length

    def close(self):
        self._handle.close()


class GraphStore:
    """In-memory triple set with a subject index and optional durability.

    Writes must be serialized by the caller (the service holds one writer
    lock); reads work on whatever consistent state they observe.
    """

    def __init__(self, base_iri: str = DEFAULT_BASE_IRI,
                 class_iri: str = DEFAULT_CLASS_IRI,
                 wal_path: str | Path | None = None):
        self.base_iri = base_iri
        self.class_iri = class_iri
        self._by_subject: dict[str, set[Triple]] = {}
        self.resource_index: dict[str, str] = {}
        self.provenance: dict[str, dict] = {}
        self._records: dict[str, LearningResource] = {}
        self._lock = threading.Lock()
        self._wal = None
        if wal_path is not None:
            self._wal = WriteAheadLog(wal_path)
            self._replay()

    # -- durability ---------------------------------------------------------

    def _replay(self):
        for entry in self._wal.replay():
            if entry["op"] == "upsert":
                self._apply_upsert(resource_from_json(entry["record"]),
                                   entry["curator"], entry["source"],
                                   entry["ingested_at"])
            elif entry["op"] == "delete":
                self._apply_delete(entry["id"])
            # other tags (submissions) belong to the curation layer

    def log_raw(self, record: dict) -> None:
        """Append a foreign record tag (e.g. a submission) to the shared log."""
        if self._wal is not None:
            self._wal.append(record)

    def replay_raw(self):
        if self._wal is None:
            return iter(())
        return self._wal.replay()

    # -- reads --------------------------------------------------------------

    @property
    def triples(self) -> set[Triple]:
        return set().union(*self._by_subject.values()) if self._by_subject else set()

    def triples_for(self, subject: str) -> set[Triple]:
        return set(self._by_subject.get(subject, ()))

    def subjects(self) -> list[str]:
        return sorted(self.resource_index.values())

    def resource_ids(self) -> list[str]:
        return sorted(self.resource_index)

    def get_record(self, resource_id: str) -> LearningResource | None:
        return self._records.get(resource_id)

    def records(self) -> list[LearningResource]:
        return [self._records[rid] for rid in sorted(self._records)]

    def __len__(self) -> int:
        return len(self.resource_index)

    # -- writes -------------------------------------------------------------

    def _apply_upsert(self, resource: LearningResource, curator: str,
                      source: str, ingested_at: str) -> int:
        subject = item_iri(resource.id, self.base_iri)
        prior = self.provenance.get(resource.id)
        self._apply_delete(resource.id)
        for t in to_triples(resource, self.base_iri, self.class_iri):
            self._by_subject.setdefault(t.subject, set()).add(t)
        self.resource_index[resource.id] = subject
        revision = (prior["revision"] + 1) if prior else 1
        self.provenance[resource.id] = {
            "ingested_at": ingested_at, "source": source,
            "curator": curator, "revision": revision,
        }
        self._records[resource.id] = resource
        return revision

    def _apply_delete(self, resource_id: str) -> bool:
        subject = self.resource_index.pop(resource_id, None)
        if subject is None:
            return False
        self._by_subject.pop(subject, None)
        # drop dependent author nodes
        for node in [s for s in self._by_subject if s.startswith(subject + "/")]:
            self._by_subject.pop(node)
        self._records.pop(resource_id, None)
        self.provenance.pop(resource_id, None)
        return True

    def upsert(self, resource: LearningResource, curator: str = "system",
               source: str = "api") -> int:
        with self._lock:
            ingested_at = dt.datetime.now(dt.timezone.utc).isoformat()
            if self._wal is not None:
                self._wal.append({
                    "op": "upsert", "curator": curator, "source": source,
                    "ingested_at": ingested_at,
                    "record": resource_to_json(resource),
                })
            return self._apply_upsert(resource, curator, source, ingested_at)

    def delete(self, resource_id: str) -> bool:
        with self._lock:
            if self._wal is not None:
                self._wal.append({"op": "delete", "id": resource_id})
            return self._apply_delete(resource_id)

    # -- export / import ----------------------------------------------------

    def export_ntriples(self) -> bytes:
        lines = sorted(
            triple_to_ntriples(t)
            for triples in self._by_subject.values() for t in triples
        )
        return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""

    def export_turtle(self) -> bytes:
        prefixes = {"schema": SCHEMA, "dalia": PROJ, "xsd": XSD,
                    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#"}

        def shorten(iri: str) -> str:
            for prefix, base in prefixes.items():
                if iri.startswith(base):
                    local = iri[len(base):]
                    if re.fullmatch(r"[A-Za-z_][\w-]*", local):
                        return f"{prefix}:{local}"
            return f"<{iri}>"

        out = [f"@prefix {p}: <{iri}> ." for p, iri in prefixes.items()]
        out.append("")
        for subject in sorted(self._by_subject):
            triples = sorted(self._by_subject[subject],
                             key=lambda t: (t.predicate, _nt_object(t.object)))
            out.append(f"<{subject}>")
            body = [f"    {shorten(t.predicate)} "
                    f"{shorten(t.object) if isinstance(t.object, str) else _nt_object(t.object)}"
                    for t in triples]
            out.append(" ;\n".join(body) + " .")
            out.append("")
        return "\n".join(out).encode("utf-8")

    def export_json(self) -> bytes:
        payload = [resource_to_json(r) for r in self.records()]
        return json.dumps(payload, indent=2, ensure_ascii=False).encode("utf-8")

    def export(self, fmt: str) -> bytes:
        try:
            if fmt == "nt":
                return self.export_ntriples()
            if fmt == "ttl":
                return self.export_turtle()
            if fmt == "json":
                return self.export_json()
        except OSError as exc:
            raise IoFailure(str(exc)) from exc
        raise ValueError(f"unknown export format {fmt!r}")


def import_ntriples(stream: bytes, base_iri: str = DEFAULT_BASE_IRI,
                    class_iri: str = DEFAULT_CLASS_IRI,
                    strict: bool = True,
                    errors: list | None = None) -> GraphStore:
    """Build a store from N-Triples bytes.

    In lenient mode malformed lines are reported (line number + message)
    through ``errors`` and parsing continues.
    """
    store = GraphStore(base_iri=base_iri, class_iri=class_iri)
    parsed: list[Triple] = []
    for lineno, line in enumerate(stream.decode("utf-8").splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            parsed.append(parse_ntriples_line(line))
        except ParseError as exc:
            if strict:
                raise ParseError(f"line {lineno}: {exc.message}", line=lineno) from exc
            if errors is not None:
                errors.append((lineno, exc.message))
    for t in parsed:
        store._by_subject.setdefault(t.subject, set()).add(t)
    # rebuild the resource index and record cache from type triples
    for subject, triples in store._by_subject.items():
        if any(t.predicate == RDF_TYPE for t in triples):
            resource_id = iri_to_id(subject, base_iri)
            if resource_id is not None:
                store.resource_index[resource_id] = subject
                store._records[resource_id] = from_triples(subject, store)
    return store
