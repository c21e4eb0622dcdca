"""Controlled vocabularies used to classify learning resources.

Each vocabulary is a closed set of terms loaded from a tab-separated file.
Terms are identified by CURIEs (``prefix:localname``) and may form a
hierarchy via parent pointers (used by the discipline vocabulary).
Vocabularies are immutable after load; reloading produces a new value.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import Ambiguous, CycleDetected, DuplicateTerm, FileMissing, NotFound, ParseError

CURIE_RE = re.compile(r"^[^\s:]+:[^\s:]+$")


class VocabularyKind(enum.Enum):
    """The five classifier dimensions a resource can be annotated with."""

    RESOURCE_TYPE = "resource_type"
    MEDIA_TYPE = "media_type"
    DISCIPLINE = "discipline"
    TARGET_GROUP = "target_group"
    PROFICIENCY_LEVEL = "proficiency_level"


def normalize_label(text: str) -> str:
    """Case-fold, trim, and collapse internal whitespace."""
    return " ".join(text.split()).casefold()


def fold_diacritics(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(c for c in decomposed if not unicodedata.combining(c))


@dataclass(frozen=True)
class VocabTerm:
    id: str
    label: str
    vocabulary: VocabularyKind
    parent_id: str | None = None
    aliases: tuple[str, ...] = ()


@dataclass(frozen=True)
class Vocabulary:
    """An immutable, closed term set for one classifier kind."""

    kind: VocabularyKind
    terms: tuple[VocabTerm, ...]
    version: str = "0"
    source_uri: str = ""
    _by_id: dict = field(default_factory=dict, repr=False, compare=False)
    _by_key: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        by_id: dict[str, VocabTerm] = {}
        by_key: dict[str, list[VocabTerm]] = {}
        for term in self.terms:
            by_id[term.id] = term
            for key in (normalize_label(term.label), *map(normalize_label, term.aliases)):
                by_key.setdefault(key, [])
                if term not in by_key[key]:
                    by_key[key].append(term)
        self._by_id.update(by_id)
        self._by_key.update(by_key)

    def __contains__(self, term_id: str) -> bool:
        return term_id in self._by_id

    def __len__(self) -> int:
        return len(self.terms)

    def get(self, term_id: str) -> VocabTerm | None:
        return self._by_id.get(term_id)

    def resolve(self, query: str) -> VocabTerm:
        """Find the unique term whose id, label, or alias matches ``query``.

        Label and alias comparison uses normalized form; ids match exactly.
        """
        if query in self._by_id:
            return self._by_id[query]
        candidates = self._by_key.get(normalize_label(query), [])
        if not candidates:
            raise NotFound(
                f"no {self.kind.value} term matches {query!r}",
                query=query, kind=self.kind.value,
            )
        if len(candidates) > 1:
            raise Ambiguous(
                f"{query!r} matches multiple {self.kind.value} terms",
                candidates=[t.id for t in candidates],
            )
        return candidates[0]

    def ancestors(self, term: VocabTerm) -> list[VocabTerm]:
        """Parent chain from immediate parent to root; empty for roots."""
        chain = []
        current = term
        while current.parent_id is not None:
            current = self._by_id[current.parent_id]
            chain.append(current)
        return chain


def load_vocabulary(path: str | Path, kind: VocabularyKind) -> Vocabulary:
    """Load a vocabulary file: ``id<TAB>label<TAB>parent<TAB>aliases``.

    Aliases are semicolon-separated; ``#`` starts a comment line.  Duplicate
    ids or normalized labels and parent cycles are rejected outright.
    """
    path = Path(path)
    if not path.is_file():
        raise FileMissing(f"vocabulary file not found: {path}", path=str(path))

    terms: list[VocabTerm] = []
    seen_ids: set[str] = set()
    seen_labels: set[str] = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise ParseError(f"{path.name}:{lineno}: expected at least id and label", line=lineno)
        term_id = parts[0].strip()
        label = parts[1].strip()
        parent = parts[2].strip() if len(parts) > 2 else ""
        alias_cell = parts[3].strip() if len(parts) > 3 else ""
        if not CURIE_RE.match(term_id):
            raise ParseError(f"{path.name}:{lineno}: malformed CURIE {term_id!r}", line=lineno)
        if not label:
            raise ParseError(f"{path.name}:{lineno}: empty label", line=lineno)
        if term_id in seen_ids:
            raise DuplicateTerm(f"duplicate term id {term_id!r}", id=term_id)
        norm = normalize_label(label)
        if norm in seen_labels:
            raise DuplicateTerm(f"duplicate label {label!r}", id=term_id)
        seen_ids.add(term_id)
        seen_labels.add(norm)
        aliases = tuple(a.strip() for a in alias_cell.split(";") if a.strip())
        terms.append(VocabTerm(term_id, label, kind, parent or None, aliases))

    _check_parents(terms, path)
    return Vocabulary(kind=kind, terms=tuple(terms), source_uri=str(path))


def _check_parents(terms: list[VocabTerm], path: Path) -> None:
    by_id = {t.id: t for t in terms}
    for term in terms:
        if term.parent_id is not None and term.parent_id not in by_id:
            raise ParseError(
                f"{path.name}: term {term.id} has unknown parent {term.parent_id}",
                line=None,
            )
    # cycle check: walk each parent chain, bounded by term count
    for term in terms:
        trail = [term.id]
        current = term
        while current.parent_id is not None:
            if current.parent_id in trail:
                raise CycleDetected(
                    f"parent cycle involving {current.parent_id}",
                    cycle=trail + [current.parent_id],
                )
            trail.append(current.parent_id)
            current = by_id[current.parent_id]


class VocabularySet:
    """All five vocabularies, loaded from a directory of ``<kind>.tsv`` files."""

    def __init__(self, vocabularies: dict[VocabularyKind, Vocabulary]):
        missing = [k for k in VocabularyKind if k not in vocabularies]
        if missing:
            raise ValueError(f"missing vocabularies: {[k.value for k in missing]}")
        self._vocabularies = dict(vocabularies)

    @classmethod
    def load_dir(cls, directory: str | Path) -> "VocabularySet":
        directory = Path(directory)
        loaded = {}
        for kind in VocabularyKind:
            loaded[kind] = load_vocabulary(directory / f"{kind.value}.tsv", kind)
        return cls(loaded)

    def __getitem__(self, kind: VocabularyKind) -> Vocabulary:
        return self._vocabularies[kind]

    def resolve(self, query: str, kind: VocabularyKind) -> VocabTerm:
        return self._vocabularies[kind].resolve(query)

    def knows(self, term_id: str, kind: VocabularyKind) -> bool:
        return term_id in self._vocabularies[kind]

    def all_term_ids(self) -> set[str]:
        return {t.id for v in self._vocabularies.values() for t in v.terms}
