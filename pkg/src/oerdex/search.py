"""Faceted full-text search over the indexed corpus.

The index is an immutable snapshot built from the graph store: an inverted
token index with field-weighted frequencies for BM25 ranking, plus one
document bitmap per classifier term and language for facet filtering.
Facet semantics are the usual ones: OR within a facet, AND across facets,
and each facet's counts are computed with its own filter excluded.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .dif import LearningResource
from .errors import UnknownFacetTerm
from .kg import GraphStore
from .vocab import VocabularyKind, VocabularySet, fold_diacritics

BM25_K1 = 1.2
BM25_B = 0.75

# weighted field concatenation: title counts triple, keywords double
FIELD_WEIGHTS = {"title": 3, "keywords": 2, "description": 1, "authors": 1}

MAX_PAGE_SIZE = 100
SNIPPET_LENGTH = 160

_TOKEN_RE = re.compile(r"\w+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Unicode word tokens, case-folded, diacritics stripped; no stemming."""
    return _TOKEN_RE.findall(fold_diacritics(text.casefold()))


def _doc_tokens(resource: LearningResource) -> Counter:
    counts: Counter = Counter()
    fields = {
        "title": [resource.title],
        "keywords": resource.keywords,
        "description": [resource.description],
        "authors": [a.name for a in resource.authors],
    }
    for name, weight in FIELD_WEIGHTS.items():
        for text in fields[name]:
            for token in tokenize(text):
                counts[token] += weight
    return counts


@dataclass
class SearchQuery:
    text: str | None = None
    filters: dict[VocabularyKind, set[str]] = field(default_factory=dict)
    language: str | None = None
    license: str | None = None
    page: int = 0
    page_size: int = 10


@dataclass
class Hit:
    id: str
    title: str
    snippet: str
    score: float

    def to_json(self):
        return {"id": self.id, "title": self.title,
                "snippet": self.snippet, "score": self.score}


@dataclass
class SearchResult:
    total: int
    hits: list[Hit]
    facet_counts: dict[VocabularyKind, dict[str, int]]
    page: int
    page_size: int

    def to_json(self):
        return {
            "total": self.total,
            "page": self.page,
            "page_size": self.page_size,
            "hits": [h.to_json() for h in self.hits],
            "facet_counts": {k.value: dict(sorted(v.items()))
                             for k, v in self.facet_counts.items()},
        }


class Index:
    """Immutable search snapshot.  Build once, query concurrently."""

    def __init__(self, store: GraphStore,
                 vocabularies: VocabularySet | None = None,
                 corpus_version: int = 0):
        self.corpus_version = corpus_version
        self.docs: dict[str, LearningResource] = {r.id: r for r in store.records()}
        self.postings: dict[str, dict[str, int]] = {}
        self.doc_lengths: dict[str, int] = {}
        self.facet_bitmaps: dict[VocabularyKind, dict[str, set[str]]] = {
            kind: {} for kind in VocabularyKind}
        self.language_bitmap: dict[str, set[str]] = {}
        self.license_bitmap: dict[str, set[str]] = {}
        self.known_terms: set[str] = (
            vocabularies.all_term_ids() if vocabularies is not None else set())

        for doc_id, resource in self.docs.items():
            counts = _doc_tokens(resource)
            self.doc_lengths[doc_id] = sum(counts.values())
            for token, tf in counts.items():
                self.postings.setdefault(token, {})[doc_id] = tf
            for kind in VocabularyKind:
                for term_id in resource.classifier_ids(kind):
                    self.facet_bitmaps[kind].setdefault(term_id, set()).add(doc_id)
                    self.known_terms.add(term_id)
            for tag in resource.languages:
                self.language_bitmap.setdefault(tag, set()).add(doc_id)
            if resource.license:
                self.license_bitmap.setdefault(resource.license, set()).add(doc_id)

        self.n_docs = len(self.docs)
        self.avg_length = (sum(self.doc_lengths.values()) / self.n_docs
                           if self.n_docs else 0.0)


def build_index(store: GraphStore, vocabularies: VocabularySet | None = None,
                corpus_version: int = 0) -> Index:
    return Index(store, vocabularies, corpus_version)


def _bm25_scores(index: Index, text: str) -> dict[str, float]:
    scores: dict[str, float] = {}
    for token in tokenize(text):
        postings = index.postings.get(token)
        if not postings:
            continue
        df = len(postings)
        idf = math.log(1 + (index.n_docs - df + 0.5) / (df + 0.5))
        for doc_id, tf in postings.items():
            norm = BM25_K1 * (1 - BM25_B
                              + BM25_B * index.doc_lengths[doc_id] / index.avg_length)
            scores[doc_id] = scores.get(doc_id, 0.0) + idf * tf * (BM25_K1 + 1) / (tf + norm)
    return scores


def _facet_set(index: Index, kind: VocabularyKind, term_ids: set[str]) -> set[str]:
    matched: set[str] = set()
    for term_id in term_ids:
        matched |= index.facet_bitmaps[kind].get(term_id, set())
    return matched


def _snippet(resource: LearningResource) -> str:
    text = resource.description or " ".join(resource.keywords)
    if len(text) <= SNIPPET_LENGTH:
        return text
    return text[:SNIPPET_LENGTH].rsplit(" ", 1)[0] + "…"


def query(index: Index, q: SearchQuery) -> SearchResult:
    """Run one faceted query against an index snapshot.

    Result set = text matches (or all documents) intersected with every
    facet filter; ranking is BM25 score descending, ties broken by id.
    """
    if not (0 < q.page_size <= MAX_PAGE_SIZE):
        raise ValueError(f"page_size must be in 1..{MAX_PAGE_SIZE}")
    if q.page < 0:
        raise ValueError("page must be non-negative")
    for kind, term_ids in q.filters.items():
        for term_id in term_ids:
            if term_id not in index.known_terms:
                raise UnknownFacetTerm(
                    f"unknown {kind.value} term {term_id!r}",
                    term=term_id, kind=kind.value)

    if q.text and q.text.strip():
        scores = _bm25_scores(index, q.text)
        text_set = set(scores)
    else:
        scores = {}
        text_set = set(index.docs)

    base = text_set
    if q.language is not None:
        base = base & index.language_bitmap.get(q.language, set())
    if q.license is not None:
        base = base & index.license_bitmap.get(q.license, set())

    facet_sets = {kind: _facet_set(index, kind, term_ids)
                  for kind, term_ids in q.filters.items() if term_ids}

    result_set = base
    for selected in facet_sets.values():
        result_set = result_set & selected

    # counts per facet over the result set with that facet's filter excluded
    facet_counts: dict[VocabularyKind, dict[str, int]] = {}
    for kind in VocabularyKind:
        others = base
        for other_kind, selected in facet_sets.items():
            if other_kind is not kind:
                others = others & selected
        counts = {}
        for term_id, bitmap in index.facet_bitmaps[kind].items():
            n = len(bitmap & others)
            if n:
                counts[term_id] = n
        facet_counts[kind] = counts

    ordered = sorted(result_set, key=lambda doc_id: (-scores.get(doc_id, 0.0), doc_id))
    start = q.page * q.page_size
    hits = [
        Hit(doc_id, index.docs[doc_id].title, _snippet(index.docs[doc_id]),
            round(scores.get(doc_id, 0.0), 6))
        for doc_id in ordered[start:start + q.page_size]
    ]
    return SearchResult(total=len(result_set), hits=hits,
                        facet_counts=facet_counts,
                        page=q.page, page_size=q.page_size)


def percentage(count: int, total: int) -> float:
    """Share of total as a percentage with one decimal, round half up."""
    if total == 0:
        return 0.0
    value = Decimal(count) * 100 / Decimal(total)
    return float(value.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def corpus_summary(index: Index,
                   vocabularies: VocabularySet | None = None) -> dict:
    """Per-term counts and percentages for each classifier kind."""
    total = index.n_docs
    summary: dict = {"total": total, "facets": {}}
    for kind in VocabularyKind:
        rows = []
        for term_id in sorted(index.facet_bitmaps[kind],
                              key=lambda t: (-len(index.facet_bitmaps[kind][t]), t)):
            count = len(index.facet_bitmaps[kind][term_id])
            label = term_id
            if vocabularies is not None:
                term = vocabularies[kind].get(term_id)
                if term is not None:
                    label = term.label
            rows.append({"term": term_id, "label": label, "count": count,
                         "pct": percentage(count, total)})
        summary["facets"][kind.value] = rows
    return summary


def summary_table(summary: dict) -> str:
    """Aligned-column plain-text rendering of a corpus summary."""
    lines = [f"total resources: {summary['total']}"]
    for kind, rows in summary["facets"].items():
        lines.append("")
        lines.append(kind.replace("_", " "))
        if not rows:
            lines.append("  (none)")
            continue
        width = max(len(r["label"]) for r in rows)
        for r in rows:
            lines.append(f"  {r['label']:<{width}}  {r['count']:>5}  {r['pct']:>5.1f}%")
    return "\n".join(lines)
