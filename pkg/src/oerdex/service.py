"""Application service: one place that wires vocabularies, graph store,
search index, and the curation queue together for the CLI and the API.

Mutations go through a single writer lock; every mutation ends by swapping
in a fresh immutable index, so readers always see a consistent snapshot
and are never blocked by writers.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from pathlib import Path

from . import curation, search
from .dif import LearningResource, parse_dif
from .kg import DEFAULT_BASE_IRI, GraphStore
from .vocab import VocabularySet

ENV_ADDR = "OERDEX_ADDR"
ENV_DATA_DIR = "OERDEX_DATA_DIR"
ENV_VOCAB_DIR = "OERDEX_VOCAB_DIR"
ENV_ADMIN_TOKEN = "OERDEX_ADMIN_TOKEN"
ENV_BASE_IRI = "OERDEX_BASE_IRI"

DEFAULT_UPLOAD_LIMIT = 8 * 1024 * 1024


@dataclass
class Config:
    addr: str = "127.0.0.1:8400"
    data_dir: Path = Path("data")
    vocab_dir: Path = Path("fixtures/vocab")
    base_iri: str = DEFAULT_BASE_IRI
    admin_token: str | None = None
    page_size_cap: int = 100
    upload_limit: int = DEFAULT_UPLOAD_LIMIT
    cors_origins: list[str] = field(default_factory=lambda: ["http://localhost:5173"])
    durable: bool = True

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        values = dict(
            addr=os.environ.get(ENV_ADDR, cls.addr),
            data_dir=Path(os.environ.get(ENV_DATA_DIR, "data")),
            vocab_dir=Path(os.environ.get(ENV_VOCAB_DIR, "fixtures/vocab")),
            base_iri=os.environ.get(ENV_BASE_IRI, DEFAULT_BASE_IRI),
            admin_token=os.environ.get(ENV_ADMIN_TOKEN),
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class Registry:
    """The running system: immutable vocabularies, one graph store, and a
    single search-index snapshot replaced atomically after each write."""

    def __init__(self, config: Config):
        self.config = config
        self.vocabularies = VocabularySet.load_dir(config.vocab_dir)
        wal_path = None
        if config.durable:
            config.data_dir.mkdir(parents=True, exist_ok=True)
            wal_path = config.data_dir / "graph.wal"
        self.store = GraphStore(base_iri=config.base_iri, wal_path=wal_path)
        self.queue = curation.CurationQueue(self.store, self.vocabularies)
        self._writer = threading.Lock()
        self._version = 0
        self.index = self._rebuild()

    def _rebuild(self) -> search.Index:
        self._version += 1
        index = search.build_index(self.store, self.vocabularies, self._version)
        self.index = index
        return index

    # -- reads (snapshot-based, never blocked by writers) -------------------

    def query(self, q: search.SearchQuery) -> search.SearchResult:
        return search.query(self.index, q)

    def stats(self) -> dict:
        return search.corpus_summary(self.index, self.vocabularies)

    def get_resource(self, resource_id: str) -> LearningResource | None:
        return self.store.get_record(resource_id)

    def export(self, fmt: str) -> bytes:
        return self.store.export(fmt)

    # -- writes -------------------------------------------------------------

    def ingest(self, path, mode: str = "strict",
               curator: str = "bulk") -> curation.IngestReport:
        with self._writer:
            report = curation.bulk_ingest(path, self.store, self.vocabularies,
                                          mode=mode, curator=curator)
            self._rebuild()
            return report

    def validate(self, path, mode: str = "strict"):
        # read-only twin of ingest: same parser, no store writes
        return parse_dif(path, self.vocabularies, mode)

    def submit(self, payload: LearningResource, submitter: str):
        with self._writer:
            return self.queue.submit(payload, submitter)

    def review(self, submission_id: str, decision: str, reviewer: str,
               notes: str = ""):
        with self._writer:
            result = self.queue.review(
                submission_id, decision, reviewer, notes,
                on_approve=lambda _resource: self._rebuild())
            return result
