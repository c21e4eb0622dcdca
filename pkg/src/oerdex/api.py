"""HTTP JSON API over the registry service.

All errors use one envelope: ``{"code", "message", "details"}``.  Admin
routes (review, bulk ingest) require a static bearer token from the
environment; GET routes are side-effect-free.
"""

from __future__ import annotations

import tempfile
from pathlib import Path

from fastapi import FastAPI, File, Header, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from . import search
from .dif import UUID_RE
from .errors import (FileMissing, HeaderMismatch, NotPending, OerdexError,
                     UnknownFacetTerm, UnknownSubmission, ValidationFailed)
from .kg import resource_to_json
from .service import Registry
from .vocab import VocabularyKind


def _error(status: int, code: str, message: str, details: dict | None = None):
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "details": details or {}},
    )


def _parse_facets(raw_facets: list[str], registry: Registry):
    filters: dict[VocabularyKind, set[str]] = {}
    for item in raw_facets:
        kind_name, sep, value = item.partition(":")
        if not sep or not value:
            raise ValueError(f"facet {item!r} is not kind:term")
        try:
            kind = VocabularyKind(kind_name)
        except ValueError:
            raise ValueError(f"unknown facet kind {kind_name!r}") from None
        term = registry.vocabularies.resolve(value, kind)
        filters.setdefault(kind, set()).add(term.id)
    return filters


def create_app(registry: Registry) -> FastAPI:
    app = FastAPI(title="oerdex", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=registry.config.cors_origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def require_admin(authorization: str | None):
        token = registry.config.admin_token
        if not token:
            return _error(401, "UNAUTHORIZED", "admin token not configured")
        if authorization != f"Bearer {token}":
            return _error(401, "UNAUTHORIZED", "missing or invalid bearer token")
        return None

    @app.get("/items/{item_id}")
    def get_item(item_id: str):
        if not UUID_RE.match(item_id):
            return _error(400, "MALFORMED_ID", f"{item_id!r} is not a UUID")
        resource = registry.get_resource(item_id)
        if resource is None:
            return _error(404, "NOT_FOUND", f"no resource {item_id}")
        payload = resource_to_json(resource)
        labels = {}
        for kind in VocabularyKind:
            resolved = []
            for term_id in resource.classifier_ids(kind):
                term = registry.vocabularies[kind].get(term_id)
                resolved.append({"id": term_id,
                                 "label": term.label if term else term_id})
            labels[kind.value] = resolved
        payload["classifier_labels"] = labels
        payload["revision"] = registry.store.provenance[item_id]["revision"]
        return payload

    @app.get("/search")
    def run_search(request: Request, q: str | None = None, page: int = 0,
                   page_size: int = 10, language: str | None = None,
                   license: str | None = None):
        raw_facets = request.query_params.getlist("facets")
        try:
            filters = _parse_facets(raw_facets, registry)
        except (ValueError, OerdexError) as exc:
            detail = exc.to_json() if isinstance(exc, OerdexError) else {}
            return _error(400, "BAD_FACET", str(exc), detail.get("details"))
        try:
            result = registry.query(search.SearchQuery(
                text=q, filters=filters, language=language, license=license,
                page=page, page_size=min(page_size, registry.config.page_size_cap),
            ))
        except UnknownFacetTerm as exc:
            return _error(400, exc.code, exc.message, exc.details)
        except ValueError as exc:
            return _error(400, "BAD_REQUEST", str(exc))
        return result.to_json()

    @app.get("/stats")
    def stats():
        return registry.stats()

    @app.get("/vocabularies")
    def vocabularies():
        payload = {}
        for kind in VocabularyKind:
            vocab = registry.vocabularies[kind]
            payload[kind.value] = [
                {"id": t.id, "label": t.label, "parent": t.parent_id,
                 "aliases": list(t.aliases)}
                for t in vocab.terms
            ]
        return payload

    @app.get("/export")
    def export(format: str = "nt"):
        if format not in ("nt", "ttl", "json"):
            return _error(400, "BAD_FORMAT", f"unknown format {format!r}")
        media = {"nt": "application/n-triples", "ttl": "text/turtle",
                 "json": "application/json"}[format]
        return Response(content=registry.export(format), media_type=media)

    @app.post("/submissions", status_code=201)
    def create_submission(body: dict):
        from .kg import resource_from_json
        submitter = body.get("submitter", "anonymous")
        payload = dict(body.get("record") or body)
        payload.pop("submitter", None)
        try:
            if not payload.get("id"):
                from .dif import mint_id
                payload["id"] = mint_id(payload.get("url", ""))
            resource = resource_from_json(payload)
            submission = registry.submit(resource, submitter)
        except ValidationFailed as exc:
            return _error(422, exc.code, exc.message,
                          {"messages": exc.details["messages"]})
        except (KeyError, TypeError, ValueError, OerdexError) as exc:
            return _error(422, "INVALID_PAYLOAD", f"malformed submission: {exc}")
        return submission.to_json()

    @app.post("/submissions/{submission_id}/review")
    def review_submission(submission_id: str, body: dict,
                          authorization: str | None = Header(default=None)):
        denied = require_admin(authorization)
        if denied:
            return denied
        try:
            submission = registry.review(
                submission_id,
                decision=body.get("decision", ""),
                reviewer=body.get("reviewer", "admin"),
                notes=body.get("notes", ""),
            )
        except UnknownSubmission as exc:
            return _error(404, exc.code, exc.message, exc.details)
        except NotPending as exc:
            return _error(409, exc.code, exc.message, exc.details)
        except ValueError as exc:
            return _error(400, "BAD_REQUEST", str(exc))
        return submission.to_json()

    @app.post("/ingest")
    async def ingest(file: UploadFile = File(...), mode: str = "strict",
                     authorization: str | None = Header(default=None)):
        denied = require_admin(authorization)
        if denied:
            return denied
        data = await file.read()
        if len(data) > registry.config.upload_limit:
            return _error(413, "PAYLOAD_TOO_LARGE",
                          f"upload exceeds {registry.config.upload_limit} bytes")
        with tempfile.NamedTemporaryFile(suffix=".csv", delete=False) as tmp:
            tmp.write(data)
            tmp_path = Path(tmp.name)
        try:
            report = registry.ingest(tmp_path, mode=mode, curator="api")
        except HeaderMismatch as exc:
            return _error(400, exc.code, exc.message, exc.details)
        except FileMissing as exc:
            return _error(400, exc.code, exc.message, exc.details)
        finally:
            tmp_path.unlink(missing_ok=True)
        return report.to_json()

    return app
