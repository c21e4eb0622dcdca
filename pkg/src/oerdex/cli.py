"""Administrative command line: validate, ingest, export, stats, serve.

Exit codes: 0 success, 1 validation errors present, 2 usage or IO failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import report as report_mod
from . import search, seedgen
from .errors import OerdexError
from .service import Config, Registry


def _registry(ctx) -> Registry:
    if ctx.obj.get("registry") is None:
        ctx.obj["registry"] = Registry(ctx.obj["config"])
    return ctx.obj["registry"]


@click.group()
@click.option("--data-dir", type=click.Path(path_type=Path), default=None,
              help="Directory for the write-ahead log.")
@click.option("--vocab-dir", type=click.Path(path_type=Path), default=None,
              help="Directory holding the <kind>.tsv vocabulary files.")
@click.option("--base-iri", default=None, help="Base IRI for item subjects.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.pass_context
def main(ctx, data_dir, vocab_dir, base_iri, as_json):
    ctx.ensure_object(dict)
    ctx.obj["config"] = Config.from_env(
        data_dir=data_dir, vocab_dir=vocab_dir, base_iri=base_iri)
    ctx.obj["json"] = as_json


def _echo_report(report, as_json):
    if as_json:
        click.echo(json.dumps(report.to_json(), indent=2))
        return
    for row in (report.row_results if hasattr(report, "row_results")
                else report.validation.row_results):
        if row.outcome == "Accepted":
            continue
        click.echo(f"row {row.row}: {row.outcome}")
        for m in row.messages:
            click.echo(f"  [{m.severity}] {m.code} ({m.fieldname}): {m.detail}")


@main.command()
@click.argument("sheet", type=click.Path(path_type=Path))
@click.option("--strict/--lenient", "strict", default=True)
@click.pass_context
def validate(ctx, sheet, strict):
    """Validate a curation sheet without touching the store."""
    try:
        result = _registry(ctx).validate(sheet, "strict" if strict else "lenient")
    except OerdexError as exc:
        click.echo(f"error: {exc.message}", err=True)
        sys.exit(2)
    _echo_report(result, ctx.obj["json"])
    if not ctx.obj["json"]:
        click.echo(f"{result.accepted_count} accepted, "
                   f"{result.rejected_count} rejected")
    sys.exit(1 if result.rejected_count else 0)


@main.command()
@click.argument("sheet", type=click.Path(path_type=Path))
@click.option("--strict/--lenient", "strict", default=True)
@click.option("--curator", default="cli")
@click.pass_context
def ingest(ctx, sheet, strict, curator):
    """Bulk-ingest a curation sheet into the knowledge graph."""
    try:
        result = _registry(ctx).ingest(sheet, "strict" if strict else "lenient",
                                       curator=curator)
    except OerdexError as exc:
        click.echo(f"error: {exc.message}", err=True)
        sys.exit(2)
    _echo_report(result, ctx.obj["json"])
    if not ctx.obj["json"]:
        click.echo(f"{result.created} created, {result.updated} updated, "
                   f"{result.skipped} skipped")
    sys.exit(1 if result.skipped else 0)


@main.command()
@click.option("--format", "fmt", type=click.Choice(["nt", "ttl", "json"]),
              default="nt")
@click.argument("out", type=click.Path(path_type=Path), required=False)
@click.pass_context
def export(ctx, fmt, out):
    """Dump the graph as N-Triples, Turtle, or JSON."""
    try:
        data = _registry(ctx).export(fmt)
    except OerdexError as exc:
        click.echo(f"error: {exc.message}", err=True)
        sys.exit(2)
    if out is None:
        sys.stdout.buffer.write(data)
    else:
        out.write_bytes(data)


@main.command()
@click.option("--out-dir", type=click.Path(path_type=Path), default=None,
              help="Also write summary.csv and per-facet figures here.")
@click.pass_context
def stats(ctx, out_dir):
    """Print per-classifier counts and percentages for the corpus."""
    registry = _registry(ctx)
    summary = registry.stats()
    if ctx.obj["json"]:
        click.echo(json.dumps(summary, indent=2))
    else:
        click.echo(search.summary_table(summary))
    if out_dir is not None:
        written = report_mod.write_report(summary, out_dir)
        if not ctx.obj["json"]:
            click.echo(f"\nwrote {written['csv']} and "
                       f"{len(written['figures'])} figures")


@main.command()
@click.option("--addr", default=None, help="host:port to bind.")
@click.option("--admin-token", default=None)
@click.pass_context
def serve(ctx, addr, admin_token):
    """Run the HTTP API."""
    import uvicorn

    from .api import create_app

    config = ctx.obj["config"]
    if addr:
        config.addr = addr
    if admin_token:
        config.admin_token = admin_token
    host, _, port = config.addr.partition(":")
    app = create_app(Registry(config))
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8400))


@main.command("generate-seed")
@click.argument("out", type=click.Path(path_type=Path))
@click.option("--seed", default=42, show_default=True)
def generate_seed_cmd(out, seed):
    """Regenerate the fixture corpus sheet."""
    seedgen.write_seed(out, seed)
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
