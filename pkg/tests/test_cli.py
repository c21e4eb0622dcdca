import json

import pytest
from click.testing import CliRunner

from oerdex.cli import main
from tests.conftest import SEED_CSV, VOCAB_DIR


@pytest.fixture()
def runner():
    return CliRunner()


def base_args(tmp_path):
    return ["--data-dir", str(tmp_path / "data"), "--vocab-dir", str(VOCAB_DIR)]


def test_validate_empty_sheet(runner, tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    result = runner.invoke(main, base_args(tmp_path) + ["validate", str(empty)])
    assert result.exit_code == 0
    assert "0 accepted, 0 rejected" in result.output


def test_validate_missing_file_exits_2(runner, tmp_path):
    result = runner.invoke(main, base_args(tmp_path) + ["validate", "nope.csv"])
    assert result.exit_code == 2


def test_validate_does_not_mutate(runner, tmp_path):
    runner.invoke(main, base_args(tmp_path) + ["validate", str(SEED_CSV)])
    result = runner.invoke(main,
                           base_args(tmp_path) + ["--json", "stats"])
    assert json.loads(result.output)["total"] == 0


def test_ingest_then_stats(runner, tmp_path):
    args = base_args(tmp_path)
    result = runner.invoke(main, args + ["ingest", str(SEED_CSV)])
    assert result.exit_code == 0, result.output
    assert "405 created" in result.output

    stats = runner.invoke(main, args + ["stats"])
    assert stats.exit_code == 0
    assert any(line.split() == ["bachelor", "172", "42.5%"]
               for line in stats.output.splitlines())


def test_validate_and_ingest_accept_same_rows(runner, tmp_path, vocabs):
    # shared parser: the validate report and the ingest report agree row-wise
    args = base_args(tmp_path) + ["--json"]
    validated = json.loads(runner.invoke(
        main, args + ["validate", str(SEED_CSV)]).output)
    ingested = json.loads(runner.invoke(
        main, args + ["ingest", str(SEED_CSV)]).output)
    assert validated["rows"] == ingested["validation"]["rows"]


def test_stats_json_schema(runner, tmp_path):
    args = base_args(tmp_path)
    runner.invoke(main, args + ["ingest", str(SEED_CSV)])
    result = runner.invoke(main, args + ["--json", "stats"])
    body = json.loads(result.output)
    assert body["total"] == 405
    assert set(body["facets"]) == {"resource_type", "media_type", "discipline",
                                   "target_group", "proficiency_level"}


def test_export_deterministic(runner, tmp_path):
    args = base_args(tmp_path)
    runner.invoke(main, args + ["ingest", str(SEED_CSV)])
    out1, out2 = tmp_path / "a.nt", tmp_path / "b.nt"
    assert runner.invoke(main, args + ["export", "--format", "nt",
                                       str(out1)]).exit_code == 0
    assert runner.invoke(main, args + ["export", "--format", "nt",
                                       str(out2)]).exit_code == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.stat().st_size > 0


def test_stats_report_bundle(runner, tmp_path):
    args = base_args(tmp_path)
    runner.invoke(main, args + ["ingest", str(SEED_CSV)])
    out_dir = tmp_path / "report"
    result = runner.invoke(main, args + ["stats", "--out-dir", str(out_dir)])
    assert result.exit_code == 0
    assert (out_dir / "summary.csv").exists()
    figures = sorted(p.name for p in out_dir.glob("*.png"))
    assert figures == ["discipline.png", "media_type.png",
                       "proficiency_level.png", "resource_type.png",
                       "target_group.png"]
    header = (out_dir / "summary.csv").read_text().splitlines()[0]
    assert header == "facet,term,label,count,pct"


def test_ingest_bad_rows_exit_1(runner, tmp_path):
    sheet = tmp_path / "bad.csv"
    seed_lines = SEED_CSV.read_text().splitlines()
    broken = seed_lines[1].replace(seed_lines[1].split(",")[0], '""', 1)
    sheet.write_text("\n".join([seed_lines[0], seed_lines[1], broken]))
    result = runner.invoke(main, base_args(tmp_path) + ["ingest", str(sheet)])
    assert result.exit_code == 1
