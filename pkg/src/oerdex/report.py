"""Corpus-statistics report: delimited output plus rendered figures.

Given a corpus summary, writes one CSV of per-term counts and one bar
chart per classifier kind, mirroring the kind of per-facet breakdown the
stats command prints.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

BAR_COLOR = "#33658a"


def write_summary_csv(summary: dict, path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["facet", "term", "label", "count", "pct"])
        for kind, rows in summary["facets"].items():
            for row in rows:
                writer.writerow([kind, row["term"], row["label"],
                                 row["count"], row["pct"]])
    return path


def render_facet_figures(summary: dict, out_dir: str | Path,
                         fmt: str = "png") -> list[Path]:
    """One horizontal bar chart per classifier kind; returns written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    total = summary["total"]
    for kind, rows in summary["facets"].items():
        if not rows:
            continue
        labels = [r["label"] for r in rows][::-1]
        counts = [r["count"] for r in rows][::-1]
        fig, ax = plt.subplots(figsize=(7, max(2.0, 0.4 * len(rows) + 1)))
        ax.barh(labels, counts, color=BAR_COLOR)
        ax.set_xlabel("resources")
        ax.set_title(f"{kind.replace('_', ' ')} (n = {total})")
        for i, (count, row) in enumerate(zip(counts, rows[::-1])):
            ax.text(count, i, f" {count} ({row['pct']:.1f}%)",
                    va="center", fontsize=8)
        ax.margins(x=0.15)
        fig.tight_layout()
        path = out_dir / f"{kind}.{fmt}"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written


def write_report(summary: dict, out_dir: str | Path) -> dict:
    """Full report bundle: summary CSV alongside the per-facet figures."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_summary_csv(summary, out_dir / "summary.csv")
    figures = render_facet_figures(summary, out_dir)
    return {"csv": csv_path, "figures": figures}
