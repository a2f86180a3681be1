"""Summary figures rendered next to a report.

Everything is derived from the report dict, so figure content is as
deterministic as the report itself.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata={"Software": None})
    plt.close(fig)
    return path


def suite_overview_figure(report: dict, outdir: Path) -> Path:
    names = [s["suite"] for s in report["suites"]]
    pairs = [len(s["rows"]) for s in report["suites"]]
    violations = [len(s["counterexamples"]) for s in report["suites"]]
    fig, ax = plt.subplots(figsize=(max(6, 1.1 * len(names)), 4))
    x = range(len(names))
    ax.bar(x, pairs, color="#4878a8", label="instance rows")
    ax.bar(x, violations, color="#c44e52", label="counterexamples")
    ax.set_xticks(list(x))
    ax.set_xticklabels(names, rotation=30, ha="right")
    ax.set_ylabel("count")
    ax.set_title(f"suite overview — verdict {report['verdict']}")
    ax.legend()
    return _save(fig, outdir / "suite_overview.png")


def _hist_figure(hist: dict[str, int], title: str, xlabel: str, path: Path) -> Path:
    keys = sorted(hist, key=int)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(keys)), [hist[k] for k in keys], color="#6acc64")
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("instances")
    ax.set_title(title)
    return _save(fig, path)


def render_figures(report: dict, outdir: str | Path) -> list[Path]:
    """Write the overview figure plus per-suite histograms; returns paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = [suite_overview_figure(report, out)]
    for suite in report["suites"]:
        summary = suite.get("summary", {})
        hist = summary.get("loop_order_hist")
        if hist:
            written.append(
                _hist_figure(hist, f"{suite['suite']}: induced loop orders",
                             "loop order", out / f"{suite['suite']}_loop_orders.png")
            )
        hist = summary.get("torsion_order_hist")
        if hist:
            written.append(
                _hist_figure(hist, f"{suite['suite']}: torsion group orders",
                             "torsion order", out / f"{suite['suite']}_torsion_orders.png")
            )
    return written
