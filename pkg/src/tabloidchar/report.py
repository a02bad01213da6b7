"""Figures for catalog verification runs."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .verify import CatalogReport  # noqa: E402


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    # fixed metadata keeps repeated renders byte-identical
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def count_agreement_figure(report: CatalogReport, path: Path) -> Path:
    """Fixed-point count against marked-tabloid count, one point per triple."""
    fig, ax = plt.subplots(figsize=(5.5, 5))
    ok = [r for r in report.reports if r.passed]
    bad = [r for r in report.reports if not r.passed]
    ax.scatter([1 + r.rhs_marked for r in ok], [1 + r.lhs for r in ok], s=8, alpha=0.5,
               color="tab:blue", label=f"pass ({len(ok)})")
    if bad:
        ax.scatter([1 + r.rhs_marked for r in bad], [1 + r.lhs for r in bad], s=20, marker="x",
                   color="tab:red", label=f"fail ({len(bad)})")
    top = max([1 + max(r.lhs, r.rhs_marked) for r in report.reports], default=2)
    ax.plot([1, top], [1, top], color="0.6", lw=0.8, zorder=0)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("1 + marked tabloid count")
    ax.set_ylabel("1 + fixed-point count")
    ax.set_title(f"catalog m <= {report.max_m}")
    ax.legend(loc="upper left", frameon=False)
    return _save(fig, path)


def coverage_figure(report: CatalogReport, path: Path) -> Path:
    """Triples checked per number of boxes, split by outcome."""
    passed, failed = defaultdict(int), defaultdict(int)
    for r in report.reports:
        (passed if r.passed else failed)[r.instance.m] += 1
    ms = sorted(set(passed) | set(failed))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(ms, [passed[m] for m in ms], color="tab:blue", label="pass")
    ax.bar(ms, [failed[m] for m in ms], bottom=[passed[m] for m in ms], color="tab:red", label="fail")
    ax.set_xlabel("m")
    ax.set_ylabel("(instance, rho, j) triples")
    ax.set_yscale("log")
    ax.set_xticks(ms)
    ax.legend(frameon=False)
    return _save(fig, path)


def runtime_figure(report: CatalogReport, path: Path) -> Path:
    total = defaultdict(float)
    for r in report.reports:
        total[r.instance.m] += r.elapsed
    ms = sorted(total)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ms, [total[m] for m in ms], marker="o")
    ax.set_xlabel("m")
    ax.set_ylabel("seconds")
    ax.set_yscale("log")
    ax.set_xticks(ms)
    ax.set_title("verification time per m")
    return _save(fig, path)


def render_catalog_figures(report: CatalogReport, outdir, include_runtime: bool = True) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = [
        count_agreement_figure(report, outdir / "count_agreement.png"),
        coverage_figure(report, outdir / "coverage.png"),
    ]
    if include_runtime:
        paths.append(runtime_figure(report, outdir / "runtime.png"))
    return paths
