"""Delimited and graphical output for check suites and patch reports.

CSV files carry the same rows the command line prints; figures are rendered
headlessly so the report path works in scripts and CI.
"""

from __future__ import annotations

import csv
from typing import Sequence

from .steinfarley import PatchReport
from .verification import CheckResult

__all__ = [
    "render_check_figure",
    "render_homology_figure",
    "render_patch_figure",
    "write_check_csv",
    "write_patch_csv",
]


def write_check_csv(rows: Sequence[CheckResult], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "name", "passed", "detail"])
        for row in rows:
            writer.writerow([row.suite, row.name, "pass" if row.passed else "fail", row.detail])


def write_patch_csv(report: PatchReport, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["field", "value"])
        for key, value in report.to_json().items():
            writer.writerow([key, value])


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_check_figure(rows: Sequence[CheckResult], path: str) -> None:
    """Stacked pass/fail counts per suite."""
    plt = _pyplot()
    suites: list[str] = []
    for row in rows:
        if row.suite not in suites:
            suites.append(row.suite)
    passed = [sum(1 for r in rows if r.suite == s and r.passed) for s in suites]
    failed = [sum(1 for r in rows if r.suite == s and not r.passed) for s in suites]
    fig, ax = plt.subplots(figsize=(8, 0.4 * len(suites) + 1.5))
    ax.barh(suites, passed, color="tab:green", label="pass")
    ax.barh(suites, failed, left=passed, color="tab:red", label="fail")
    ax.set_xlabel("checks")
    ax.invert_yaxis()
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_patch_figure(report: PatchReport, path: str) -> None:
    """Headline counts of a patch report as one bar chart."""
    plt = _pyplot()
    data = report.to_json()
    keys = [
        "vertex_count",
        "testable_count",
        "untestable_count",
        "subcomplex_count",
        "flag_failures",
        "fullness_failures",
    ]
    labels = [k.replace("_", " ") for k in keys]
    values = [data[k] for k in keys]
    colors = ["tab:blue"] * 4 + ["tab:red"] * 2
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar(labels, values, color=colors)
    ax.set_ylabel("vertices")
    ax.set_title(f"patch report, braid bound {report.braid_bound}")
    for tick in ax.get_xticklabels():
        tick.set_rotation(20)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_homology_figure(
    hom: Sequence[tuple[int, list[int]]], path: str, title: str = "reduced homology"
) -> None:
    """Betti numbers per degree, torsion annotated above the bars."""
    plt = _pyplot()
    degrees = list(range(len(hom)))
    betti = [b for b, _ in hom]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([f"H{d}" for d in degrees], betti, color="tab:blue")
    for d, (b, torsion) in enumerate(hom):
        if torsion:
            text = " + ".join(f"Z/{t}" for t in torsion)
            ax.annotate(text, (d, b), ha="center", va="bottom")
    ax.set_ylabel("rank")
    ax.set_title(title)
    ax.yaxis.get_major_locator().set_params(integer=True)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
