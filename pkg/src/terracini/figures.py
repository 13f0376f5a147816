"""Figure rendering for reports.

Two figures cover the reporting surface: a verdict grid for suite runs
(one panel per ambient dimension, twist against cardinality, colored by
cell status) and a cohomology profile for single-input checks (h0 and h1
of the double scheme across twists, with the queried twist marked).
Both are rendered headless and written next to the delimited report.
"""

from __future__ import annotations

from collections import defaultdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Patch

STATUS_COLORS = {
    "member_verified": "#2a9d54",
    "empty_as_expected": "#44749d",
    "property_holds": "#7fb069",
    "out_of_range_noted": "#c9b458",
    "counterexample": "#c23b3b",
    "pending": "#999999",
}


def render_suite_grid(report, path: str) -> str:
    """Write the verdict-grid PNG for a suite report; returns the path."""
    groups: dict[object, list] = defaultdict(list)
    for cell in report.cells:
        key = cell.cell.get("n", cell.cell.get("family", "all"))
        groups[key].append(cell)
    keys = sorted(groups, key=str)
    fig, axes = plt.subplots(
        1, len(keys), figsize=(4.2 * len(keys) + 1.2, 4.0), squeeze=False
    )
    for ax, key in zip(axes[0], keys):
        cells = groups[key]
        ds = sorted({c.cell.get("d", 0) for c in cells})
        ys = sorted({_ylabel(c) for c in cells}, key=str)
        for cell in cells:
            ci = ds.index(cell.cell.get("d", 0))
            ri = ys.index(_ylabel(cell))
            color = STATUS_COLORS.get(cell.status, "#999999")
            ax.add_patch(
                plt.Rectangle((ci, ri), 0.92, 0.92, color=color, alpha=0.9)
            )
            if cell.counterexamples:
                ax.text(
                    ci + 0.46, ri + 0.46, "!",
                    ha="center", va="center", fontsize=12, color="white",
                )
        ax.set_xlim(-0.2, len(ds))
        ax.set_ylim(-0.2, len(ys))
        ax.set_xticks([i + 0.46 for i in range(len(ds))])
        ax.set_xticklabels([str(d) for d in ds], fontsize=8)
        ax.set_yticks([i + 0.46 for i in range(len(ys))])
        ax.set_yticklabels([str(y) for y in ys], fontsize=8)
        ax.set_xlabel("twist d")
        ax.set_ylabel("cardinality / cell")
        ax.set_title(f"group {key}", fontsize=10)
    used = {c.status for c in report.cells}
    fig.legend(
        handles=[
            Patch(color=color, label=status)
            for status, color in STATUS_COLORS.items()
            if status in used
        ],
        loc="lower center",
        ncol=min(4, max(1, len(used))),
        fontsize=8,
        frameon=False,
    )
    fig.suptitle(
        f"suite {report.suite}: "
        + ("pass" if report.passed else "COUNTEREXAMPLE"),
        fontsize=11,
    )
    fig.tight_layout(rect=(0, 0.08, 1, 0.95))
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _ylabel(cell) -> object:
    if "x" in cell.cell:
        return cell.cell["x"]
    return cell.cell.get("kind", "cell")


def render_cohomology_profile(reports, d: int, path: str, title: str) -> str:
    """Write the h0/h1-versus-twist PNG; returns the path."""
    twists = [r.d for r in reports]
    h0s = [r.h0 for r in reports]
    h1s = [r.h1 for r in reports]
    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    ax.plot(twists, h0s, marker="o", label="h0", color="#44749d")
    ax.plot(twists, h1s, marker="s", label="h1", color="#c23b3b")
    ax.axvline(d, color="#666666", linestyle=":", linewidth=1)
    ax.set_xlabel("twist")
    ax.set_ylabel("dimension")
    ax.set_title(title, fontsize=10)
    ax.set_yscale("symlog")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
