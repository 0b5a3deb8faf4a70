"""Figure rendering for the report-style CLI subcommands.

Objections have no numeric degree, so figures chart their coverage: the
share of objection-language assignments a sentence admits (0 means no
objection, 1 means rejected).  Probabilities are charted as-is.  Figures are
written straight to files with the Agg backend; nothing here opens a window.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def coverage(mask: int, world_count: int) -> float:
    """Share of assignments a truth-table mask admits."""
    return mask.bit_count() / world_count


def world_table_figure(
    labels: Sequence[str],
    coverages: Sequence[float] | None,
    probabilities: Sequence[float] | None,
    path: str | Path,
) -> None:
    """Horizontal bars per world: objection coverage and/or probability."""
    plt = _pyplot()
    panels = [
        ("objection coverage", coverages, "#9467bd"),
        ("probability", probabilities, "#1f77b4"),
    ]
    panels = [p for p in panels if p[1] is not None]
    positions = range(len(labels))
    height = max(2.0, 0.28 * len(labels) + 1.2)
    fig, axes = plt.subplots(
        1, len(panels), figsize=(4.5 * len(panels) + 1.5, height), sharey=True
    )
    if len(panels) == 1:
        axes = [axes]
    for axis, (title, values, color) in zip(axes, panels):
        axis.barh(positions, list(values), color=color)
        axis.set_xlim(0, 1)
        axis.set_xlabel(title)
        axis.invert_yaxis()
    axes[0].set_yticks(list(positions))
    axes[0].set_yticklabels(labels, fontsize=7, family="monospace")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def markov_figure(counts_by_node: dict[str, dict[str, int]], path: str | Path) -> None:
    """Stacked verified/vacuous/violated counts per node."""
    plt = _pyplot()
    nodes = list(counts_by_node)
    statuses = [("verified", "#2ca02c"), ("vacuous", "#7f7f7f"), ("violated", "#d62728")]
    fig, axis = plt.subplots(figsize=(1.2 * len(nodes) + 2.5, 3.2))
    bottoms = [0] * len(nodes)
    for status, color in statuses:
        values = [counts_by_node[n].get(status, 0) for n in nodes]
        axis.bar(nodes, values, bottom=bottoms, label=status, color=color)
        bottoms = [b + v for b, v in zip(bottoms, values)]
    axis.set_ylabel("irrelevance checks")
    axis.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def comparison_figure(
    labels: Sequence[str],
    coverages: Sequence[float],
    probabilities: Sequence[float],
    path: str | Path,
) -> None:
    """Scatter of per-world probability against objection coverage."""
    plt = _pyplot()
    fig, axis = plt.subplots(figsize=(4.8, 4.4))
    axis.scatter(probabilities, coverages, s=24, color="#1f77b4", alpha=0.8)
    axis.set_xlabel("world probability")
    axis.set_ylabel("objection coverage")
    axis.set_xlim(-0.02, max(1.0, max(probabilities, default=1.0)) + 0.02)
    axis.set_ylim(-0.02, 1.02)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
