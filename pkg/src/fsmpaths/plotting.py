"""Figures for batch results, written next to the CSV."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .batch import summarize  # noqa: E402
from .pipeline import ALGORITHMS  # noqa: E402

LABELS = {
    "none": "No reduction", "random": "Random", "sorted": "Sorted", "chvatal": "Chvatal",
    "ga": "Genetic", "sa": "Annealing", "nswitch": "N-Switch",
}


def _groups(summary):
    return sorted({key[:3] for key in summary})


def bar_chart(summary, metric, ylabel, path, title=None):
    groups = _groups(summary)
    algos = [a for a in ALGORITHMS if any((*g, a) in summary for g in groups)]
    if not groups or not algos:
        return None
    x = np.arange(len(groups))
    width = 0.8 / len(algos)
    fig, ax = plt.subplots(figsize=(max(6, 2.2 * len(groups)), 4))
    cmap = plt.get_cmap("tab10")
    for k, algo in enumerate(algos):
        values = [summary.get((*g, algo), {}).get(metric, np.nan) for g in groups]
        ax.bar(x + (k - (len(algos) - 1) / 2) * width, values, width, label=LABELS.get(algo, algo), color=cmap(k))
    ax.set_xticks(x)
    ax.set_xticklabels([f"{cov}\n[{lo}, {hi}]" for cov, lo, hi in groups])
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8, ncol=min(4, len(algos)), frameon=False)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def render_batch_figures(rows, out_dir, prefix="results") -> list:
    """Mean steps, |P| and defect efficiency per algorithm and configuration; returns written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = summarize(rows)
    written = []
    for metric, ylabel in (
        ("steps", "mean steps"),
        ("path_count", "mean |P|"),
        ("eff1", "type 1 activations per step"),
        ("eff2", "type 2 activations per step"),
    ):
        p = bar_chart(summary, metric, ylabel, out_dir / f"{prefix}_{metric}.png")
        if p is not None:
            written.append(p)
    return written
