"""Figures for search reports, written next to the JSON/CSV output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "figure.figsize": (7, 4.2),
    "axes.labelsize": 12,
    "axes.titlesize": 13,
    "xtick.labelsize": 10,
    "ytick.labelsize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _save(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_length_profile(counts, path, title: str = "", highlight: int | None = None) -> None:
    """Bar chart of product-one free multiset counts by length (log scale)."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        lengths = list(range(len(counts)))
        colors = ["C3" if k == highlight else "C0" for k in lengths]
        ax.bar(lengths, [max(c, 0) for c in counts], color=colors)
        ax.set_yscale("log")
        ax.set_xlabel("length |S|")
        ax.set_ylabel("product-one free multisets")
        ax.set_xticks(lengths)
        if title:
            ax.set_title(title)
        _save(fig, path)


def plot_audit(per_m: dict, path, title: str = "") -> None:
    """Checked instances and falsifications per modulus."""
    ms = sorted(int(m) for m in per_m)
    checked = [per_m[m if m in per_m else str(m)]["checked"] for m in ms]
    bad = [per_m[m if m in per_m else str(m)]["falsifications"] for m in ms]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.bar(ms, checked, color="C0", label="checked")
        ax.bar(ms, bad, color="C3", label="falsified")
        ax.set_xlabel("m")
        ax.set_ylabel("sequences")
        ax.set_xticks(ms)
        ax.legend(frameon=False)
        if title:
            ax.set_title(title)
        _save(fig, path)
