"""Figures for CLI reports, rendered off-screen with matplotlib."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .chains import FINITE  # noqa: E402
from .ordinal import format_ordinal, successor  # noqa: E402


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def plot_series_orders(series_list, path):
    """Subgroup order against index for finite series, one line each."""
    fig, ax = plt.subplots(figsize=(6, 3.6))
    for s in series_list:
        orders = [H.order for H in s.subgroups]
        ax.plot(range(1, len(orders) + 1), orders, marker="o", label=s.name)
    ax.set_yscale("log", base=2)
    ax.set_xlabel("index")
    ax.set_ylabel("subgroup order")
    ax.legend(fontsize="small")
    _save(fig, path)


def plot_refinement_grid(result, path):
    """Class labels of both double-indexed families as two heat maps."""
    fig, axes = plt.subplots(1, 2, figsize=(8, 3.6))
    for ax, q, title in ((axes[0], result.first_quotient, "first family"),
                         (axes[1], result.second_quotient, "second family")):
        rows = int(q.order.major_bound) - 1
        cols = int(q.order.minor_bound)
        grid = [[int(q.label((i, j))) for j in range(1, cols + 1)] for i in range(1, rows + 1)]
        ax.imshow(grid, cmap="viridis", origin="lower", aspect="auto",
                  extent=(0.5, cols + 0.5, 0.5, rows + 0.5))
        for i, row in enumerate(grid, start=1):
            for j, label in enumerate(row, start=1):
                ax.text(j, i, str(label), ha="center", va="center", color="white", fontsize=8)
        ax.set_xticks(range(1, cols + 1))
        ax.set_yticks(range(1, rows + 1))
        ax.set_title(title)
        ax.set_xlabel("minor index")
        ax.set_ylabel("major index")
    _save(fig, path)


def plot_tower_entries(series_list, indices, path):
    """Position entering at each sampled index, per series."""
    fig, ax = plt.subplots(figsize=(6.5, 3.8))
    ticks = []
    for k, s in enumerate(series_list):
        xs, ys = [], []
        for n, a in enumerate(indices):
            if a >= s.top:
                continue
            step = s.subgroup_at(successor(a)) - s.subgroup_at(a)
            xs.append(n)
            ys.append(format_ordinal(step.min()) if step else "-")
        ax.plot(xs, ys, marker="o", linestyle="none", label=s.name, alpha=0.8,
                markersize=7 - 2 * k)
        ticks = [format_ordinal(a) for a in indices]
    ax.set_xticks(range(len(ticks)))
    ax.set_xticklabels(ticks, rotation=60, fontsize=7)
    ax.set_xlabel("index")
    ax.set_ylabel("entering position")
    ax.legend(fontsize="small")
    _save(fig, path)


def plot_series(series_list, path, indices=None):
    if series_list and series_list[0].backend == FINITE:
        plot_series_orders(series_list, path)
    else:
        plot_tower_entries(series_list, indices or [], path)


def plot_butterfly(z, path):
    """Orders of the groups in a Zassenhaus configuration."""
    names = ["lower1", "upper1", "lower2", "upper2"]
    orders = [getattr(z, n).order for n in names]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(names, orders, color=["#7a9", "#396", "#a97", "#963"])
    ax.set_ylabel("order")
    ax.set_title(f"both wings give {z.descriptor.name}")
    _save(fig, path)
