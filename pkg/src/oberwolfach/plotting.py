"""Figures written to files: factor circle diagrams and the bound tables."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .core import Decomposition, Infinity, StructuredGraph, vertex_key  # noqa: E402


def _layout(vertices) -> dict:
    finite = sorted((v for v in vertices if not isinstance(v, Infinity)), key=vertex_key)
    inf = sorted((v for v in vertices if isinstance(v, Infinity)), key=vertex_key)
    pos = {}
    n = max(len(finite), 1)
    for i, v in enumerate(finite):
        t = math.pi / 2 - 2 * math.pi * i / n
        pos[v] = (math.cos(t), math.sin(t))
    for j, v in enumerate(inf):
        pos[v] = (0.25 * (2 * j - len(inf) + 1), 0.0)
    return pos


def draw_factor(ax, g: StructuredGraph, title: str = "", labels: bool = True) -> None:
    """Vertices on a circle, infinities in the middle, one colour per component."""
    pos = _layout(g.vertices)
    cycles, paths = g.components()
    cmap = plt.get_cmap("tab10")
    for ci, comp in enumerate(cycles + [p for p in paths if len(p) > 1]):
        closed = ci < len(cycles)
        seq = comp + [comp[0]] if closed else comp
        xs = [pos[v][0] for v in seq]
        ys = [pos[v][1] for v in seq]
        ax.plot(xs, ys, color=cmap(ci % 10), linewidth=1.2, linestyle="-" if closed else "--")
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    ax.scatter(xs, ys, s=12, color="k", zorder=3)
    if labels and len(pos) <= 40:
        for v, (x, y) in pos.items():
            ax.annotate(str(v), (x * 1.12, y * 1.12) if not isinstance(v, Infinity) else (x, y - 0.12),
                        ha="center", va="center", fontsize=7)
    ax.set_xlim(-1.25, 1.25)
    ax.set_ylim(-1.25, 1.25)
    ax.set_aspect("equal")
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=9)


def plot_factor(g: StructuredGraph, path: str | Path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(4, 4))
    draw_factor(ax, g, title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return Path(path)


def plot_decomposition(d: Decomposition, path: str | Path, max_factors: int = 16) -> Path:
    """Grid of the first ``max_factors`` factors."""
    shown = d.factors[:max_factors]
    cols = min(4, max(len(shown), 1))
    rows = max(1, math.ceil(len(shown) / cols))
    fig, axes = plt.subplots(rows, cols, figsize=(3 * cols, 3 * rows), squeeze=False)
    for i, ax in enumerate(axes.flat):
        if i < len(shown):
            draw_factor(ax, shown[i], f"factor {i}", labels=d.order <= 24)
        else:
            ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return Path(path)


def plot_bound_tables(tables: Sequence[Sequence[tuple[int, int, int]]], path: str | Path) -> Path:
    """y0 against (l1, l2), one bar group per table, log scale."""
    fig, axes = plt.subplots(1, len(tables), figsize=(5 * len(tables), 4), squeeze=False)
    for t, (ax, rows) in enumerate(zip(axes.flat, tables), start=1):
        names = [f"{l1},{l2}" for _, l1, l2 in rows]
        ax.bar(range(len(rows)), [y for y, _, _ in rows], color="0.4")
        ax.set_xticks(range(len(rows)))
        ax.set_xticklabels(names, rotation=60, fontsize=7)
        ax.set_yscale("log")
        ax.set_ylabel("y0")
        ax.set_title(f"table {t}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return Path(path)
