"""Figures for the CLI report paths: line diagrams and enumeration growth."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .detform import build_graph, heights  # noqa: E402
from .kostant import KostantPicture  # noqa: E402

STYLE = {
    "figure.dpi": 100,
    "savefig.dpi": 150,
    "font.size": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def plot_line_diagram(p: KostantPicture, path: str, show_edges: bool = True) -> str:
    """Draw each loop as a bar over its columns at its line-diagram height.

    Graph edges are drawn as dashed segments between the loop midpoints.
    """
    diag = heights(p)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(1.0 + 0.8 * p.n, 1.5 + 0.5 * max([1] + [max(h.values()) for h in diag.heights])))
        mids = []
        for a, loop in enumerate(p.loops):
            h = diag.heights[a]
            xs = list(range(loop.left, loop.right + 1))
            # small per-loop offset keeps equal-height loops apart
            off = 0.08 * (a - (len(p) - 1) / 2)
            ys = [h[c] + off for c in xs]
            ax.plot(xs, ys, marker="o", lw=2, label=str(loop))
            mids.append(((loop.left + loop.right) / 2, sum(ys) / len(ys)))
        if show_edges and len(p):
            g = build_graph(p)
            for a, b in g.edges:
                (x0, y0), (x1, y1) = mids[a], mids[b]
                ax.plot([x0, x1], [y0, y1], ls="--", lw=1, color="grey")
        ax.set_xticks(range(1, p.n + 1))
        ax.set_xlim(0.5, p.n + 0.5)
        ax.set_ylim(0, None)
        ax.set_xlabel("column")
        ax.set_ylabel("height")
        if len(p):
            ax.legend(fontsize=8, frameon=False, loc="upper left", bbox_to_anchor=(1, 1))
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def plot_growth(history, path: str, title: str | None = None) -> str:
    """Seeds and distinct cluster variables against BFS depth, log scale for seeds."""
    depths = [d for d, _, _ in history]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5, 3.2))
        ax.plot(depths, [s for _, s, _ in history], marker="o", label="seeds")
        ax.plot(depths, [v for _, _, v in history], marker="s", label="cluster variables")
        ax.set_yscale("log")
        ax.set_xlabel("mutation depth")
        ax.set_ylabel("count")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
