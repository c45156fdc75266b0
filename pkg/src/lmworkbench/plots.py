"""Hasse diagrams rendered to PNG with the Agg backend."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def covers(leq) -> list:
    k = len(leq)
    out = []
    for a in range(k):
        for b in range(k):
            if a != b and leq[a][b] and not any(
                    c not in (a, b) and leq[a][c] and leq[c][b] for c in range(k)):
                out.append((a, b))
    return out


def ranks(leq) -> list:
    """Length of the longest chain below each element."""
    k = len(leq)
    order = sorted(range(k), key=lambda x: sum(leq[y][x] for y in range(k)))
    rank = [0] * k
    for x in order:
        below = [y for y in range(k) if y != x and leq[y][x]]
        rank[x] = 1 + max((rank[y] for y in below), default=-1)
    return rank


def hasse(leq, labels, path, title: str = "", colors=None) -> Path:
    """Draw the order ``leq`` and save it; returns the written path."""
    k = len(leq)
    rank = ranks(leq)
    levels = {}
    for x in range(k):
        levels.setdefault(rank[x], []).append(x)
    pos = {}
    for r, xs in levels.items():
        for t, x in enumerate(xs):
            pos[x] = (t - (len(xs) - 1) / 2, r)
    width = max(len(xs) for xs in levels.values())
    fig, ax = plt.subplots(figsize=(max(3.0, 1.4 * width), max(2.5, 1.1 * len(levels))))
    for a, b in covers(leq):
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.45", lw=1, zorder=1)
    for x in range(k):
        c = colors[x] if colors else "white"
        ax.scatter(*pos[x], s=120, color=c, edgecolors="black", zorder=2)
        ax.annotate(labels[x], pos[x], xytext=(6, 4), textcoords="offset points", fontsize=8)
    ax.set_title(title, fontsize=10)
    ax.axis("off")
    ax.margins(0.25)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=110, bbox_inches="tight")
    plt.close(fig)
    return path


def block_colors(block_of) -> list:
    cmap = plt.get_cmap("tab10")
    return [cmap(b % 10) for b in block_of]


def plot_algebra(L, path) -> Path:
    colors = None
    if L.exists is not None:
        rng = set(L.exists)
        colors = ["tab:orange" if x in rng else "white" for x in range(L.size)]
    return hasse(L.leq, list(L.names), path, f"L ({L.n}x{L.m}, {L.size} elements)", colors)


def plot_congruences(parts, path) -> Path:
    leq = [[p.refines(q) for q in parts] for p in parts]
    labels = ["|".join(str(len(b)) for b in p.blocks()) for p in parts]
    return hasse(leq, labels, path, f"monadic congruences ({len(parts)})")


def plot_space(X, path) -> Path:
    # filter names get long; label by point index as in the spectrum table
    labels = [f"P{x}" for x in range(X.size)]
    return hasse(X.leq, labels, path, f"spectrum ({X.size} points, colour = E-class)",
                 block_colors(X.E.block_of))
