"""Render switching circuits and routing statistics to figure files.

Used by the CLI report paths; everything draws off-screen (Agg) and writes
PNG. Vertices sit on a circle, colored by polarization class; parallel
edges and loops get increasing curvature so they stay distinguishable.
Port labels are printed as o<p> near the tail and i<p> near the head.
"""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle, FancyArrowPatch

from .circuits import Polarization, SwitchingCircuit


def _layout(vertices) -> dict[int, tuple[float, float]]:
    n = len(vertices)
    if n == 1:
        return {vertices[0]: (0.0, 0.0)}
    r = 1.0 + 0.08 * n
    return {
        v: (r * math.cos(2 * math.pi * i / n), r * math.sin(2 * math.pi * i / n))
        for i, v in enumerate(vertices)
    }


def circuit_figure(
    circuit: SwitchingCircuit,
    polarization: Polarization,
    title: str | None = None,
    class_labels: Mapping[int, str] | None = None,
):
    pos = _layout(circuit.vertices)
    class_of = polarization.class_of()
    cmap = matplotlib.colormaps["tab20"]
    color_of = {cid: cmap((cid - 1) % 20) for cid in range(1, len(polarization.classes) + 1)}

    fig, ax = plt.subplots(figsize=(7, 7))
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)

    vertex_r = 0.12 + 0.02 * max(0, 8 - len(circuit.vertices))
    for v, (x, y) in pos.items():
        ax.add_patch(
            Circle((x, y), vertex_r, facecolor=color_of[class_of[v]], edgecolor="black", zorder=3)
        )
        ax.text(x, y, str(v), ha="center", va="center", fontsize=9, zorder=4)

    parallel: dict[tuple[int, int], int] = defaultdict(int)
    for e in circuit.edges:
        key = (min(e.tail, e.head), max(e.tail, e.head))
        idx = parallel[key]
        parallel[key] += 1
        x1, y1 = pos[e.tail]
        x2, y2 = pos[e.head]
        if e.tail == e.head:
            # loop: a small circle tangent to the vertex, pushed outward
            angle = math.atan2(y1, x1) if (x1, y1) != (0.0, 0.0) else idx * 2.1
            ox = x1 + (vertex_r * 2.2) * math.cos(angle + idx * 2.1)
            oy = y1 + (vertex_r * 2.2) * math.sin(angle + idx * 2.1)
            ax.add_patch(
                Circle((ox, oy), vertex_r * 1.1, fill=False, edgecolor="dimgray", zorder=2)
            )
            ax.text(
                ox,
                oy,
                f"e{e.id}\no{e.out_port} i{e.in_port}",
                ha="center",
                va="center",
                fontsize=6,
                color="dimgray",
                zorder=2,
            )
            continue
        rad = 0.15 + 0.17 * idx
        if e.tail > e.head:
            rad = -rad
        arrow = FancyArrowPatch(
            (x1, y1),
            (x2, y2),
            connectionstyle=f"arc3,rad={rad}",
            arrowstyle="-|>",
            mutation_scale=12,
            color="dimgray",
            shrinkA=12,
            shrinkB=12,
            zorder=2,
        )
        ax.add_patch(arrow)
        # midpoint of the straight chord, nudged toward the arc side
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        nx, ny = -(y2 - y1), (x2 - x1)
        norm = math.hypot(nx, ny) or 1.0
        mx += rad * 0.5 * nx / norm
        my += rad * 0.5 * ny / norm
        ax.text(
            mx,
            my,
            f"e{e.id}: o{e.out_port}>i{e.in_port}",
            fontsize=6,
            ha="center",
            va="center",
            color="dimgray",
            zorder=2,
        )

    if class_labels:
        handles = [
            plt.Line2D(
                [], [], marker="o", linestyle="", markerfacecolor=color_of[cid],
                markeredgecolor="black", label=f"class {cid}: {label}",
            )
            for cid, label in sorted(class_labels.items())
        ]
        ax.legend(handles=handles, loc="upper left", fontsize=7, framealpha=0.9)

    ax.relim()
    ax.autoscale_view()
    return fig


def cycle_histogram_figure(
    counts: Mapping[int, int], target: int | None = None, title: str | None = None
):
    """Bar chart of how many respecting routings induce each cycle count."""
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = sorted(counts)
    ax.bar(xs, [counts[x] for x in xs], color="steelblue", edgecolor="black")
    if target is not None:
        ax.axvline(target, color="firebrick", linestyle="--", label=f"target M = {target}")
        ax.legend(fontsize=8)
    ax.set_xlabel("cycles in the induced decomposition")
    ax.set_ylabel("respecting routings")
    ax.set_xticks(xs)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_figure(fig, path) -> None:
    fig.savefig(path, dpi=150)
    plt.close(fig)
