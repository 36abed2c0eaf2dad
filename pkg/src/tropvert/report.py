"""Figure rendering for the report path: staircase plots and diagram ray plots.

Figures are rendered headless to files next to the delimited data they
illustrate.  All plotted values come from the exact library API and are
converted to float only at the matplotlib boundary.
"""

from __future__ import annotations

import os
from fractions import Fraction

from . import embed
from .scattering import ScatteringDiagram


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_staircase(path: str, a_min=1, a_max=9, samples: int = 600) -> str:
    """Plot the stabilized embedding function over [a_min, a_max] to a file."""
    plt = _pyplot()
    rows = embed.staircase_table(a_min, a_max, samples)
    xs = [float(a) for a, _, _ in rows]
    ys = [float(c) for _, c, _ in rows]
    tau4 = (7 + 3 * 5 ** 0.5) / 2

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(xs, ys, lw=1.6, color="tab:blue")
    ax.axvline(tau4, color="tab:gray", lw=0.8, ls=":")
    ax.text(tau4, ax.get_ylim()[0], " accumulation", fontsize=8, color="tab:gray", va="bottom")
    corner_x, corner_y = [], []
    k = 0
    while float(embed.beta(k)) <= float(Fraction(a_max)) and k < 12:
        corner_x.append(float(embed.beta(k)))
        corner_y.append(float(embed.c_ball_stab(embed.beta(k)).c))
        k += 1
    ax.plot(corner_x, corner_y, "o", ms=3.5, color="tab:red", label="outer corners")
    ax.set_xlabel("a")
    ax.set_ylabel("c(a)")
    ax.set_title("Stabilized ellipsoid embedding function of the ball")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def render_diagram(path: str, diagram: ScatteringDiagram, title: str = "") -> str:
    """Plot the rays of a scattering diagram to a file.

    Incoming walls are dashed red, outgoing solid blue, each annotated with
    its primitive direction.
    """
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    for wall in diagram.sorted_walls():
        vx, vy = wall.ray_vector
        norm = max((vx * vx + vy * vy) ** 0.5, 1e-9)
        ux, uy = vx / norm, vy / norm
        style = "--" if wall.incoming else "-"
        color = "tab:red" if wall.incoming else "tab:blue"
        ax.plot([0, ux], [0, uy], style, color=color, lw=1.2)
        ax.annotate(
            "(%d,%d)" % (wall.direction.a, wall.direction.b),
            xy=(1.08 * ux, 1.08 * uy),
            fontsize=7,
            ha="center",
            va="center",
        )
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.3)
    ax.set_aspect("equal")
    ax.axhline(0, color="0.85", lw=0.5, zorder=0)
    ax.axvline(0, color="0.85", lw=0.5, zorder=0)
    ax.set_title(title or "scattering diagram (order %d)" % diagram.order)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def write_report(outdir: str, diagram: ScatteringDiagram, *, a_min=1, a_max=9, samples=400) -> list:
    """Write the staircase CSV + figure and the diagram JSON + figure into outdir."""
    from .cli import staircase_csv_text
    from .scattering import diagram_dumps

    os.makedirs(outdir, exist_ok=True)
    written = []

    csv_path = os.path.join(outdir, "staircase.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as handle:
        handle.write(staircase_csv_text(a_min, a_max, samples))
    written.append(csv_path)
    written.append(render_staircase(os.path.join(outdir, "staircase.png"), a_min, a_max, samples))

    json_path = os.path.join(outdir, "diagram.json")
    with open(json_path, "w", encoding="utf-8", newline="") as handle:
        handle.write(diagram_dumps(diagram) + "\n")
    written.append(json_path)
    written.append(render_diagram(os.path.join(outdir, "diagram.png"), diagram))
    return written
