"""Rendering: polygon-sequence SVG frames and report figures.

The SVG writer is deliberately plain string assembly: lattice coordinates map
to a fixed-scale grid, one frame per polytope with its index as the label,
and no timestamps or environment-dependent content, so output is byte-stable.
Report figures use matplotlib's Agg backend and are presentational only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from polyrec.polytope import Polytope

_SCALE = 14
_PAD = 1
_LABEL_H = 16
_PER_ROW = 8


def _frame_geometry(polys: Sequence[Polytope]):
    xs, ys = [], []
    for p in polys:
        for v in p.vertices:
            xs.append(v[0])
            ys.append(v[1] if p.dim == 2 else 0)
    x0, x1 = min(xs) - _PAD, max(xs) + _PAD
    y0, y1 = min(ys) - _PAD, max(ys) + _PAD
    return x0, x1, y0, y1


def polygon_sequence_svg(polys: Sequence[Polytope], labels: Optional[Sequence] = None) -> str:
    """One SVG with a grid of frames, one polytope per frame.

    All frames share the same scale and lattice window so growth across the
    sequence is visible at a glance.
    """
    if not polys:
        raise ValueError("nothing to render")
    if labels is None:
        labels = list(range(len(polys)))
    x0, x1, y0, y1 = _frame_geometry(polys)
    fw = (x1 - x0) * _SCALE
    fh = (y1 - y0) * _SCALE + _LABEL_H
    cols = min(_PER_ROW, len(polys))
    rows = (len(polys) + cols - 1) // cols
    width = cols * (fw + _SCALE) + _SCALE
    height = rows * (fh + _SCALE) + _SCALE

    def sx(ox, x):
        return ox + (x - x0) * _SCALE

    def sy(oy, y):
        return oy + (y1 - y) * _SCALE  # flip: lattice y grows upward

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for idx, (poly, label) in enumerate(zip(polys, labels)):
        ox = _SCALE + (idx % cols) * (fw + _SCALE)
        oy = _SCALE + (idx // cols) * (fh + _SCALE) + _LABEL_H
        out.append(f'<g stroke="#cccccc" stroke-width="1">')
        for gx in range(x0, x1 + 1):
            out.append(
                f'<line x1="{sx(ox, gx)}" y1="{sy(oy, y1)}" x2="{sx(ox, gx)}" y2="{sy(oy, y0)}"/>'
            )
        for gy in range(y0, y1 + 1):
            out.append(
                f'<line x1="{sx(ox, x0)}" y1="{sy(oy, gy)}" x2="{sx(ox, x1)}" y2="{sy(oy, gy)}"/>'
            )
        out.append("</g>")
        pts = [(v[0], v[1] if poly.dim == 2 else 0) for v in poly.vertices]
        if len(pts) == 1:
            cx, cy = pts[0]
            out.append(
                f'<circle cx="{sx(ox, cx)}" cy="{sy(oy, cy)}" r="3" fill="#1f3f77"/>'
            )
        elif len(pts) == 2:
            (ax, ay), (bx, by) = pts
            out.append(
                f'<line x1="{sx(ox, ax)}" y1="{sy(oy, ay)}" x2="{sx(ox, bx)}" y2="{sy(oy, by)}" '
                f'stroke="#1f3f77" stroke-width="2"/>'
            )
        else:
            coords = " ".join(f"{sx(ox, x)},{sy(oy, y)}" for x, y in pts)
            out.append(
                f'<polygon points="{coords}" fill="#9db7e3" fill-opacity="0.6" '
                f'stroke="#1f3f77" stroke-width="2"/>'
            )
        out.append(
            f'<text x="{ox}" y="{oy - 4}" font-family="monospace" font-size="12" '
            f'fill="#333333">n={label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path: str, polys: Sequence[Polytope], labels: Optional[Sequence] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(polygon_sequence_svg(polys, labels))


# ----------------------------------------------------------------------
# matplotlib report figures
# ----------------------------------------------------------------------


def _mpl():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def report_figures(
    out_prefix: str,
    vstar_seq: Sequence,
    v_seq: Sequence,
    counts: Sequence[int],
    areas: Sequence[Fraction],
    polys: Sequence[Polytope],
) -> list[str]:
    """Write the report's figures next to its delimited output.

    Returns the list of written paths: degree growth, lattice counts/areas,
    and a handful of polygon snapshots.
    """
    plt = _mpl()
    written = []
    ns = list(range(len(counts)))

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ns, [None if v is None else int(v) for v in vstar_seq], "o-", ms=3,
            label="min degree", color="#1f3f77")
    ax.plot(ns, [None if v is None else int(v) for v in v_seq], "s-", ms=3,
            label="max degree", color="#b5442d")
    ax.set_xlabel("n")
    ax.set_ylabel("weighted degree")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = f"{out_prefix}_valuations.png"
    fig.savefig(path, dpi=110)
    plt.close(fig)
    written.append(path)

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(ns, counts, "o-", ms=3, color="#1f3f77")
    ax1.set_xlabel("n")
    ax1.set_ylabel("lattice points")
    ax1.grid(True, alpha=0.3)
    ax2.plot(ns, [float(a) for a in areas], "s-", ms=3, color="#b5442d")
    ax2.set_xlabel("n")
    ax2.set_ylabel("area")
    ax2.grid(True, alpha=0.3)
    fig.tight_layout()
    path = f"{out_prefix}_counts.png"
    fig.savefig(path, dpi=110)
    plt.close(fig)
    written.append(path)

    snaps = min(8, len(polys))
    picks = [round(i * (len(polys) - 1) / max(1, snaps - 1)) for i in range(snaps)]
    fig, axes = plt.subplots(1, snaps, figsize=(2.2 * snaps, 2.6))
    if snaps == 1:
        axes = [axes]
    for ax, n in zip(axes, picks):
        poly = polys[n]
        pts = [(v[0], v[1] if poly.dim == 2 else 0) for v in poly.vertices]
        if len(pts) >= 3:
            closed = pts + [pts[0]]
            ax.fill([p[0] for p in closed], [p[1] for p in closed],
                    color="#9db7e3", alpha=0.6)
            ax.plot([p[0] for p in closed], [p[1] for p in closed], "-", color="#1f3f77")
        elif len(pts) == 2:
            ax.plot([pts[0][0], pts[1][0]], [pts[0][1], pts[1][1]], "-", lw=2,
                    color="#1f3f77")
        else:
            ax.plot([pts[0][0]], [pts[0][1]], "o", color="#1f3f77")
        ax.set_title(f"n={n}", fontsize=9)
        ax.grid(True, alpha=0.3)
        ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    path = f"{out_prefix}_polygons.png"
    fig.savefig(path, dpi=110)
    plt.close(fig)
    written.append(path)
    return written
