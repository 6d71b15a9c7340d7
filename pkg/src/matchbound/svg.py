"""Deterministic SVG rendering of a point set, matching, and its decomposition.

Output shows matched points (filled) vs isolated points (hollow), matching
edges, the vertical wall through every point clipped at the first edge
above/below (arrow-capped when unbounded), and a light alternating shading
of the decomposition cells.  Identical inputs produce identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .geom import PointSet
from .matchings import Matching
from .trapezoids import Trapezoidation

MARGIN = Fraction(1)  # world-units of padding around the bounding box
SCALE = 40            # pixels per world unit
RADIUS = 4            # point marker radius in pixels

_CELL_FILLS = ("#eef4fb", "#fdf3e7")


def _fmt(v: Fraction) -> str:
    return f"{float(v):.2f}"


class _Canvas:
    """World-to-pixel mapping with y flipped so larger y is up."""

    def __init__(self, ps: PointSet):
        xs, ys = ps.xs, ps.ys
        self.x0 = Fraction(min(xs)) - MARGIN
        self.x1 = Fraction(max(xs)) + MARGIN
        self.y0 = Fraction(min(ys)) - MARGIN
        self.y1 = Fraction(max(ys)) + MARGIN
        self.w = float((self.x1 - self.x0) * SCALE)
        self.h = float((self.y1 - self.y0) * SCALE)

    def px(self, x: Fraction) -> str:
        return _fmt((Fraction(x) - self.x0) * SCALE)

    def py(self, y: Fraction) -> str:
        return _fmt((self.y1 - Fraction(y)) * SCALE)


def _edge_y_at(ps: PointSet, edge: tuple[int, int], x: Fraction) -> Fraction:
    u, w = edge
    return Fraction(ps.ys[u]) + Fraction(ps.ys[w] - ps.ys[u], ps.xs[w] - ps.xs[u]) * (
        Fraction(x) - ps.xs[u]
    )


def _cell_polygons(ps: PointSet, trap: Trapezoidation, cv: _Canvas) -> list[str]:
    polys = []
    for idx, cell in enumerate(trap.cells):
        xl = cv.x0 if cell.left is None else Fraction(ps.xs[cell.left])
        xr = cv.x1 if cell.right is None else Fraction(ps.xs[cell.right])
        if cell.bottom is None:
            ybl = ybr = cv.y0
        else:
            e = trap.M.edges[cell.bottom]
            ybl, ybr = _edge_y_at(ps, e, xl), _edge_y_at(ps, e, xr)
        if cell.top is None:
            ytl = ytr = cv.y1
        else:
            e = trap.M.edges[cell.top]
            ytl, ytr = _edge_y_at(ps, e, xl), _edge_y_at(ps, e, xr)
        pts = " ".join(
            f"{cv.px(x)},{cv.py(y)}"
            for x, y in ((xl, ybl), (xr, ybr), (xr, ytr), (xl, ytl))
        )
        fill = _CELL_FILLS[idx % len(_CELL_FILLS)]
        polys.append(f'<polygon points="{pts}" fill="{fill}" stroke="none"/>')
    return polys


def render_svg(ps: PointSet, M: Matching) -> str:
    """SVG text for the point set, matching edges, walls, and cell shading."""
    trap = Trapezoidation(ps, M)
    cv = _Canvas(ps)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{cv.w:.0f}" '
        f'height="{cv.h:.0f}" viewBox="0 0 {cv.w:.2f} {cv.h:.2f}">',
        f'<rect width="{cv.w:.2f}" height="{cv.h:.2f}" fill="#ffffff"/>',
    ]
    parts.extend(_cell_polygons(ps, trap, cv))

    # walls: vertical segment through each point, clipped by first edges;
    # an unclipped end runs to the margin and is capped with a marker.
    for p in range(ps.n):
        below, above = trap.wall_gap[p]
        x = Fraction(ps.xs[p])
        if below is None:
            ylo, lo_open = cv.y0, True
        else:
            ylo, lo_open = _edge_y_at(ps, M.edges[below], x), False
        if above is None:
            yhi, hi_open = cv.y1, True
        else:
            yhi, hi_open = _edge_y_at(ps, M.edges[above], x), False
        parts.append(
            f'<line x1="{cv.px(x)}" y1="{cv.py(ylo)}" x2="{cv.px(x)}" '
            f'y2="{cv.py(yhi)}" stroke="#999999" stroke-width="1" '
            'stroke-dasharray="4 3"/>'
        )
        for y, is_open in ((ylo, lo_open), (yhi, hi_open)):
            if is_open:
                parts.append(
                    f'<circle cx="{cv.px(x)}" cy="{cv.py(y)}" r="2.5" '
                    'fill="none" stroke="#999999" stroke-width="1" '
                    'class="unbounded-wall"/>'
                )

    for (u, w) in M.edges:
        parts.append(
            f'<line x1="{cv.px(Fraction(ps.xs[u]))}" y1="{cv.py(Fraction(ps.ys[u]))}" '
            f'x2="{cv.px(Fraction(ps.xs[w]))}" y2="{cv.py(Fraction(ps.ys[w]))}" '
            'stroke="#1f4e8c" stroke-width="2"/>'
        )

    for p in range(ps.n):
        cx, cy = cv.px(Fraction(ps.xs[p])), cv.py(Fraction(ps.ys[p]))
        if M.covers(p):
            parts.append(
                f'<circle cx="{cx}" cy="{cy}" r="{RADIUS}" fill="#1f4e8c"/>'
            )
        else:
            parts.append(
                f'<circle cx="{cx}" cy="{cy}" r="{RADIUS}" fill="#ffffff" '
                'stroke="#c2452d" stroke-width="2"/>'
            )
        parts.append(
            f'<text x="{cx}" y="{cy}" dx="6" dy="-6" font-size="11" '
            f'font-family="monospace" fill="#333333">{p}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
