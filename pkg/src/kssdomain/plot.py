"""SVG and TikZ drawings of two-dimensional domains.

Canvas transform (SVG user units)::

    X = MARGIN + SCALE * x
    Y = MARGIN + SCALE * AXIS_EXTENT - SCALE * y

TikZ output keeps coordinates exact, written as ``({p/q},{p/q})`` under
``scale=4``, which TikZ evaluates itself.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .model import AffineForm, PairFamily, level_form
from .polytope import HalfSpace, Polytope, enumerate_vertices

SCALE = 400
MARGIN = 60
AXIS_EXTENT = Fraction(6, 5)
CANVAS = MARGIN * 2 + int(SCALE * AXIS_EXTENT)

Point = tuple[Fraction, Fraction]


def canvas_xy(p: Sequence[Fraction]) -> tuple[float, float]:
    x, y = p
    return MARGIN + SCALE * float(x), MARGIN + SCALE * float(AXIS_EXTENT - y)


def cyclic_order(vertices: Sequence[Point]) -> list[Point]:
    """Counter-clockwise order around the centroid, exact comparisons only."""
    pts = sorted(set(vertices))
    if len(pts) <= 2:
        return pts
    cx = sum((p[0] for p in pts), Fraction(0)) / len(pts)
    cy = sum((p[1] for p in pts), Fraction(0)) / len(pts)

    def half(p: Point) -> int:
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(a: Point, b: Point) -> int:
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    ring = sorted(pts, key=cmp_to_key(cmp))
    start = ring.index(pts[0])
    return ring[start:] + ring[:start]


def naive_region(family: PairFamily) -> list[Point]:
    """Box and level constraints only; the area beta cuts down from."""
    k = family.k
    hs = [HalfSpace(level_form(family))]
    for i in range(k):
        x = AffineForm.coordinate(i, k)
        hs += [HalfSpace(x), HalfSpace(AffineForm.const(1, k) - x)]
    return cyclic_order(enumerate_vertices(hs, k))


def _frac_tex(x: Fraction) -> str:
    if x.denominator == 1:
        return f"${x.numerator}$"
    sign = "-" if x < 0 else ""
    return f"${sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}$"


def _guides(vertices: Sequence[Point]) -> list[tuple[Point, Point]]:
    out = []
    for x, y in vertices:
        if x > 0 and y > 0:
            out.append(((x, Fraction(0)), (x, y)))
            out.append(((Fraction(0), y), (x, y)))
    return out


def _ticks(vertices: Sequence[Point]) -> tuple[list[Fraction], list[Fraction]]:
    xs = sorted({v[0] for v in vertices if v[0] > 0})
    ys = sorted({v[1] for v in vertices if v[1] > 0})
    return xs, ys


def render_svg(family: PairFamily, P: Polytope, shade_excluded: bool = False) -> str:
    verts = cyclic_order(P.vrep)
    xs, ys = _ticks(verts)
    labels = [b.label for b in family.boundary]

    def pts(seq) -> str:
        return " ".join("%.4f,%.4f" % canvas_xy(p) for p in seq)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        "<desc>vertices: " + " ".join(f"({v[0]},{v[1]})" for v in sorted(P.vrep)) + "</desc>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    if shade_excluded:
        lines.append(f'<polygon points="{pts(naive_region(family))}" fill="lightgray" stroke="none"/>')
        if len(verts) >= 3:
            lines.append(f'<polygon points="{pts(verts)}" fill="white" stroke="none"/>')
    ox, oy = canvas_xy((Fraction(0), Fraction(0)))
    ex, _ = canvas_xy((AXIS_EXTENT, Fraction(0)))
    _, ey = canvas_xy((Fraction(0), AXIS_EXTENT))
    lines.append(f'<line x1="{ox:.4f}" y1="{oy:.4f}" x2="{ex:.4f}" y2="{oy:.4f}" stroke="black" stroke-width="2"/>')
    lines.append(f'<line x1="{ox:.4f}" y1="{oy:.4f}" x2="{ox:.4f}" y2="{ey:.4f}" stroke="black" stroke-width="2"/>')
    lines.append(f'<text x="{ex + 8:.4f}" y="{oy + 5:.4f}" font-size="16">{labels[0]}</text>')
    lines.append(f'<text x="{ox - 5:.4f}" y="{ey - 10:.4f}" font-size="16">{labels[1]}</text>')
    for a, b in _guides(verts):
        (x1, y1), (x2, y2) = canvas_xy(a), canvas_xy(b)
        lines.append(
            f'<line x1="{x1:.4f}" y1="{y1:.4f}" x2="{x2:.4f}" y2="{y2:.4f}" '
            'stroke="gray" stroke-dasharray="6,4"/>'
        )
    for x in xs:
        cx, cy = canvas_xy((x, Fraction(0)))
        lines.append(f'<text x="{cx:.4f}" y="{cy + 20:.4f}" font-size="14" text-anchor="middle">{x}</text>')
    for y in ys:
        cx, cy = canvas_xy((Fraction(0), y))
        lines.append(f'<text x="{cx - 8:.4f}" y="{cy + 5:.4f}" font-size="14" text-anchor="end">{y}</text>')
    if len(verts) >= 3:
        lines.append(f'<polygon points="{pts(verts)}" fill="none" stroke="black" stroke-width="3"/>')
    elif len(verts) == 2:
        lines.append(f'<polyline points="{pts(verts)}" fill="none" stroke="black" stroke-width="3"/>')
    elif verts:
        cx, cy = canvas_xy(verts[0])
        lines.append(f'<circle cx="{cx:.4f}" cy="{cy:.4f}" r="4" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _tikz(p: Sequence[Fraction]) -> str:
    return f"({{{p[0]}}},{{{p[1]}}})"


def render_tikz(family: PairFamily, P: Polytope, shade_excluded: bool = False) -> str:
    verts = cyclic_order(P.vrep)
    xs, ys = _ticks(verts)
    labels = [b.label for b in family.boundary]
    ext = float(AXIS_EXTENT)
    out = [
        "% format_version 1",
        "% vertices: " + " ".join(f"({v[0]},{v[1]})" for v in sorted(P.vrep)),
        "\\begin{tikzpicture}[scale=4]",
    ]
    if shade_excluded:
        out.append("    \\path[fill=lightgray] " + "--".join(_tikz(p) for p in naive_region(family)) + "--cycle;")
        if len(verts) >= 3:
            out.append("    \\path[fill=white] " + "--".join(_tikz(p) for p in verts) + "--cycle;")
    out.append(
        f"    \\draw [<->,thick] (0,{ext}) node (yaxis) [above] {{${labels[1]}$}}\n"
        f"        |- ({ext},0) node (xaxis) [right] {{${labels[0]}$}};"
    )
    for x in xs:
        out.append(f"    \\node[below] () at ({{{x}}},0) {{{_frac_tex(x)}}};")
    for y in ys:
        out.append(f"    \\node[left] () at (0,{{{y}}}) {{{_frac_tex(y)}}};")
    for a, b in _guides(verts):
        out.append(f"    \\draw[dashed] {_tikz(a)} -- {_tikz(b)};")
    if len(verts) >= 2:
        path = " -- ".join(_tikz(p) for p in verts)
        out.append(f"    \\draw[very thick] {path}" + (" -- cycle;" if len(verts) >= 3 else ";"))
    elif verts:
        out.append(f"    \\fill {_tikz(verts[0])} circle (0.01);")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"
