"""Deterministic SVG rendering of rank-2 and rank-3 objects.

Rank-2 polygons and fans are drawn in the quarter plane with lattice dots;
rank-3 fans are drawn as their slice in the standard triangle (barycentric
coordinates); higher ranks fall back to the abstract incidence graph of the
cones, which is the honest thing to project. Output is plain SVG text with
fixed-precision coordinates, so identical inputs give identical bytes.
"""

from __future__ import annotations

import math
from fractions import Fraction

PAD = 40.0
CELL = 42.0
DOT = "#9aa0a6"
RAY = "#c0392b"
FILLS = ["#fdf3d8", "#e8f1fa", "#edf7ec", "#faeef5", "#f2ede4", "#e9eef8"]


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class _Svg:
    def __init__(self, width: float, height: float):
        self.w, self.h = width, height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
            f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
            f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
        ]

    def line(self, a, b, color="black", width=1.5):
        self.parts.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
            f'y2="{_fmt(b[1])}" stroke="{color}" stroke-width="{width}"/>')

    def circle(self, c, r, color="black", fill=None):
        fill = fill or color
        self.parts.append(
            f'<circle cx="{_fmt(c[0])}" cy="{_fmt(c[1])}" r="{_fmt(r)}" '
            f'fill="{fill}" stroke="{color}"/>')

    def polygon(self, pts, fill, opacity=1.0):
        body = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        self.parts.append(
            f'<polygon points="{body}" fill="{fill}" stroke="none" '
            f'opacity="{opacity}"/>')

    def text(self, pos, s, size=13, color="black", anchor="start"):
        self.parts.append(
            f'<text x="{_fmt(pos[0])}" y="{_fmt(pos[1])}" font-size="{size}" '
            f'fill="{color}" text-anchor="{anchor}" '
            f'font-family="monospace">{s}</text>')

    def tostring(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _grid_transform(box: int):
    size = 2 * PAD + box * CELL

    def to_px(p):
        x = float(Fraction(p[0]))
        y = float(Fraction(p[1]))
        return (PAD + x * CELL, size - PAD - y * CELL)

    return size, to_px


def _lattice_dots(svg, to_px, box):
    for i in range(box + 1):
        for j in range(box + 1):
            svg.circle(to_px((i, j)), 2.0, color=DOT)


def _clip_ray(direction, box: int):
    dx, dy = (float(Fraction(a)) for a in direction)
    if dx <= 0 and dy <= 0:
        return (0.0, 0.0)
    t = math.inf
    if dx > 0:
        t = min(t, box / dx)
    if dy > 0:
        t = min(t, box / dy)
    return (dx * t, dy * t)


def render_fan_2d(cones, box: int = 6, title: str = "") -> str:
    """cones: list of {"dim": d, "rays": [[..], ..]} entries. Two-dimensional
    cones are shaded, rays drawn with their primitive generator dotted."""
    size, to_px = _grid_transform(box)
    svg = _Svg(size, size)
    two_cells = [c for c in cones if c["dim"] == 2]
    for idx, c in enumerate(sorted(two_cells, key=lambda c: c["rays"])):
        a, b = c["rays"][0], c["rays"][1]
        pa, pb = _clip_ray(a, box), _clip_ray(b, box)
        corner = []
        if (pa[0] >= box or pa[1] >= box) and (pb[0] >= box or pb[1] >= box):
            if pa[0] >= box * 0.999 and pb[1] >= box * 0.999:
                corner = [(box, box)]
            elif pb[0] >= box * 0.999 and pa[1] >= box * 0.999:
                corner = [(box, box)]
        pts = [to_px((0, 0)), to_px(pa)] + [to_px(p) for p in corner] + [to_px(pb)]
        svg.polygon(pts, FILLS[idx % len(FILLS)], opacity=0.9)
    _lattice_dots(svg, to_px, box)
    for c in sorted((c for c in cones if c["dim"] == 1), key=lambda c: c["rays"]):
        r = c["rays"][0]
        svg.line(to_px((0, 0)), to_px(_clip_ray(r, box)), color=RAY, width=2.2)
        if max(abs(a) for a in r) <= box:
            svg.circle(to_px(r), 4.0, color=RAY)
            svg.text((to_px(r)[0] + 7, to_px(r)[1] - 6),
                     f"({r[0]},{r[1]})", color=RAY)
    svg.line(to_px((0, 0)), to_px((box, 0)), color="black")
    svg.line(to_px((0, 0)), to_px((0, box)), color="black")
    if title:
        svg.text((PAD, PAD * 0.6), title, size=14)
    return svg.tostring()


def render_polygon_2d(vertices, support, compact_edges, box: int = 0,
                      title: str = "") -> str:
    """Newton polygon in the exponent quarter-plane: shaded region, support
    dots, thick compact edges, filled vertices."""
    pts = list(vertices) + list(support)
    box = max(box, 2 + max((max(p) for p in pts), default=2))
    size, to_px = _grid_transform(box)
    svg = _Svg(size, size)
    verts = sorted(vertices, key=lambda v: (v[0], -v[1]))
    region = [(verts[0][0], box)] + list(verts) + [(box, verts[-1][1]), (box, box)]
    svg.polygon([to_px(p) for p in region], FILLS[0], opacity=0.9)
    _lattice_dots(svg, to_px, box)
    for edge in compact_edges:
        vs = sorted(edge)
        svg.line(to_px(vs[0]), to_px(vs[-1]), color="#2a5db0", width=3.0)
    for p in sorted(support):
        svg.circle(to_px(p), 3.2, color="#444")
    for v in verts:
        svg.circle(to_px(v), 4.4, color="black")
        svg.text((to_px(v)[0] + 7, to_px(v)[1] - 6), f"({v[0]},{v[1]})")
    svg.line(to_px((0, 0)), to_px((box, 0)), color="black")
    svg.line(to_px((0, 0)), to_px((0, box)), color="black")
    if title:
        svg.text((PAD, PAD * 0.6), title, size=14)
    return svg.tostring()


def _barycentric(r):
    s = sum(Fraction(a) for a in r)
    x, y, z = (float(Fraction(a) / s) for a in r)
    # simplex corners: e1 bottom-left, e2 bottom-right, e3 top
    px = y + 0.5 * z
    py = (math.sqrt(3) / 2) * z
    return px, py


def render_fan_3d(cones, title: str = "") -> str:
    """Slice of a rank-3 fan in the standard triangle: rays become points,
    2-cones segments, 3-cones filled triangles."""
    width, height = 520.0, 500.0
    scale = width - 2 * PAD

    def to_px(p):
        x, y = _barycentric(p)
        return (PAD + x * scale, height - PAD - y * scale)

    svg = _Svg(width, height)
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    tri = [to_px(v) for v in e]
    three_cells = sorted((c for c in cones if c["dim"] == 3),
                         key=lambda c: c["rays"])
    for idx, c in enumerate(three_cells):
        svg.polygon([to_px(tuple(r)) for r in c["rays"]],
                    FILLS[idx % len(FILLS)], opacity=0.85)
    for a, b in ((0, 1), (1, 2), (2, 0)):
        svg.line(tri[a], tri[b], color="#bbb", width=1.0)
    for c in sorted((c for c in cones if c["dim"] == 2), key=lambda c: c["rays"]):
        a, b = c["rays"][0], c["rays"][1]
        svg.line(to_px(tuple(a)), to_px(tuple(b)), color="#2a5db0", width=2.2)
    for c in sorted((c for c in cones if c["dim"] == 1), key=lambda c: c["rays"]):
        r = tuple(c["rays"][0])
        svg.circle(to_px(r), 4.0, color=RAY)
        svg.text((to_px(r)[0] + 6, to_px(r)[1] - 5),
                 "(" + ",".join(map(str, r)) + ")", color=RAY, size=11)
    for v, name in zip(e, ("e1", "e2", "e3")):
        svg.text((to_px(v)[0] - 8, to_px(v)[1] + 16), name, size=12)
    if title:
        svg.text((PAD, PAD * 0.6), title, size=14)
    return svg.tostring()


def render_incidence_graph(cones, title: str = "") -> str:
    """Abstract incidence graph for fans of rank >= 4: one dot per cone on a
    circle, an edge per covering face relation."""
    entries = sorted(cones, key=lambda c: (c["dim"], c["rays"]))
    n = max(len(entries), 1)
    radius = max(140.0, 24.0 * n / math.pi)
    size = 2 * radius + 2 * PAD + 120
    svg = _Svg(size, size)
    center = size / 2
    pos = []
    for i in range(len(entries)):
        ang = 2 * math.pi * i / n - math.pi / 2
        pos.append((center + radius * math.cos(ang),
                    center + radius * math.sin(ang)))

    def rayset(c):
        return set(map(tuple, c["rays"]))

    for i, a in enumerate(entries):
        for j, b in enumerate(entries):
            if (b["dim"] == a["dim"] + 1 and rayset(a) <= rayset(b)):
                svg.line(pos[i], pos[j], color="#999", width=1.0)
    for i, c in enumerate(entries):
        svg.circle(pos[i], 5.0, color="#2a5db0")
        label = f'dim{c["dim"]}:' + ";".join(
            "(" + ",".join(map(str, r)) + ")" for r in c["rays"])
        svg.text((pos[i][0] + 8, pos[i][1] + 4), label, size=10)
    if title:
        svg.text((PAD, PAD * 0.6), title, size=14)
    return svg.tostring()


def render_document(doc, box: int = 6) -> str:
    """Dispatch on the document kind and rank."""
    kind = doc.get("kind")
    if kind in (None, "series"):
        from .jsonio import parse_series
        from .newton import newton_polyhedron
        f = parse_series(doc)
        if f.rank != 2:
            raise ValueError("series rendering is supported in rank 2 only")
        p = newton_polyhedron(f)
        edges = [cf.vertices for cf in p.compact_faces if cf.dim == 1]
        return render_polygon_2d(p.vertices, f.support, edges,
                                 title="newton polygon")
    if kind == "polyhedron":
        if doc["rank"] != 2:
            raise ValueError("polyhedron rendering is supported in rank 2 only")
        edges = [cf["vertices"] for cf in doc["compact_faces"] if cf["dim"] == 1]
        return render_polygon_2d([tuple(v) for v in doc["vertices"]],
                                 [tuple(v) for v in doc.get("support", [])],
                                 [[tuple(v) for v in e] for e in edges],
                                 title="newton polygon")
    if kind in ("fan", "newton-fan", "tropicalization"):
        cones = doc["cones"]
        rank = doc["rank"]
        title = kind
        if rank == 2:
            return render_fan_2d(cones, box=box, title=title)
        if rank == 3:
            return render_fan_3d(cones, title=title)
        return render_incidence_graph(cones, title=title)
    if kind == "rays":
        cones = [{"dim": 1, "rays": [r]} for r in doc["rays"]]
        rank = doc["rank"]
        if rank == 2:
            return render_fan_2d(cones, box=box, title="rays")
        if rank == 3:
            return render_fan_3d(cones, title="rays")
        return render_incidence_graph(cones, title="rays")
    raise ValueError(f"cannot render documents of kind {kind!r}")
