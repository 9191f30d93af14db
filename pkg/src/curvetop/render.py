"""Turn a :class:`CurveGraph` into drawable paths and emit TikZ, SVG or JSON.

Coordinates stay rational until they are formatted, so every emitter is
byte-for-byte deterministic.  Metric output undoes the shear; the graph's
straight edges and the Bezier control points are built in the sheared frame
and mapped back by the same linear map.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .polynomial import BiPoly, partial_derivative
from .topology import CurveGraph, Vertex, schematic_layout

Point = Tuple[Fraction, Fraction]

SCHEMA = "curvetop-graph/1"

COLORS = {
    "pl": "red",
    "bezier": "blue",
    "line": "black",
    "overlay": "gray",
    "singular": "red",
    "critical": "blue",
}


@dataclass(frozen=True)
class RenderOptions:
    mode: str = "metric"  # metric | schematic
    style: str = "both"  # pl | bezier | both
    format: str = "tikz"  # tikz | svg | json
    bbox: Optional[Tuple[float, float, float, float]] = None
    precision: int = 4
    standalone: bool = False
    overlay: Tuple[Tuple[Point, ...], ...] = ()

    def __post_init__(self):
        if self.mode not in ("metric", "schematic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.style not in ("pl", "bezier", "both"):
            raise ValueError(f"unknown style {self.style!r}")
        if self.format not in ("tikz", "svg", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.precision < 3:
            raise ValueError("precision must be at least 3")


@dataclass
class Path:
    points: List[Point]
    cls: str  # pl | bezier | line | overlay
    bezier: bool = False  # points are p0, c1, c2, p1, c1, c2, p2, ...


@dataclass
class Mark:
    point: Point
    cls: str  # singular | critical


@dataclass
class PathSet:
    paths: List[Path] = field(default_factory=list)
    marks: List[Mark] = field(default_factory=list)
    bbox: Tuple[Fraction, Fraction, Fraction, Fraction] = (Fraction(0), Fraction(0), Fraction(1), Fraction(1))
    precision: int = 4
    integer: bool = False

    @property
    def polylines(self) -> List[List[Point]]:
        return [p.points for p in self.paths if not p.bezier]

    @property
    def beziers(self) -> List[Tuple[Point, Point, Point, Point]]:
        out = []
        for p in self.paths:
            if p.bezier:
                pts = p.points
                out += [tuple(pts[k:k + 4]) for k in range(0, len(pts) - 1, 3)]
        return out


# --- chains of edges -----------------------------------------------------------


def _chains(g: CurveGraph, edges: Sequence[Tuple[int, int]], stop=("critical", "line")) -> List[List[int]]:
    """Split ``edges`` into maximal vertex chains through degree-2 vertices
    that carry none of the ``stop`` flags."""
    adj: Dict[int, List[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    for k in adj:
        adj[k].sort()

    def through(v):
        return len(adj[v]) == 2 and not g.vertices[v].flags.intersection(stop)

    used = set()
    out = []

    def walk(start, nxt):
        chain = [start]
        prev, cur = start, nxt
        while True:
            used.add(frozenset((prev, cur)))
            chain.append(cur)
            if not through(cur) or cur == start:
                return chain
            a, b = adj[cur]
            n = b if a == prev else a
            if frozenset((cur, n)) in used:
                return chain
            prev, cur = cur, n

    for v in sorted(adj):
        if through(v):
            continue
        for n in adj[v]:
            if frozenset((v, n)) not in used:
                out.append(walk(v, n))
    for v in sorted(adj):
        for n in adj[v]:
            if frozenset((v, n)) not in used:
                out.append(walk(v, n))
    return out


# --- geometry -------------------------------------------------------------------


def _unshear(p: Point, t: Fraction) -> Point:
    return (p[0] + t * p[1], p[1])


def _tangent(f_x: BiPoly, f_y: BiPoly, v: Vertex, other: Vertex):
    """Direction of the handle at ``v`` pointing towards ``other``, in the sheared frame."""
    dx, dy = other.x - v.x, other.y - v.y
    if "singular" in v.flags or "line" in v.flags:
        return dx / 3, dy / 3
    if "vertical_tangent" in v.flags:
        up = abs(dx) / 3 if dx else abs(dy) / 3
        return Fraction(0), up if dy >= 0 else -up
    gy = f_y(v.x, v.y)
    if gy == 0:
        return dx / 3, dy / 3
    s = -f_x(v.x, v.y) / gy
    return dx / 3, s * dx / 3


def _bezier_chain(g: CurveGraph, chain: List[int], fx, fy) -> List[Point]:
    V = g.vertices
    pts = [(V[chain[0]].x, V[chain[0]].y)]
    for a, b in zip(chain, chain[1:]):
        va, vb = V[a], V[b]
        ha = _tangent(fx, fy, va, vb)
        hb = _tangent(fx, fy, vb, va)
        pts += [(va.x + ha[0], va.y + ha[1]), (vb.x + hb[0], vb.y + hb[1]), (vb.x, vb.y)]
    return pts


def to_paths(g: CurveGraph, opts: RenderOptions = RenderOptions(), curve: Optional[BiPoly] = None) -> PathSet:
    """Geometry for ``g``.

    ``curve`` is the analysed (sheared) polynomial, used for Bezier tangents.
    Without it the Bezier handles follow the chords.
    """
    ps = PathSet(precision=opts.precision, integer=opts.mode == "schematic")
    arcs = [e for e in g.edges if g.vertices[e[0]].station != g.vertices[e[1]].station]
    verticals = [e for e in g.edges if g.vertices[e[0]].station == g.vertices[e[1]].station]
    arc_chains = _chains(g, arcs)
    line_chains = _chains(g, verticals, stop=())

    if opts.mode == "schematic":
        lay = schematic_layout(g)

        def pos(vid):
            i, j = lay[vid]
            return (Fraction(i), Fraction(j))

        for ch in arc_chains:
            ps.paths.append(Path([pos(v) for v in ch], "pl"))
        for ch in line_chains:
            ps.paths.append(Path([pos(v) for v in ch], "line"))
    else:
        t = g.shear_t

        def pos(vid):
            v = g.vertices[vid]
            return _unshear((v.x, v.y), t)

        if opts.style in ("pl", "both"):
            for ch in arc_chains:
                ps.paths.append(Path([pos(v) for v in ch], "pl"))
        if opts.style in ("bezier", "both"):
            if curve is not None:
                fx, fy = partial_derivative(curve, "x"), partial_derivative(curve, "y")
            else:
                fx = fy = _chord
            for ch in arc_chains:
                pts = _bezier_chain(g, ch, fx, fy)
                ps.paths.append(Path([_unshear(p, t) for p in pts], "bezier", bezier=True))
        for ch in line_chains:
            ps.paths.append(Path([pos(v) for v in ch], "line"))
    for v in g.vertices:
        if "critical" in v.flags or ("singular" in v.flags and "line" in v.flags):
            cls = "singular" if "singular" in v.flags else "critical"
            ps.marks.append(Mark(pos(v.id), cls))
    for ov in opts.overlay:
        ps.paths.append(Path([(Fraction(x), Fraction(y)) for x, y in ov], "overlay"))
    ps.bbox = _bbox(ps, g, opts)
    return ps


def _chord(x, y):
    """Stand-in derivative; a zero ``f_y`` makes every handle follow the chord."""
    return Fraction(0)


def _bbox(ps: PathSet, g: CurveGraph, opts: RenderOptions):
    if opts.bbox is not None:
        return tuple(Fraction(v) for v in opts.bbox)
    pts = [p for path in ps.paths for p in path.points] + [m.point for m in ps.marks]
    if not pts:
        return (Fraction(0), Fraction(0), Fraction(1), Fraction(1))
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    m = max(x1 - x0, y1 - y0, Fraction(1)) / 20
    return (x0 - m, y0 - m, x1 + m, y1 + m)


# --- formatting ------------------------------------------------------------------


def fmt(q: Fraction, precision: int) -> str:
    """Fixed-point decimal for a rational, rounded half away from zero."""
    q = Fraction(q)
    scale = 10 ** precision
    n = abs(q) * scale
    r = int(n + Fraction(1, 2))
    sign = "-" if q < 0 and r else ""
    s = str(r).rjust(precision + 1, "0")
    return f"{sign}{s[:-precision]}.{s[-precision:]}"


def _num(q: Fraction, ps: PathSet) -> str:
    if ps.integer and Fraction(q).denominator == 1:
        return str(int(q))
    return fmt(q, ps.precision)


def _pt(p: Point, ps: PathSet) -> str:
    return f"({_num(p[0], ps)},{_num(p[1], ps)})"


def emit_tikz(ps: PathSet, standalone: bool = False) -> str:
    size = max(ps.bbox[2] - ps.bbox[0], ps.bbox[3] - ps.bbox[1], Fraction(1))
    r = fmt(size / 150, ps.precision)
    styles = ", ".join(f"{k}/.style={{{c}}}" for k, c in COLORS.items())
    lines = [f"\\begin{{tikzpicture}}[{styles}]"]
    for path in ps.paths:
        pts = path.points
        if path.bezier:
            body = _pt(pts[0], ps)
            for k in range(1, len(pts), 3):
                body += f" .. controls {_pt(pts[k], ps)} and {_pt(pts[k + 1], ps)} .. {_pt(pts[k + 2], ps)}"
        else:
            body = " -- ".join(_pt(p, ps) for p in pts)
        lines.append(f"\\draw[{path.cls}] {body};")
    for m in ps.marks:
        lines.append(f"\\fill[{m.cls}] {_pt(m.point, ps)} circle[radius={r}];")
    lines.append("\\end{tikzpicture}")
    body = "\n".join(lines) + "\n"
    if standalone:
        body = ("\\documentclass[tikz]{standalone}\n\\begin{document}\n" + body + "\\end{document}\n")
    return body


def emit_svg(ps: PathSet) -> str:
    x0, y0, x1, y1 = ps.bbox
    n = lambda q: _num(q, ps)  # noqa: E731
    w, h = x1 - x0, y1 - y0
    sw = fmt(max(w, h) / 400, ps.precision)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{n(x0)} {n(-y1)} {n(w)} {n(h)}">',
        f'<g transform="scale(1,-1)" fill="none" stroke-width="{sw}">',
    ]
    for path in ps.paths:
        color = COLORS[path.cls]
        pts = path.points
        if path.bezier:
            d = f"M {n(pts[0][0])} {n(pts[0][1])}"
            for k in range(1, len(pts), 3):
                d += " C " + " ".join(f"{n(p[0])} {n(p[1])}" for p in pts[k:k + 3])
            out.append(f'<path class="{path.cls}" stroke="{color}" d="{d}"/>')
        else:
            s = " ".join(f"{n(p[0])},{n(p[1])}" for p in pts)
            out.append(f'<polyline class="{path.cls}" stroke="{color}" points="{s}"/>')
    r = fmt(max(w, h) / 150, ps.precision)
    for m in ps.marks:
        out.append(f'<circle class="{m.cls}" cx="{n(m.point[0])}" cy="{n(m.point[1])}" '
                   f'r="{r}" fill="{COLORS[m.cls]}"/>')
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def _frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _json_num(q: Fraction, ps: PathSet):
    if ps.integer and q.denominator == 1:
        return int(q)
    return float(fmt(q, ps.precision))


def emit_json(g: CurveGraph, ps: PathSet) -> str:
    lay = schematic_layout(g)
    t = g.shear_t
    verts = []
    for v in g.vertices:
        ox, oy = _unshear((v.x, v.y), t)
        i, j = lay[v.id]
        verts.append({
            "id": v.id,
            "x": float(fmt(ox, ps.precision)),
            "y": float(fmt(oy, ps.precision)),
            "i": i,
            "j": j,
            "flags": sorted(v.flags),
            "exact": [_frac_str(v.x), _frac_str(v.y)],
        })
    paths = []
    for p in ps.paths:
        paths.append({
            "class": p.cls,
            "kind": "bezier" if p.bezier else "polyline",
            "points": [[_json_num(a, ps), _json_num(b, ps)] for a, b in p.points],
        })
    doc = {
        "schema": SCHEMA,
        "shear": _frac_str(t),
        "stations": g.n_stations,
        "bbox": [_frac_str(c) for c in g.bbox],
        "vertices": verts,
        "edges": [[a, b] for a, b in g.edges],
        "paths": paths,
        "marks": [{"class": m.cls, "point": [_json_num(c, ps) for c in m.point]} for m in ps.marks],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def graph_from_json(text: str) -> CurveGraph:
    """Rebuild the graph written by :func:`emit_json`."""
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    g = CurveGraph(shear_t=Fraction(doc["shear"]), n_stations=doc["stations"],
                   bbox=tuple(Fraction(c) for c in doc["bbox"]))
    for v in sorted(doc["vertices"], key=lambda v: v["id"]):
        g.vertices.append(Vertex(v["id"], v["i"], v["j"] - 1, Fraction(v["exact"][0]),
                                 Fraction(v["exact"][1]), frozenset(v["flags"])))
    g.edges = [(a, b) for a, b in doc["edges"]]
    return g


def render(g: CurveGraph, opts: RenderOptions = RenderOptions(), curve: Optional[BiPoly] = None) -> str:
    ps = to_paths(g, opts, curve)
    if opts.format == "tikz":
        return emit_tikz(ps, opts.standalone)
    if opts.format == "svg":
        return emit_svg(ps)
    return emit_json(g, ps)
