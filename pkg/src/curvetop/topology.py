"""Fibres over a grid of x-stations and the plane graph obtained by connecting them.

Stations are the critical x-values of a generic model, two intermediate
x-values inside every gap, and a sentinel beyond each end.  Roots of
neighbouring fibres are joined in y-order; around a critical fibre the
unmarked roots pair off from the top and bottom and every leftover root of
the neighbour runs into the marked (critical) root.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import _dense as D
from .algebraic import RealAlgebraic
from .critical import CriticalPoint, GenericModel, Kind, real_roots_at
from .errors import SeparationFailure, TopologyInconsistent
from .roots import DEFAULT_BUDGET


class StationKind(enum.Enum):
    CRITICAL = "critical"
    INTERMEDIATE = "intermediate"
    SENTINEL = "sentinel"
    LINE = "line"


@dataclass
class Station:
    index: int
    x: RealAlgebraic
    kind: StationKind
    critical: Optional[CriticalPoint] = None


@dataclass
class Fiber:
    """Real roots of the curve over one station, ascending; ``marked`` indexes
    the critical root on a critical fibre."""

    station: Station
    roots: list
    marked: Optional[int] = None

    @property
    def station_index(self) -> int:
        return self.station.index

    @property
    def kind(self) -> StationKind:
        return self.station.kind

    def __len__(self):
        return len(self.roots)


@dataclass
class Vertex:
    id: int
    station: int
    rank: int  # 0-based position in the fibre; -1 / len for line end points
    x: Fraction
    y: Fraction
    flags: frozenset = frozenset()


@dataclass
class CurveGraph:
    """Plane graph isotopic to the curve inside the station slab.

    Coordinates are rational and live in the frame of the analysed (sheared)
    polynomial; ``shear_t`` maps them back via ``x = X + t Y``.
    """

    vertices: List[Vertex] = field(default_factory=list)
    edges: List[Tuple[int, int]] = field(default_factory=list)
    shear_t: Fraction = Fraction(0)
    n_stations: int = 0
    bbox: Tuple[Fraction, Fraction, Fraction, Fraction] = (Fraction(0),) * 4

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {v.id: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def degree(self, vid: int) -> int:
        return sum((a == vid) + (b == vid) for a, b in self.edges)

    def rotation(self, vid: int) -> List[int]:
        """Neighbours of ``vid`` in counter-clockwise order.

        Branches leaving to the right come first from bottom to top, then
        the left ones from top to bottom; vertical edges sit between them.
        """
        v = self.vertices[vid]
        nbrs = self.adjacency()[vid]

        def key(n):
            w = self.vertices[n]
            if w.station > v.station:
                return (1, w.y)
            if w.station == v.station:
                return (2, 0) if w.y > v.y else (0, 0)
            return (3, -w.y)

        return sorted(nbrs, key=key)


# --- stations ----------------------------------------------------------------


def _separate(xs: List[RealAlgebraic]) -> List[RealAlgebraic]:
    """Sort by value, refining until consecutive isolating boxes are disjoint."""
    for _ in range(4096):
        xs = sorted(xs, key=lambda x: x.interval.mid)
        clash = False
        for a, b in zip(xs, xs[1:]):
            if a.hi >= b.lo:
                if a.exact is not None and b.exact is not None:
                    raise SeparationFailure("repeated station x-coordinate")
                clash = True
                w = max(a.width, b.width) / 2
                a.refine(w)
                b.refine(w)
        if not clash:
            return xs
    raise SeparationFailure("station x-coordinates could not be separated")


def _third_points(a: RealAlgebraic, b: RealAlgebraic):
    """Rational points at 1/3 and 2/3 of the way from ``a`` to ``b``, strictly between them."""
    while True:
        ma, mb = a.interval.mid, b.interval.mid
        x1, x2 = ma + (mb - ma) / 3, ma + 2 * (mb - ma) / 3
        if a.hi < x1 and x2 < b.lo:
            return x1, x2
        w = (mb - ma) / 8
        a.refine(w)
        b.refine(w)


def build_stations(criticals: List[CriticalPoint],
                   lines: Optional[List[RealAlgebraic]] = None) -> List[Station]:
    """Stations for sorted, x-disjoint critical points and vertical lines."""
    interest: List[Tuple[RealAlgebraic, StationKind, Optional[CriticalPoint]]] = \
        [(c.x, StationKind.CRITICAL, c) for c in criticals]
    interest += [(x, StationKind.LINE, None) for x in (lines or [])]
    if not interest:
        return []
    order = {id(x): k for k, x in enumerate(_separate([t[0] for t in interest]))}
    interest.sort(key=lambda t: order[id(t[0])])
    xs = [t[0] for t in interest]
    lo, hi = xs[0].lo, xs[-1].hi
    pad = max(Fraction(1), (hi - lo) / 4)
    pts: List[Tuple[RealAlgebraic, StationKind, Optional[CriticalPoint]]] = \
        [(RealAlgebraic.rational(lo - pad), StationKind.SENTINEL, None)]
    for k, item in enumerate(interest):
        if k:
            x1, x2 = _third_points(interest[k - 1][0], item[0])
            pts.append((RealAlgebraic.rational(x1), StationKind.INTERMEDIATE, None))
            pts.append((RealAlgebraic.rational(x2), StationKind.INTERMEDIATE, None))
        pts.append(item)
    pts.append((RealAlgebraic.rational(hi + pad), StationKind.SENTINEL, None))
    return [Station(i, x, kind, c) for i, (x, kind, c) in enumerate(pts)]


# --- fibres -------------------------------------------------------------------


def _brackets(crit_y, lo: Fraction, hi: Fraction) -> bool:
    """Whether the root represented by ``crit_y`` lies in the open interval ``(lo, hi)``."""
    if crit_y.exact is not None:
        return lo < crit_y.exact < hi
    if isinstance(crit_y, RealAlgebraic):
        return D.sign_at(crit_y.poly, lo) != D.sign_at(crit_y.poly, hi)
    return crit_y._sign(lo) != crit_y._sign(hi)


def _equals(crit_y, v: Fraction) -> bool:
    if crit_y.exact is not None:
        return crit_y.exact == v
    if isinstance(crit_y, RealAlgebraic):
        return D.sign_at(crit_y.poly, v) == 0 and crit_y.lo < v < crit_y.hi
    return crit_y._sign(v) == 0


def compute_fiber(f_dense, station: Station, budget: int = DEFAULT_BUDGET) -> Fiber:
    """Isolate the curve's real roots over ``station`` and mark the critical one."""
    roots = real_roots_at(f_dense, station.x, budget)
    fib = Fiber(station, roots)
    if station.kind is StationKind.CRITICAL:
        cy = station.critical.y
        hits = []
        for i, r in enumerate(roots):
            if r.exact is not None:
                if _equals(cy, r.exact):
                    hits.append(i)
            elif _brackets(cy, r.lo, r.hi):
                hits.append(i)
        if len(hits) != 1:
            raise SeparationFailure(
                f"critical root not unique on fibre {station.index} ({len(hits)} candidates)")
        fib.marked = hits[0]
    return fib


# --- connection -----------------------------------------------------------------


def _pairing(crit: Fiber, other: Fiber) -> List[Tuple[int, int]]:
    n, c, m = len(crit), len(other), crit.marked
    above = n - 1 - m
    if c < n - 1:
        raise TopologyInconsistent(
            f"fibre {other.station_index} has {c} roots, fewer than the {n - 1} "
            f"regular branches at critical fibre {crit.station_index}")
    pairs = [(k, k) for k in range(m)]
    pairs += [(n - 1 - k, c - 1 - k) for k in range(above)]
    pairs += [(m, j) for j in range(m, c - above)]
    return pairs


def connect_pair(a: Fiber, b: Fiber) -> List[Tuple[int, int]]:
    """Root-index pairs ``(i in a, j in b)`` joined by an arc between adjacent fibres."""
    if a.marked is not None and b.marked is not None:
        raise TopologyInconsistent("two adjacent critical fibres")
    if a.marked is not None:
        return _pairing(a, b)
    if b.marked is not None:
        return [(i, j) for j, i in _pairing(b, a)]
    if len(a) != len(b):
        raise TopologyInconsistent(
            f"fibres {a.station_index} and {b.station_index} have {len(a)} and {len(b)} roots")
    return [(k, k) for k in range(len(a))]


def _y_mid(r, width: Fraction) -> Fraction:
    if r.exact is not None:
        return r.exact
    r.refine(width)
    return r.interval.mid


def connect(fibers: List[Fiber], precision_width: Fraction = Fraction(1, 1 << 40),
            shear_t: Fraction = Fraction(0)) -> CurveGraph:
    """Join consecutive fibres into a :class:`CurveGraph`."""
    g = CurveGraph(shear_t=Fraction(shear_t), n_stations=len(fibers))
    if not fibers:
        return g
    ids: List[List[int]] = []
    ys: List[Fraction] = []
    for fib in fibers:
        st = fib.station
        x = st.x.exact if st.x.exact is not None else _y_mid(st.x, precision_width)
        row = []
        for k, r in enumerate(fib.roots):
            flags = set()
            if k == fib.marked:
                flags.add("critical")
                flags.add("singular" if st.critical.kind is Kind.SINGULAR else "vertical_tangent")
                if not st.critical.kind_certified:
                    flags.add("uncertified")
            if st.kind is StationKind.SENTINEL:
                flags.add("sentinel")
            y = _y_mid(r, precision_width)
            ys.append(y)
            v = Vertex(len(g.vertices), st.index, k, x, y, frozenset(flags))
            g.vertices.append(v)
            row.append(v.id)
        ids.append(row)
    for s in range(len(fibers) - 1):
        for i, j in connect_pair(fibers[s], fibers[s + 1]):
            g.edges.append((ids[s][i], ids[s + 1][j]))

    x0, x1 = fibers[0].station.x.exact, fibers[-1].station.x.exact
    if ys:
        lo, hi = min(ys), max(ys)
        c, h = (lo + hi) / 2, max((hi - lo) / 2, Fraction(1, 2))
    else:
        c, h = Fraction(0), Fraction(1, 2)
    g.bbox = (x0, c - Fraction(5, 4) * h, x1, c + Fraction(5, 4) * h)

    for s, fib in enumerate(fibers):
        if fib.kind is not StationKind.LINE:
            continue
        x = g.vertices[ids[s][0]].x if ids[s] else _y_mid(fib.station.x, precision_width)
        bot = Vertex(len(g.vertices), s, -1, x, g.bbox[1], frozenset({"line"}))
        g.vertices.append(bot)
        top = Vertex(len(g.vertices), s, len(fib), x, g.bbox[3], frozenset({"line"}))
        g.vertices.append(top)
        chain = [bot.id] + ids[s] + [top.id]
        for vid in ids[s]:
            g.vertices[vid].flags = g.vertices[vid].flags | {"line", "singular"}
        g.edges += list(zip(chain, chain[1:]))

    for v in g.vertices:
        if "critical" in v.flags and g.degree(v.id) == 0:
            v.flags = v.flags | {"isolated"}
    return g


# --- whole pipeline step ------------------------------------------------------------


def build_graph(model: GenericModel, budget: int = DEFAULT_BUDGET,
                precision_width: Fraction = Fraction(1, 1 << 40)):
    """Stations, fibres and graph for a generic model."""
    stations = build_stations(model.criticals, model.vertical_lines)
    P = model.analysis.P
    fibers = [compute_fiber(P, st, budget) for st in stations]
    return fibers, connect(fibers, precision_width, model.shear_t)


@dataclass
class SchematicLayout:
    coords: Dict[int, Tuple[int, int]]

    def __getitem__(self, vid):
        return self.coords[vid]

    def __len__(self):
        return len(self.coords)


def schematic_layout(g: CurveGraph) -> SchematicLayout:
    """Grid coordinates ``(station index, 1-based rank)``.

    Vertical-line end points take rank 0 and ``len(fibre) + 1``.
    """
    return SchematicLayout({v.id: (v.station, v.rank + 1) for v in g.vertices})


def components(g: CurveGraph) -> int:
    parent = {v.id: v.id for v in g.vertices}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in g.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in parent})


def degree_sequence(g: CurveGraph) -> List[int]:
    deg = {v.id: 0 for v in g.vertices}
    for a, b in g.edges:
        deg[a] += 1
        deg[b] += 1
    return sorted(deg.values(), reverse=True)


def column_counts(fibers: List[Fiber]) -> List[int]:
    return [len(f) for f in fibers]


def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p, q, r) -> bool:
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segments_cross(a, b, c, d) -> bool:
    """Whether closed segments ``ab`` and ``cd`` meet anywhere except a shared end point."""
    shared = {a, b} & {c, d}
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if shared:
        if len(shared) == 2:
            return True
        # sharing one end point: they overlap only if collinear and pointing the same way
        if o1 == 0 and o2 == 0:
            s = shared.pop()
            u = b if a == s else a
            w = d if c == s else c
            return (u[0] - s[0]) * (w[0] - s[0]) + (u[1] - s[1]) * (w[1] - s[1]) > 0
        return False
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and _on_segment(a, b, c)) or (o2 == 0 and _on_segment(a, b, d))
            or (o3 == 0 and _on_segment(c, d, a)) or (o4 == 0 and _on_segment(c, d, b)))


def crossing_edges(g: CurveGraph) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Pairs of straight edges that intersect improperly (exact rational test)."""
    pos = {v.id: (v.x, v.y) for v in g.vertices}
    segs = [(e, pos[e[0]], pos[e[1]]) for e in g.edges]
    out = []
    for i in range(len(segs)):
        e1, a, b = segs[i]
        for j in range(i + 1, len(segs)):
            e2, c, d = segs[j]
            if max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0]):
                continue
            if segments_cross(a, b, c, d):
                out.append((e1, e2))
    return out
