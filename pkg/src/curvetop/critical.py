"""Critical points of a plane curve: solutions of ``f = df/dy = 0``.

The x-coordinates come from the square-free eliminant (the resultant of
``f`` and ``df/dy`` with respect to y).  Over each real root ``xi`` the gcd
of ``f(xi, y)`` and ``df/dy(xi, y)`` is read off the subresultant chain, so
every zero test is exact.  In generic position that gcd is a pure power
``(y - y0)^k`` and ``y0`` is a rational function of ``xi``.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import _dense as D
from .algebraic import RealAlgebraic
from .errors import (CommonComponent, GenericityFailure, LeadingCoeffVanishes,
                     NoCriticalPoints, SeparationFailure)
from .intervals import IntervalPoly, RatInterval, centered_eval, dyadic_between
from .polynomial import BiPoly, UniPoly, partial_derivative, shear, split_y_free
from .roots import DEFAULT_BUDGET, Undetermined, isolate_roots, isolate_roots_interval
from .subresultant import subresultant_chain

log = logging.getLogger(__name__)


class Kind(enum.Enum):
    SINGULAR = "singular"
    VERTICAL_TANGENT = "vertical_tangent"


@dataclass(frozen=True)
class Box:
    x: RatInterval
    y: RatInterval

    @property
    def mid(self):
        return self.x.mid, self.y.mid


# --- roots over an algebraic x ------------------------------------------------


class FiberRoot:
    """A real root of ``P(xi, y)`` where ``P(xi, .)`` is square-free.

    Refinement bisects with exact signs: each trial point turns into a
    rational x-polynomial whose sign at ``xi`` is decided exactly.
    """

    __slots__ = ("poly", "xi", "lo", "hi", "exact", "_slo")

    def __init__(self, poly, xi: RealAlgebraic, lo, hi):
        self.poly, self.xi = poly, xi
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        self.exact: Optional[Fraction] = None
        self._slo = self._sign(self.lo)
        if self._slo == 0:
            if self.lo != self.hi:
                raise ValueError("endpoint is a root")
            self.exact = self.lo

    def _sign(self, y: Fraction) -> int:
        h = []
        yk = Fraction(1)
        for c in self.poly:
            h = D.add(h, D.scale(c, yk))
            yk *= y
        return self.xi.sign(h)

    @property
    def interval(self) -> RatInterval:
        return RatInterval(self.lo, self.hi)

    def bisect(self):
        if self.exact is not None:
            return
        m = dyadic_between(self.lo, self.hi)
        s = self._sign(m)
        if s == 0:
            self.lo = self.hi = self.exact = m
        elif s == self._slo:
            self.lo = m
        else:
            self.hi = m

    def refine(self, width) -> RatInterval:
        width = Fraction(width)
        while self.exact is None and self.hi - self.lo > width:
            self.bisect()
        return self.interval

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        return f"FiberRoot(~{float(self):.6g})"


def _y_dense_rational(P, xi: RealAlgebraic):
    return D.strip([D.evaluate(c, xi.exact) for c in P])


def truncate_at(P, xi: RealAlgebraic):
    """Drop leading y-coefficients that vanish at ``xi``."""
    P = list(P)
    while P and xi.is_zero(P[-1]):
        P.pop()
    return P


def gcd_degree_at(chain: Dict[int, list], xi: RealAlgebraic) -> int:
    """Degree of gcd(P(xi, y), Q(xi, y)) from the principal subresultant coefficients."""
    for j in sorted(chain):
        if not xi.is_zero(chain[j][-1]):
            return j
    raise ArithmeticError("no principal subresultant coefficient is nonzero")


def _reduce(P, xi: RealAlgebraic):
    """Reduce coefficients modulo the defining polynomial of ``xi``; integer result."""
    m = xi.poly
    if xi.exact is not None or len(m) <= 1:
        return P
    out = [D.rem_field(c, m) if len(c) >= len(m) else c for c in P]
    out = D.y_strip(out)
    return D.y_to_int(out) if out else out


def sqfree_at(P, xi: RealAlgebraic):
    """A two-level polynomial whose specialisation at ``xi`` is the square-free
    part of ``P(xi, y)`` (same distinct roots, nonvanishing leading coefficient)."""
    P = truncate_at(D.y_to_int(P), xi)
    if len(P) <= 2:
        return P
    chain = subresultant_chain(P, D.y_deriv(P))
    k = gcd_degree_at(chain, xi)
    if k == 0:
        return P
    return _reduce(D.y_pquo(P, chain[k]), xi)


def real_roots_at(P, xi: RealAlgebraic, budget: int = DEFAULT_BUDGET):
    """Distinct real roots of ``P(xi, y)`` in ascending order.

    Rational ``xi`` yields :class:`RealAlgebraic` roots; otherwise
    :class:`FiberRoot` objects isolated with interval coefficients, refining
    ``xi`` until the root structure is certified.
    """
    if xi.exact is not None:
        u = _y_dense_rational(P, xi)
        if len(u) <= 1:
            return []
        a = D.sqf_part_int(D.int_primitive(u))
        rl = isolate_roots(UniPoly(tuple(a)))
        return [RealAlgebraic(a, iv.lo, iv.hi) for iv in rl]
    Q = sqfree_at(P, xi)
    if len(Q) <= 1:
        return []
    for r in range(budget):
        bits = 64 * (r + 1)
        xi.refine_bits(bits)
        if xi.exact is not None:
            return real_roots_at(P, xi, budget)
        cs = [xi.eval_interval(c, bits + 64) for c in Q]
        if cs[-1].contains_zero():
            continue
        rl = isolate_roots_interval(IntervalPoly(tuple(cs)), budget)
        if rl is Undetermined:
            continue
        return [FiberRoot(Q, xi, iv.lo, iv.hi) for iv in rl]
    raise SeparationFailure(f"could not isolate fibre roots over x ~ {float(xi):.6g}")


def _linear_root(a1, a0, xi: RealAlgebraic) -> FiberRoot:
    """The root of ``a1(xi) y + a0(xi)`` as a refinable :class:`FiberRoot`."""
    P = [a0, a1]
    w = Fraction(1, 1 << 20)
    for _ in range(200):
        xi.refine(xi.width / 2 if xi.exact is None else 0)
        v = -xi.eval_interval(a0, 256) / xi.eval_interval(a1, 256) \
            if not xi.eval_interval(a1, 256).contains_zero() else None
        if v is None:
            continue
        lo, hi = v.lo - w, v.hi + w
        try:
            return FiberRoot(P, xi, lo, hi)
        except ValueError:
            w /= 3
    raise SeparationFailure("linear root did not separate")


# --- critical points ----------------------------------------------------------


@dataclass
class CriticalPoint:
    """A solution of ``f = f_y = 0`` with its classification.

    ``x`` and ``y`` are refinable exact representations; ``box`` reports the
    current isolating intervals.
    """

    x: RealAlgebraic
    y: object
    kind: Kind
    kind_certified: bool
    gcd_degree: int = 1

    @property
    def box(self) -> Box:
        return Box(self.x.interval, self.y.interval)

    @property
    def is_exact(self) -> bool:
        return self.x.exact is not None and getattr(self.y, "exact", None) is not None

    def refine(self, width) -> Box:
        self.x.refine(width)
        self.y.refine(width)
        return self.box

    def __repr__(self):
        return (f"CriticalPoint(x~{float(self.x):.6g}, y~{float(self.y):.6g}, "
                f"{self.kind.value}{'' if self.kind_certified else '?'})")


def classify(box: Box, f: BiPoly, budget: int = DEFAULT_BUDGET, refine=None):
    """Singular or vertical tangent, judged from ``df/dx`` over ``box``.

    With exact coordinates the test is exact.  Otherwise ``df/dx`` is
    evaluated over the box (``refine(k)`` may supply tighter boxes); a value
    interval excluding zero certifies a vertical tangent, while exhausting the
    budget yields an uncertified singular verdict.
    """
    fx = partial_derivative(f, "x")
    if box.x.is_exact and box.y.is_exact:
        v = fx(box.x.lo, box.y.lo)
        return (Kind.SINGULAR if v == 0 else Kind.VERTICAL_TANGENT), True
    dense = fx.to_y_dense()
    for k in range(budget):
        b = refine(k) if refine is not None else box
        val = RatInterval(0, 0)
        yk = RatInterval(1, 1)
        for c in dense:
            val = val + centered_eval(c, b.x, 128) * yk
            yk = (yk * b.y).round_out(256)
        if not val.contains_zero():
            return Kind.VERTICAL_TANGENT, True
        if refine is None:
            break
    return Kind.SINGULAR, False


@dataclass
class _Fibre:
    """Analysis of one real root of the eliminant."""

    xi: RealAlgebraic
    k: int
    single: bool
    points: List[CriticalPoint]


class CriticalAnalysis:
    """Critical points of ``f`` together with the data needed to build fibres."""

    def __init__(self, f: BiPoly, budget: int = DEFAULT_BUDGET):
        if f.deg_y <= 0:
            raise ValueError("f must have positive degree in y")
        self.f = f
        self.budget = budget
        self.P = D.y_primitive_int(f.to_y_dense())
        self.Py = D.y_deriv(self.P)
        self.Px = D.y_strip([D.deriv(c) for c in self.P])
        self.chain = subresultant_chain(self.P, self.Py)
        if 0 not in self.chain:
            raise CommonComponent("f and df/dy share a non-constant factor")
        self.eliminant = D.sqf_part_int(D.int_primitive(self.chain[0][0]))
        rl = isolate_roots(UniPoly(tuple(self.eliminant), "x"))
        self.xs = [RealAlgebraic.rational(iv.lo) if ex else RealAlgebraic(self.eliminant, iv.lo, iv.hi)
                   for iv, ex in zip(rl.intervals, rl.exact)]
        self.fibres = [self._analyse(xi) for xi in self.xs]

    # -- per-fibre work --

    def _analyse(self, xi: RealAlgebraic) -> _Fibre:
        if xi.is_zero(self.P[-1]):
            raise LeadingCoeffVanishes(f"leading y-coefficient vanishes at x ~ {float(xi):.6g}")
        k = gcd_degree_at(self.chain, xi)
        S = self.chain[k]
        single = self._is_pure_power(S, k, xi)
        pts: List[CriticalPoint] = []
        if xi.exact is not None:
            for y in real_roots_at(S, xi, self.budget):
                kind = self._kind_rational(xi, y)
                pts.append(CriticalPoint(xi, y, kind, True, k))
        elif single:
            a1, a0 = D.scale(S[k], k), S[k - 1]
            y = _linear_root(a1, a0, xi)
            kind = self._kind_single(xi, S, k)
            pts.append(CriticalPoint(xi, y, kind, True, k))
        else:
            for y in real_roots_at(S, xi, self.budget):
                pt = CriticalPoint(xi, y, Kind.SINGULAR, False, k)
                pt.kind, pt.kind_certified = self._kind_interval(pt)
                if not pt.kind_certified:
                    log.warning("uncertified singular verdict at x ~ %.6g", float(xi))
                pts.append(pt)
        return _Fibre(xi, k, single, pts)

    def _is_pure_power(self, S, k, xi) -> bool:
        """Whether ``S(xi, y)`` is proportional to ``(y - y0)^k``."""
        if k <= 1:
            return True
        ak, ak1 = S[k], S[k - 1]
        lin = [ak1, D.scale(ak, k)]  # k a_k y + a_{k-1}
        rhs = D.y_scale(_y_power(lin, k), ak)
        lhs = D.y_scale(S, D.power(D.scale(ak, k), k))
        diff = D.y_sub(lhs, rhs)
        return all(xi.is_zero(c) for c in diff)

    def _kind_rational(self, xi, y) -> Kind:
        fx = D.strip([D.evaluate(c, xi.exact) for c in self.Px])
        if not fx:
            return Kind.SINGULAR
        fxi = D.int_primitive(fx)
        return Kind.SINGULAR if y.is_zero(fxi) else Kind.VERTICAL_TANGENT

    def _kind_single(self, xi, S, k) -> Kind:
        # f_x(xi, y0) with y0 = -a_{k-1} / (k a_k), cleared of denominators
        num, den = D.neg(S[k - 1]), D.scale(S[k], k)
        d = len(self.Px) - 1
        h = []
        for j, c in enumerate(self.Px):
            if c:
                h = D.add(h, D.mul(c, D.mul(D.power(num, j), D.power(den, d - j))))
        if len(h) >= len(xi.poly) > 1:
            h = D.rem_field(h, xi.poly)
        return Kind.SINGULAR if xi.is_zero(h) else Kind.VERTICAL_TANGENT

    def _kind_interval(self, pt: CriticalPoint):
        def tighter(step):
            pt.x.refine(pt.x.width / (1 << 16) if pt.x.exact is None else 0)
            pt.y.refine(pt.y.interval.width / (1 << 16))
            return pt.box

        return classify(pt.box, self.f, self.budget, tighter)

    # -- results --

    @property
    def critical_points(self) -> List[CriticalPoint]:
        return [p for fb in self.fibres for p in fb.points]

    @property
    def is_generic(self) -> bool:
        """One complex critical point above every real eliminant root."""
        return all(fb.single and len(fb.points) == 1 for fb in self.fibres)


def _y_power(a, k):
    out = [[1]]
    for _ in range(k):
        out = D.y_mul(out, a)
    return out


def solve_system(f: BiPoly, budget: int = DEFAULT_BUDGET) -> List[CriticalPoint]:
    """All real solutions of ``f = df/dy = 0``, sorted by x then y."""
    return CriticalAnalysis(f, budget).critical_points


# --- genericity -----------------------------------------------------------------


def shear_schedule(max_retries: Optional[int] = None) -> List[Fraction]:
    ts = [Fraction(0)]
    for e in range(6, -1, -1):
        t = Fraction(1, 1 << e)
        ts += [t, -t]
    return ts if max_retries is None else ts[:max_retries]


@dataclass
class GenericModel:
    """A curve sheared into generic position with its critical points."""

    original_f: BiPoly
    sheared_f: BiPoly
    shear_t: Fraction
    criticals: List[CriticalPoint]
    analysis: CriticalAnalysis
    vertical_lines: List[RealAlgebraic] = field(default_factory=list)
    attempts: List[dict] = field(default_factory=list)

    @property
    def curve(self) -> BiPoly:
        """The part of ``sheared_f`` handled by fibres (vertical lines split off)."""
        return self.analysis.f


def _try_shear(f: BiPoly, t: Fraction, budget: int):
    g = shear(f, t)
    lines: List[RealAlgebraic] = []
    curve = g
    if t == 0:
        c, rest = split_y_free(g)
        if c.total_degree > 0:
            cpoly = D.sqf_part_int(D.int_primitive(c.to_y_dense()[0]))
            rl = isolate_roots(UniPoly(tuple(cpoly), "x"))
            lines = [RealAlgebraic.rational(iv.lo) if ex else RealAlgebraic(cpoly, iv.lo, iv.hi)
                     for iv, ex in zip(rl.intervals, rl.exact)]
            curve = rest
    if curve.deg_y <= 0:
        return g, None, lines, "no y-dependent component"
    an = CriticalAnalysis(curve, budget)
    if not an.critical_points:
        return g, an, lines, "empty"
    if not an.is_generic:
        return g, an, lines, "critical points share an x-coordinate"
    for ln in lines:
        if ln.is_zero(an.eliminant):
            return g, an, lines, "vertical line through a critical x-coordinate"
    return g, an, lines, None


def ensure_generic(f: BiPoly, max_retries: Optional[int] = None,
                   budget: int = DEFAULT_BUDGET, shears: Optional[Sequence] = None) -> GenericModel:
    """Shear ``f`` along the retry schedule until it is in generic position.

    Raises :class:`NoCriticalPoints` when no attempt produced any critical
    point and :class:`GenericityFailure` (or the last separation failure)
    otherwise.
    """
    schedule = [Fraction(t) for t in shears] if shears is not None else shear_schedule(max_retries)
    attempts = []
    saw_critical = False
    last_error = None
    for t in schedule:
        try:
            g, an, lines, reason = _try_shear(f, t, budget)
        except (CommonComponent, LeadingCoeffVanishes, SeparationFailure) as exc:
            attempts.append({"shear": str(t), "reason": f"{type(exc).__name__}: {exc}"})
            log.info("shear %s rejected: %s", t, exc)
            saw_critical = saw_critical or not isinstance(exc, CommonComponent)
            last_error = exc
            continue
        if reason is None:
            attempts.append({"shear": str(t), "reason": "accepted"})
            crit = sorted(an.critical_points, key=lambda p: (p.x.lo, p.x.hi))
            return GenericModel(f, g, t, crit, an, lines, attempts)
        if reason != "empty" and reason != "no y-dependent component":
            saw_critical = True
        attempts.append({"shear": str(t), "reason": reason})
        log.info("shear %s rejected: %s", t, reason)
    if not saw_critical:
        exc = NoCriticalPoints("no critical points after all perturbation retries")
    elif isinstance(last_error, SeparationFailure):
        exc = last_error
    else:
        exc = GenericityFailure(f"no shear in {[str(t) for t in schedule]} gave generic position")
    exc.attempts = attempts
    raise exc
