"""Real root isolation and refinement for univariate polynomials.

Rational coefficients go through exact Sturm sequences; polynomials whose
coefficients are only known up to intervals use Descartes' rule of signs on
Moebius-transformed interval coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import _dense as D
from .errors import NotIsolating
from .intervals import IntervalPoly, RatInterval, dyadic_between, horner
from .polynomial import UniPoly

RATIONAL_ROOT_CUTOFF = 10**6
DEFAULT_BUDGET = 64


@dataclass(frozen=True)
class RootList:
    """Disjoint, increasing isolating intervals; ``exact[i]`` marks rational roots."""

    intervals: Tuple[RatInterval, ...] = ()
    exact: Tuple[bool, ...] = ()

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, i):
        return self.intervals[i]


class _Undetermined:
    """Returned when the root structure is not constant over a coefficient box."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Undetermined"

    def __bool__(self):
        return False


Undetermined = _Undetermined()


# --- Sturm sequences -------------------------------------------------------


def sturm_sequence(p: UniPoly) -> List[UniPoly]:
    """Exact Sturm chain ``p, p', -rem(p, p'), ...`` ending at a constant."""
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        seq.append(-(seq[-2] % seq[-1]))
    if seq[-1].is_zero():
        seq.pop()
    return seq


def _sturm_int(a) -> List[list]:
    """Sturm chain of a square-free integer polynomial, each member scaled by a
    positive constant so all arithmetic stays in integers."""
    seq = [a, D.primitive(D.deriv(a))] if len(a) > 1 else [a]
    if seq[-1] and seq[-1][-1] < 0:
        seq[-1] = D.neg(seq[-1])
    while len(seq[-1]) > 1:
        u, v = seq[-2], seq[-1]
        r = D.prem(u, v)
        # prem = lc(v)^(du-dv+1) * rem; fix the sign of that multiplier
        if v[-1] < 0 and (len(u) - len(v) + 1) % 2:
            r = D.neg(r)
        r = D.neg(r)
        if not r:
            break
        g = D.content(r)
        seq.append([c // g for c in r])
    return seq


def _variations(signs) -> int:
    v = 0
    last = 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def _var_at(seq, x) -> int:
    return _variations(D.sign_at(s, x) for s in seq)


def sturm_count(p: UniPoly, a, b) -> int:
    """Number of distinct real roots of ``p`` in ``(a, b]``."""
    a_int = D.sqf_part_int(p.to_int())
    seq = _sturm_int(a_int)
    return _var_at(seq, Fraction(a)) - _var_at(seq, Fraction(b))


def cauchy_bound(coeffs) -> Fraction:
    """``1 + max|c_i| / |c_n|``: every real root lies strictly inside."""
    lead = abs(Fraction(coeffs[-1]))
    return 1 + max((abs(Fraction(c)) for c in coeffs[:-1]), default=Fraction(0)) / lead


def _pow2_above(v: Fraction) -> Fraction:
    k = 1
    while k <= v:
        k *= 2
    return Fraction(k)


# --- exact isolation ---------------------------------------------------------


def _bisect_sign(a_int, lo: Fraction, hi: Fraction, slo: int, width: Fraction):
    """Bisect an isolating interval of a square-free integer polynomial.

    Returns ``(lo, hi, exact)``; ``exact`` is set if a split point hit the root.
    """
    while hi - lo > width:
        m = dyadic_between(lo, hi)
        sm = D.sign_at(a_int, m)
        if sm == 0:
            return m, m, True
        if sm == slo:
            lo = m
        else:
            hi = m
    return lo, hi, False


def _detect_rational(a_int, lo, hi, slo):
    """Exact rational root in ``(lo, hi)`` with denominator dividing lc, if any."""
    den = min(abs(a_int[-1]), RATIONAL_ROOT_CUTOFF)
    lo, hi, hit = _bisect_sign(a_int, lo, hi, slo, Fraction(1, 4 * den * den))
    if hit:
        return lo, lo, True
    c = ((lo + hi) / 2).limit_denominator(den)
    if lo < c < hi and D.sign_at(a_int, c) == 0:
        return c, c, True
    return lo, hi, False


def isolate_roots(p: UniPoly) -> RootList:
    """Isolate the distinct real roots of ``p`` in ascending order."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    a = D.sqf_part_int(p.to_int())
    if len(a) <= 1:
        return RootList()
    seq = _sturm_int(a)
    bound = _pow2_above(cauchy_bound(a))
    found: List[Tuple[Fraction, Fraction, bool]] = []
    # (lo, hi) open, neither endpoint a root; vlo/vhi sign variations there
    stack = [(-bound, bound, _var_at(seq, -bound), _var_at(seq, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            found.append((lo, hi, False))
            continue
        m = dyadic_between(lo, hi)
        while D.sign_at(a, m) == 0:
            # keep endpoints off the roots; rational roots are recovered later
            m = dyadic_between(lo, m)
        vm = _var_at(seq, m)
        stack.append((lo, m, vlo, vm))
        stack.append((m, hi, vm, vhi))
    found.sort(key=lambda t: t[0])
    ivs, flags = [], []
    for lo, hi, ex in found:
        if not ex:
            slo = D.sign_at(a, lo)
            lo, hi, ex = _detect_rational(a, lo, hi, slo)
        ivs.append(RatInterval(lo, hi))
        flags.append(ex)
    return RootList(tuple(ivs), tuple(flags))


def refine(p: UniPoly, iv: RatInterval, target_width) -> RatInterval:
    """Shrink an isolating interval of ``p`` to width at most ``target_width``.

    New endpoints are dyadic; the enclosed root is the same one.
    """
    target_width = Fraction(target_width)
    a = D.sqf_part_int(p.to_int())
    if iv.is_exact:
        if D.sign_at(a, iv.lo) != 0:
            raise NotIsolating(f"{iv} is not a root of {p}")
        return iv
    lo, hi = iv.lo, iv.hi
    slo, shi = D.sign_at(a, lo), D.sign_at(a, hi)
    if slo == 0 or shi == 0:
        seq = _sturm_int(a)
        n = _var_at(seq, lo) - _var_at(seq, hi) + (1 if slo == 0 else 0)
        if n != 1:
            raise NotIsolating(f"{iv} holds {n} roots of {p}")
        if slo == 0:
            return RatInterval(lo, lo)
        return RatInterval(hi, hi)
    if slo == shi:
        raise NotIsolating(f"no sign change of {p} on {iv}")
    seq = _sturm_int(a)
    if _var_at(seq, lo) - _var_at(seq, hi) != 1:
        raise NotIsolating(f"{iv} holds several roots of {p}")
    # force dyadic endpoints first
    while lo.denominator & (lo.denominator - 1):
        m = dyadic_between(lo, lo + (hi - lo) / 8)
        sm = D.sign_at(a, m)
        if sm == 0:
            return RatInterval(m, m)
        if sm == slo:
            lo = m
        else:
            hi = m
    while hi.denominator & (hi.denominator - 1):
        m = dyadic_between(hi - (hi - lo) / 8, hi)
        sm = D.sign_at(a, m)
        if sm == 0:
            return RatInterval(m, m)
        if sm == slo:
            lo = m
        else:
            hi = m
    lo, hi, _ = _bisect_sign(a, lo, hi, slo, target_width)
    return RatInterval(lo, hi)


# --- interval coefficients -------------------------------------------------


def _descartes_interval(coeffs: Sequence[RatInterval], a: Fraction, b: Fraction):
    """Sign variations of ``(1+t)^n p((a + b t)/(1 + t))`` or None if uncertain."""
    n = len(coeffs) - 1
    # q(x) = p(a + (b - a) x)
    w = b - a
    q = _iv_taylor_shift(list(coeffs), a)
    wk = Fraction(1)
    for i in range(n + 1):
        q[i] = q[i] * wk
        wk *= w
    q.reverse()
    q = _iv_taylor_shift(q, Fraction(1))
    signs = []
    for c in q:
        s = c.sign()
        if s is None:
            return None
        signs.append(s)
    return _variations(signs)


def _iv_taylor_shift(c: List[RatInterval], s: Fraction) -> List[RatInterval]:
    out = list(c)
    n = len(out)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + out[k + 1] * s
    return out


def isolate_roots_interval(p: IntervalPoly, budget: int = DEFAULT_BUDGET):
    """Isolate real roots simultaneously for every polynomial in a coefficient box.

    Returns a :class:`RootList` valid for all members of the box, or
    :data:`Undetermined` when the root structure cannot be certified within
    ``budget`` subdivision levels (e.g. it is not constant over the box).
    """
    cs = list(p.coeffs)
    if not cs:
        raise ValueError("zero interval polynomial")
    if cs[-1].contains_zero():
        raise ValueError("leading coefficient interval contains zero")
    if len(cs) == 1:
        return RootList()
    if p.is_degenerate():
        return isolate_roots(UniPoly(tuple(c.lo for c in cs)))
    lead = cs[-1]
    lead_min = min(abs(lead.lo), abs(lead.hi))
    big = max(max(abs(c.lo), abs(c.hi)) for c in cs[:-1])
    bound = _pow2_above(1 + big / lead_min)
    out: List[Tuple[Fraction, Fraction]] = []

    def split_point(lo, hi):
        w = hi - lo
        for frac in (Fraction(1, 2), Fraction(3, 7), Fraction(4, 7), Fraction(1, 3), Fraction(2, 3)):
            m = lo + w * frac
            m = dyadic_between(m - w / 16, m + w / 16)
            if horner(cs, RatInterval(m, m)).sign() not in (None, 0):
                return m
        return None

    stack = [(-bound, bound, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        v = _descartes_interval(cs, lo, hi)
        if v == 0:
            continue
        if v == 1:
            out.append((lo, hi))
            continue
        if depth >= budget:
            return Undetermined
        m = split_point(lo, hi)
        if m is None:
            return Undetermined
        stack.append((m, hi, depth + 1))
        stack.append((lo, m, depth + 1))
    out.sort()
    return RootList(tuple(RatInterval(lo, hi) for lo, hi in out), tuple(False for _ in out))
