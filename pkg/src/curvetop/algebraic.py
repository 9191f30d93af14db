"""Real algebraic numbers given by a square-free polynomial and an isolating interval.

Values of rational polynomials at such a number are decided exactly: an
interval filter handles the easy case and a GCD with the defining
polynomial settles the rest.  Every zero test also shrinks the defining
polynomial towards the minimal one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from . import _dense as D
from .intervals import RatInterval, centered_eval, dyadic_between


class RealAlgebraic:
    """The unique root of ``poly`` inside ``(lo, hi)`` (or the rational ``lo == hi``).

    ``poly`` is a square-free primitive integer coefficient list.  Instances
    refine themselves in place; the number they denote never changes.
    """

    __slots__ = ("poly", "lo", "hi", "exact", "_slo")

    def __init__(self, poly, lo, hi=None):
        hi = lo if hi is None else hi
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        self.poly = D.primitive(list(poly)) if poly else []
        self.exact: Optional[Fraction] = self.lo if self.lo == self.hi else None
        self._slo = 0 if self.exact is not None else D.sign_at(self.poly, self.lo)
        if self.exact is None and (self._slo == 0 or D.sign_at(self.poly, self.hi) == 0):
            raise ValueError("interval endpoints must not be roots")

    @classmethod
    def rational(cls, v) -> "RealAlgebraic":
        v = Fraction(v)
        return cls([-v.numerator, v.denominator], v, v)

    @property
    def interval(self) -> RatInterval:
        return RatInterval(self.lo, self.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        if self.exact is not None:
            return f"RealAlgebraic({self.exact})"
        return f"RealAlgebraic(~{float(self):.6g} in [{self.lo}, {self.hi}])"

    def refine(self, width) -> RatInterval:
        """Bisect until the isolating interval is at most ``width`` wide."""
        width = Fraction(width)
        while self.exact is None and self.hi - self.lo > width:
            self.bisect()
        return self.interval

    def refine_bits(self, bits: int) -> RatInterval:
        return self.refine(Fraction(1, 1 << bits))

    def bisect(self):
        if self.exact is not None:
            return
        m = dyadic_between(self.lo, self.hi)
        s = D.sign_at(self.poly, m)
        if s == 0:
            self.lo = self.hi = self.exact = m
            self._slo = 0
        elif s == self._slo:
            self.lo = m
        else:
            self.hi = m

    def eval_interval(self, a, bits: Optional[int] = None) -> RatInterval:
        """Enclosure of ``a(self)`` for a dense rational polynomial ``a``."""
        if self.exact is not None:
            return RatInterval.point(D.evaluate(a, self.exact))
        return centered_eval(a, self.interval, bits)

    def _set_poly(self, poly):
        self.poly = D.primitive(poly)
        self._slo = D.sign_at(self.poly, self.lo)

    def is_zero(self, a) -> bool:
        """Decide exactly whether the rational polynomial ``a`` vanishes here."""
        a = D.strip(list(a))
        if not a:
            return True
        if self.exact is not None:
            return D.evaluate(a, self.exact) == 0
        if len(a) == 1:
            return False
        for _ in range(2):
            if not self.eval_interval(a, 96).contains_zero():
                return False
            self.refine(self.width / (1 << 32))
            if self.exact is not None:
                return D.evaluate(a, self.exact) == 0
        ai = D.int_primitive(a)
        if len(ai) >= len(self.poly):
            ai = D.primitive(D.prem(ai, self.poly)) if len(self.poly) > 1 else ai
            if not ai:
                return True
        g = D.gcd_int(self.poly, ai)
        if len(g) <= 1:
            return False
        # g divides poly, so it has at most one root (ours) in the interval
        if D.sign_at(g, self.lo) != D.sign_at(g, self.hi):
            self._set_poly(g)
            return True
        self._set_poly(D.exquo(self.poly, g))
        return False

    def sign(self, a) -> int:
        """Exact sign of ``a(self)``."""
        if self.is_zero(a):
            return 0
        while True:
            s = self.eval_interval(a, 128).sign()
            if s:
                return s
            self.refine(self.width / (1 << 16))
            if self.exact is not None:
                return D.sign(D.evaluate(a, self.exact))

    def compare(self, other: "RealAlgebraic") -> int:
        """Sign of ``self - other``."""
        if self.exact is not None and other.exact is not None:
            return D.sign(self.exact - other.exact)
        if self.exact is None and other.exact is None and self.poly == other.poly and \
                self.interval.intersects(other.interval):
            return 0
        g = D.gcd_int(self.poly, other.poly)
        while True:
            if self.hi < other.lo:
                return -1
            if other.hi < self.lo:
                return 1
            if self.exact is not None and other.exact is not None:
                return D.sign(self.exact - other.exact)
            # equal iff both are the root of the common factor
            if len(g) > 1 and self._root_of(g) and other._root_of(g):
                return 0
            if self.exact is None:
                self.bisect()
            if other.exact is None:
                other.bisect()

    def _root_of(self, g) -> bool:
        if self.exact is not None:
            return D.evaluate(g, self.exact) == 0
        return D.sign_at(g, self.lo) != D.sign_at(g, self.hi)
