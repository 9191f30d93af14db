"""Closed intervals with rational endpoints and interval polynomial evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple


def _floor_dyadic(v: Fraction, bits: int) -> Fraction:
    return Fraction((v.numerator << bits) // v.denominator, 1 << bits)


def _ceil_dyadic(v: Fraction, bits: int) -> Fraction:
    return Fraction(-((-v.numerator << bits) // v.denominator), 1 << bits)


def dyadic_between(a: Fraction, b: Fraction) -> Fraction:
    """A dyadic rational with few bits strictly inside ``(a, b)``, near the middle."""
    a, b = Fraction(a), Fraction(b)
    w = b - a
    if w <= 0:
        raise ValueError("empty interval")
    lo, hi = a + w / 4, b - w / 4
    k = 0
    while (1 << k) * w < 4:
        k += 1
    while True:
        c = _ceil_dyadic(lo, k)
        if c <= hi:
            return c
        k += 1


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, v) -> "RatInterval":
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self):
        """+1 / -1 if the interval excludes zero, 0 if it is exactly zero, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def intersects(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __contains__(self, other) -> bool:
        if isinstance(other, RatInterval):
            return self.lo <= other.lo and other.hi <= self.hi
        return self.contains(other)

    def __add__(self, other):
        o = _as_iv(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = _as_iv(other)
        return RatInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return _as_iv(other) - self

    def __mul__(self, other):
        o = _as_iv(other)
        if self.is_exact and o.is_exact:
            v = self.lo * o.lo
            return RatInterval(v, v)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_iv(other)
        if o.contains_zero():
            raise ZeroDivisionError("interval division by an interval containing 0")
        return self * RatInterval(1 / o.hi, 1 / o.lo)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(0, max(-self.lo, self.hi))

    def round_out(self, bits: int) -> "RatInterval":
        """Enclose in an interval with dyadic endpoints of ``bits`` fractional bits."""
        if self.lo.denominator <= (1 << bits) and self.hi.denominator <= (1 << bits):
            if (1 << bits) % self.lo.denominator == 0 and (1 << bits) % self.hi.denominator == 0:
                return self
        return RatInterval(_floor_dyadic(self.lo, bits), _ceil_dyadic(self.hi, bits))

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_iv(v) -> RatInterval:
    if isinstance(v, RatInterval):
        return v
    return RatInterval(v, v)


def horner(coeffs: Sequence, x: RatInterval, bits: int = None) -> RatInterval:
    """Interval Horner evaluation of a dense polynomial (low -> high).

    Coefficients may be numbers or intervals.  With ``bits`` the
    intermediate results are rounded outward to keep endpoints small.
    """
    acc = RatInterval(0, 0)
    for c in reversed(coeffs):
        acc = acc * x + _as_iv(c)
        if bits is not None:
            acc = acc.round_out(bits)
    return acc


def centered_eval(coeffs: Sequence, x: RatInterval, bits: int = None) -> RatInterval:
    """Mean-value form ``p(m) + p'(X) (X - m)``; tighter than Horner on thin boxes."""
    if x.is_exact or len(coeffs) <= 2:
        return horner(coeffs, x, bits)
    m = RatInterval.point(x.mid)
    dp = [i * _as_iv(coeffs[i]) for i in range(1, len(coeffs))]
    v = horner(coeffs, m, bits) + horner(dp, x, bits) * (x - m)
    h = horner(coeffs, x, bits)
    return RatInterval(max(v.lo, h.lo), min(v.hi, h.hi))


@dataclass(frozen=True)
class IntervalPoly:
    """A box of polynomials: each coefficient ranges over its interval."""

    coeffs: Tuple[RatInterval, ...]

    def __post_init__(self):
        cs = [_as_iv(c) for c in self.coeffs]
        while cs and cs[-1].is_exact and cs[-1].lo == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> RatInterval:
        return horner(self.coeffs, _as_iv(x))

    def is_degenerate(self) -> bool:
        return all(c.is_exact for c in self.coeffs)

    def midpoint_poly(self):
        return [c.mid for c in self.coeffs]
