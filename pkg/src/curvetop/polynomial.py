"""Exact univariate and bivariate polynomials over the rationals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Tuple

from . import _dense as D

Monomial = Tuple[int, int]


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``var**i``."""

    coeffs: Tuple[Fraction, ...] = ()
    var: str = "y"

    def __post_init__(self):
        cs = D.strip([_frac(c) for c in self.coeffs])
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "y") -> "UniPoly":
        out = [Fraction(1)]
        for r in roots:
            out = D.mul(out, [-_frac(r), Fraction(1)])
        return cls(tuple(out), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        return D.evaluate(self.coeffs, x)

    def _wrap(self, cs) -> "UniPoly":
        return UniPoly(tuple(cs), self.var)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        return self._wrap(D.add(list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self._wrap(D.sub(list(self.coeffs), list(other.coeffs)))

    def __neg__(self) -> "UniPoly":
        return self._wrap(D.neg(self.coeffs))

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return self._wrap(D.mul(list(self.coeffs), list(other.coeffs)))
        return self._wrap(D.scale(self.coeffs, _frac(other)))

    __rmul__ = __mul__

    def __divmod__(self, other: "UniPoly"):
        q, r = D.divmod_field(list(self.coeffs), list(other.coeffs))
        return self._wrap(q), self._wrap(r)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def derivative(self) -> "UniPoly":
        return self._wrap(D.deriv(self.coeffs))

    def monic(self) -> "UniPoly":
        return self._wrap(D.monic(self.coeffs))

    def to_int(self):
        """Primitive integer coefficient list with the same roots."""
        return D.int_primitive(list(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        bp = BiPoly({(0, i): c for i, c in enumerate(self.coeffs) if c})
        return bp.to_string(("_", self.var))


def gcd_poly(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor."""
    return UniPoly(tuple(D.gcd_field(list(p.coeffs), list(q.coeffs))), p.var)


def square_free_uni(p: UniPoly) -> UniPoly:
    """Monic square-free part."""
    if p.degree <= 0:
        return p.monic() if p.coeffs else p
    g = gcd_poly(p, p.derivative())
    return (p // g).monic()


@dataclass(frozen=True, eq=False)
class BiPoly:
    """Sparse polynomial in x and y with rational coefficients.

    ``terms`` maps ``(e_x, e_y)`` to a nonzero coefficient.
    """

    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {(int(a), int(b)): _frac(c) for (a, b), c in self.terms.items() if c}
        object.__setattr__(self, "terms", clean)

    # construction helpers
    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_y_dense(cls, a) -> "BiPoly":
        return cls({(i, j): c for j, cx in enumerate(a) for i, c in enumerate(cx) if c})

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"BiPoly({self.to_string()!r})"

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    @property
    def deg_x(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            c = _frac(other)
            return BiPoly({m: v * c for m, v in self.terms.items()})
        out: Dict[Monomial, Fraction] = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                k = (a + c, b + d)
                out[k] = out.get(k, 0) + u * v
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        out = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __call__(self, x, y):
        return sum((c * x**a * y**b for (a, b), c in self.terms.items()), Fraction(0))

    def to_y_dense(self):
        """Coefficients in y as dense x-polynomials."""
        if not self.terms:
            return []
        out = [[] for _ in range(self.deg_y + 1)]
        for (a, b), c in self.terms.items():
            row = out[b]
            if len(row) <= a:
                row.extend([0] * (a + 1 - len(row)))
            row[a] = c
        return [D.strip(r) for r in out]

    def to_x_dense(self):
        """Coefficients in x as dense y-polynomials."""
        return BiPoly({(b, a): c for (a, b), c in self.terms.items()}).to_y_dense()

    def leading_y_coeff(self) -> UniPoly:
        d = self.to_y_dense()
        return UniPoly(tuple(d[-1]) if d else (), "x")

    def to_string(self, names=("x", "y")) -> str:
        """Canonical text: graded-lex order, explicit ``*``."""
        if not self.terms:
            return "0"
        xs, ys = names
        parts = []
        for (a, b) in sorted(self.terms, key=lambda m: (-(m[0] + m[1]), -m[0])):
            c = self.terms[(a, b)]
            mono = []
            if a:
                mono.append(xs if a == 1 else f"{xs}^{a}")
            if b:
                mono.append(ys if b == 1 else f"{ys}^{b}")
            mag = abs(c)
            if mono and mag == 1:
                body = "*".join(mono)
            else:
                body = "*".join([str(mag)] + mono)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_string()


def partial_derivative(p: BiPoly, var: str) -> BiPoly:
    if var == "x":
        return BiPoly({(a - 1, b): a * c for (a, b), c in p.terms.items() if a})
    if var == "y":
        return BiPoly({(a, b - 1): b * c for (a, b), c in p.terms.items() if b})
    raise ValueError(f"unknown variable {var!r}")


def specialize_x(p: BiPoly, a) -> UniPoly:
    a = _frac(a)
    return UniPoly(tuple(D.y_eval_x(p.to_y_dense(), a)), "y")


def specialize_y(p: BiPoly, b) -> UniPoly:
    b = _frac(b)
    return UniPoly(tuple(D.y_eval_x(p.to_x_dense(), b)), "x")


def shear(p: BiPoly, t) -> BiPoly:
    """Return ``p(x + t*y, y)``."""
    t = _frac(t)
    if not t:
        return p
    out: Dict[Monomial, Fraction] = {}
    for (a, b), c in p.terms.items():
        # (x + t y)^a y^b
        tk = Fraction(1)
        for k in range(a + 1):
            m = (a - k, b + k)
            out[m] = out.get(m, 0) + c * comb(a, k) * tk
            tk *= t
    return BiPoly(out)


def square_free_part(p: BiPoly) -> BiPoly:
    """Product of the distinct irreducible factors of ``p`` (up to a unit)."""
    if p.is_zero() or p.total_degree <= 0:
        return BiPoly.constant(1) if not p.is_zero() else p
    yfree, rest = split_y_free(p)
    c = UniPoly(tuple(D.sqf_part_int(D.int_primitive(yfree.to_y_dense()[0]))), "x")
    out = BiPoly({(i, 0): v for i, v in enumerate(c.coeffs)})
    if rest.deg_y > 0:
        a = rest.to_y_dense()
        g = D.y_gcd(a, D.y_deriv(a))
        if len(g) > 1:
            a = D.y_exquo(D.y_to_int(a), g)
        out = out * BiPoly.from_y_dense(D.y_primitive_int(a))
    return out


def split_y_free(p: BiPoly) -> Tuple[BiPoly, BiPoly]:
    """Split ``p`` into its content in y (a polynomial in x alone) and the rest.

    The product of the two parts equals ``p`` exactly; the y-free part is a
    primitive integer polynomial with positive leading coefficient.
    """
    if p.is_zero():
        return BiPoly.constant(1), p
    a = p.to_y_dense()
    c = D.y_content(a)
    rest = D.y_exquo_scalar(a, c)
    return BiPoly({(i, 0): v for i, v in enumerate(c)}), BiPoly.from_y_dense(rest)
