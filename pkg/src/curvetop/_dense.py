"""Dense univariate and two-level (Q[x][y]) polynomial kernels.

Polynomials are plain lists of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.  Coefficients may be ``int``
or ``Fraction``; the integer routines keep everything in ``int`` so that
exact divisions stay cheap.

Two-level polynomials are lists (indexed by the y-degree) of dense
x-polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List

Dense = List  # list of int | Fraction, low -> high


def strip(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n] if n != len(a) else a


def degree(a) -> int:
    return len(a) - 1


def lc(a):
    return a[-1] if a else 0


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return strip(out)


def neg(a):
    return [-c for c in a]


def scale(a, c):
    if not c:
        return []
    return [c * v for v in a]


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if not u:
            continue
        for j, v in enumerate(b):
            out[i + j] += u * v
    return strip(out)


def shift_up(a, k):
    """Multiply by ``var**k``."""
    return [0] * k + list(a) if a else []


def power(a, n):
    out = [1]
    base = a
    while n:
        if n & 1:
            out = mul(out, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return out


def deriv(a):
    return strip([i * a[i] for i in range(1, len(a))])


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _exdiv(a, b):
    """Exact scalar division that stays in ``int`` when possible."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return Fraction(a) / b


def divmod_field(a, b):
    """Euclidean division over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    db = len(b) - 1
    inv = Fraction(1) / Fraction(b[-1])
    q = [Fraction(0)] * max(0, len(r) - db)
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1] * inv
        q[k] = c
        for i, v in enumerate(b):
            r[i + k] -= c * v
        r = strip(r[:-1]) if not r[-1] else strip(r)
    return strip(q), strip(r)


def rem_field(a, b):
    return divmod_field(a, b)[1]


def exquo(a, b):
    """Exact division ``a / b``; raises if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        raise ArithmeticError("inexact polynomial division")
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            c = _exdiv(c, lb)
            q[k] = c
            for i, v in enumerate(b):
                r[i + k] -= c * v
    if any(r[:db]):
        raise ArithmeticError("inexact polynomial division")
    return strip(q)


def exquo_scalar(a, c):
    return [_exdiv(v, c) for v in a]


def prem(a, b):
    """Pseudo-remainder: ``lc(b)**(deg a - deg b + 1) * a`` modulo ``b``."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return list(a)
    r = list(a)
    lb = b[-1]
    for k in range(da - db, -1, -1):
        c = r[k + db] if k + db < len(r) else 0
        r = [lb * v for v in r]
        if c:
            for i, v in enumerate(b):
                r[i + k] -= c * v
        r = r[: k + db]
    return strip(r)


def content(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Integer primitive part with positive leading coefficient."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def to_int(a):
    """Return ``(ints, den)`` with ``a == ints / den``."""
    den = 1
    for c in a:
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    if den == 1:
        return [int(c) for c in a], 1
    return [int(c * den) for c in a], den


def int_primitive(a):
    """Scale a rational polynomial to a primitive integer one."""
    return primitive(to_int(a)[0])


def monic(a):
    if not a:
        return []
    inv = Fraction(1) / Fraction(a[-1])
    return [Fraction(c) * inv for c in a]


def gcd_int(a, b):
    """GCD of integer polynomials by the primitive PRS (positive lc)."""
    a, b = primitive(strip(list(a))), primitive(strip(list(b)))
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    while b:
        r = prem(a, b)
        a, b = b, primitive(r)
    return a


def gcd_field(a, b):
    """Monic GCD over Q."""
    if not a and not b:
        return []
    ia, ib = int_primitive(a), int_primitive(b)
    return monic(gcd_int(ia, ib))


def sqf_part_int(a):
    """Square-free part of an integer polynomial, primitive."""
    a = primitive(a)
    if len(a) <= 2:
        return a
    g = gcd_int(a, deriv(a))
    if len(g) == 1:
        return a
    return primitive(exquo(a, g))


def sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_at(a, x: Fraction) -> int:
    """Sign of an integer polynomial at a rational point, integer-only."""
    if not a:
        return 0
    if isinstance(x, int) or x.denominator == 1:
        return sign(evaluate(a, int(x)))
    p, q = x.numerator, x.denominator
    acc = 0
    qp = 1
    # homogenised Horner: sum a_i p^i q^(n-i)
    for c in reversed(a):
        acc = acc * p + c * qp
        qp *= q
    return sign(acc)


def taylor_shift(a, c):
    """Coefficients of ``a(x + c)``."""
    out = list(a)
    n = len(out)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            out[k] += c * out[k + 1]
    return strip(out)


# --- two-level polynomials: y-polynomials with x-polynomial coefficients ---


def y_strip(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n]


def y_degree(a) -> int:
    return len(a) - 1


def y_lc(a):
    return a[-1] if a else []


def y_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = add(out[i], c)
    return y_strip(out)


def y_sub(a, b):
    out = list(a) + [[] for _ in range(max(0, len(b) - len(a)))]
    for i, c in enumerate(b):
        out[i] = sub(out[i], c)
    return y_strip(out)


def y_neg(a):
    return [neg(c) for c in a]


def y_scale(a, c):
    """Multiply each coefficient by the x-polynomial ``c``."""
    if not c:
        return []
    return y_strip([mul(v, c) for v in a])


def y_exquo_scalar(a, c):
    """Exactly divide each coefficient by the x-polynomial ``c``."""
    return [exquo(v, c) if v else [] for v in a]


def y_mul(a, b):
    if not a or not b:
        return []
    out = [[] for _ in range(len(a) + len(b) - 1)]
    for i, u in enumerate(a):
        if not u:
            continue
        for j, v in enumerate(b):
            if v:
                out[i + j] = add(out[i + j], mul(u, v))
    return y_strip(out)


def y_deriv(a):
    return y_strip([scale(a[i], i) for i in range(1, len(a))])


def y_prem(a, b):
    """Pseudo-remainder in y with x-polynomial coefficients."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return list(a)
    r = list(a)
    lb = b[-1]
    for k in range(da - db, -1, -1):
        c = r[k + db] if k + db < len(r) else []
        r = [mul(v, lb) for v in r]
        if c:
            for i, v in enumerate(b):
                r[i + k] = sub(r[i + k], mul(c, v))
        r = r[: k + db]
    return y_strip(r)


def y_pquo(a, b):
    """Pseudo-quotient: ``q`` with ``lc(b)**(da-db+1) a = q b + r``."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return []
    r = list(a)
    lb = b[-1]
    q = [[] for _ in range(da - db + 1)]
    for k in range(da - db, -1, -1):
        c = r[k + db] if k + db < len(r) else []
        r = [mul(v, lb) for v in r]
        q = [mul(v, lb) for v in q]
        if c:
            q[k] = add(q[k], c)
            for i, v in enumerate(b):
                r[i + k] = sub(r[i + k], mul(c, v))
        r = r[: k + db]
    return y_strip(q)


def y_eval_x(a, x):
    """Specialise x, giving a dense y-polynomial."""
    return strip([evaluate(c, x) for c in a])


def y_content(a):
    """GCD over Q[x] of the coefficients, as a primitive integer x-poly."""
    g = []
    for c in a:
        if c:
            g = gcd_int(g, to_int(c)[0]) if g else primitive(to_int(c)[0])
            if len(g) == 1:
                return [1]
    return g or [1]


def y_to_int(a):
    """Scale a two-level rational polynomial to integer coefficients."""
    den = 1
    for c in a:
        for v in c:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
    return [[int(v * den) for v in c] for c in a]


def y_primitive_int(a):
    """Integer coefficients, common integer content removed, lc(lc) > 0."""
    a = y_to_int(a)
    g = 0
    for c in a:
        for v in c:
            g = gcd(g, v)
    if not g:
        return []
    if a[-1][-1] < 0:
        g = -g
    return [[v // g for v in c] for c in a]


def y_exquo(a, b):
    """Exact division in Q[x][y]."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [list(c) for c in a]
    db = len(b) - 1
    if len(r) - 1 < db:
        if r:
            raise ArithmeticError("inexact polynomial division")
        return []
    q = [[] for _ in range(len(r) - db)]
    lb = b[-1]
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            c = exquo(c, lb)
            q[k] = c
            for i, v in enumerate(b):
                r[i + k] = sub(r[i + k], mul(c, v))
    if any(r[:db]):
        raise ArithmeticError("inexact polynomial division")
    return y_strip(q)


def y_gcd(a, b):
    """GCD in Q[x][y] (integer coefficients, primitive)."""
    a, b = y_primitive_int(a), y_primitive_int(b)
    if not a:
        return b
    if not b:
        return a
    ca, cb = y_content(a), y_content(b)
    c = gcd_int(ca, cb)
    a = y_exquo_scalar(a, ca)
    b = y_exquo_scalar(b, cb)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = y_prem(a, b)
        if not r:
            break
        r = y_primitive_int(r)
        r = y_exquo_scalar(r, y_content(r))
        a, b = b, r
    else:
        # b has y-degree 0: only the content survives
        return y_primitive_int([c])
    return y_primitive_int(y_scale(b, c))
