"""Subresultant chains in Q[x][y] and the resulting eliminant.

The chain is computed with Ducos' variant of the subresultant algorithm
(exact divisions, Lazard's formula for defective blocks).  Only the
*regular* subresultants are recorded: ``S[j]`` has y-degree exactly ``j``
and its leading coefficient is the principal subresultant coefficient
``sres_j``.  All other ``sres_j`` vanish identically.
"""

from __future__ import annotations

from typing import Dict

from . import _dense as D
from .errors import CommonComponent
from .polynomial import BiPoly, UniPoly


def _y_pow_lc(lc, k):
    return D.power(lc, k) if k else [1]


def subresultant_chain(P, Q) -> Dict[int, list]:
    """Regular subresultants of two-level polynomials ``P``, ``Q`` (deg P > deg Q > 0).

    Returns ``{j: S_j}`` for every regular index ``j <= deg Q``.  ``S_0`` is
    the resultant when present; its absence means the resultant vanishes.
    Coefficients are integers when the inputs are.
    """
    p, q = len(P) - 1, len(Q) - 1
    if not (p > q >= 0):
        raise ValueError("need deg P > deg Q >= 0")
    regs: Dict[int, list] = {}
    lcq = Q[-1]
    regs[q] = D.y_scale(Q, _y_pow_lc(lcq, p - q - 1))
    if q == 0:
        return regs
    s = _y_pow_lc(lcq, p - q)
    A, B = Q, D.y_prem(P, D.y_neg(Q))
    while True:
        d = len(A) - 1
        e = len(B) - 1
        if not B:
            break
        delta = d - e
        if delta > 1:
            num = D.y_scale(B, _y_pow_lc(B[-1], delta - 1))
            C = D.y_exquo_scalar(num, _y_pow_lc(s, delta - 1))
        else:
            C = B
        regs[e] = C
        if e == 0:
            break
        B = D.y_exquo_scalar(D.y_prem(A, D.y_neg(B)), D.mul(_y_pow_lc(s, delta), A[-1]))
        A = C
        s = A[-1]
    return regs


def _swap_sign(p, q) -> int:
    return -1 if (p * q) % 2 else 1


def resultant_y(f: BiPoly, g: BiPoly) -> UniPoly:
    """Res_y(f, g) as a polynomial in x (zero if there is a common component)."""
    A, B = f.to_y_dense(), g.to_y_dense()
    if not A or not B:
        return UniPoly((), "x")
    p, q = len(A) - 1, len(B) - 1
    if p == 0 and q == 0:
        return UniPoly((1,), "x")
    if q == 0:
        return UniPoly(tuple(D.power(B[0], p)), "x")
    if p == 0:
        return UniPoly(tuple(D.power(A[0], q)), "x")
    sign = 1
    if p < q:
        A, B, p, q = B, A, q, p
        sign = _swap_sign(p, q)
    if p == q:
        return _resultant_equal_degree(A, B, sign)
    regs = subresultant_chain(A, B)
    r = regs.get(0, [[]])[0]
    return UniPoly(tuple(D.scale(r, sign)), "x")


def _resultant_equal_degree(A, B, sign) -> UniPoly:
    # With C = lc(B) A - lc(A) B of degree c < p, row operations on the
    # Sylvester matrix give Res(A, B) = (-1)^p lc(B)^(-c) Res(B, C).
    p = len(A) - 1
    lb = B[-1]
    C = D.y_sub(D.y_scale(A, lb), D.y_scale(B, A[-1]))
    if not C:
        return UniPoly((), "x")
    c = len(C) - 1
    if c == 0:
        inner = D.power(C[0], p)
    else:
        inner = subresultant_chain(B, C).get(0, [[]])[0]
    s = sign * (-1 if p % 2 else 1)
    return UniPoly(tuple(D.exquo(D.scale(inner, s), D.power(lb, c))), "x")


def eliminant(f: BiPoly, g: BiPoly) -> UniPoly:
    """Square-free part of Res_y(f, g): its real roots contain the x-coordinates
    of all real common zeros of ``f`` and ``g``."""
    if f.deg_y <= 0 or g.deg_y < 0:
        raise ValueError("f must have positive degree in y")
    r = resultant_y(f, g)
    if r.is_zero():
        raise CommonComponent("f and g share a non-constant factor")
    return UniPoly(tuple(D.sqf_part_int(D.int_primitive(list(r.coeffs)))), "x")


def critical_chain(f: BiPoly) -> Dict[int, list]:
    """Subresultant chain of ``f`` and ``df/dy`` over the integers."""
    A = D.y_primitive_int(f.to_y_dense())
    return subresultant_chain(A, D.y_deriv(A))
