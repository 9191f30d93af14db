import pathlib
from fractions import Fraction

import pytest
import sympy as sp

from curvetop import BiPoly, parse_polynomial

DATA = pathlib.Path(__file__).parent / "data"
APPLE_TEXT = (DATA / "apple.poly").read_text()

CORPUS = {
    "apple": APPLE_TEXT,
    "circle": "x^2 + y^2 - 1",
    "cross": "x^2 - y^2",
    "cusp": "y^2 - x^3",
    "nested": "(x^2 + y^2 - 1)*(x^2 + y^2 - 4)",
    "stacked": "(x^2 + (y-2)^2 - 1)*(x^2 + (y+2)^2 - 1)",
}

X, Y = sp.symbols("x y")


def to_sympy(p: BiPoly):
    return sum((sp.Rational(c.numerator, c.denominator) * X**i * Y**j
                for (i, j), c in p.terms.items()), sp.Integer(0))


def from_sympy(expr) -> BiPoly:
    poly = sp.Poly(sp.expand(expr), X, Y)
    return BiPoly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms() if c != 0})


@pytest.fixture(scope="session")
def apple():
    return parse_polynomial(APPLE_TEXT)


@pytest.fixture(scope="session")
def apple_drawing(apple):
    from curvetop import analyze

    return analyze(apple)
