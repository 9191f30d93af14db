from fractions import Fraction

import pytest

from curvetop import (Box, GenericityFailure, Kind, LeadingCoeffVanishes, NoCriticalPoints,
                      RatInterval, classify, ensure_generic, parse_polynomial, partial_derivative,
                      shear, solve_system)
from curvetop.critical import CriticalAnalysis, shear_schedule

from conftest import CORPUS

F = Fraction
P = parse_polynomial


def pts(cs):
    return [(c.box.x.lo, c.box.y.lo) for c in cs if c.is_exact]


def test_circle_critical_points():
    cs = solve_system(P("x^2 + y^2 - 1"))
    assert pts(cs) == [(-1, 0), (1, 0)]
    assert all(c.kind is Kind.VERTICAL_TANGENT and c.kind_certified for c in cs)


def test_line_has_no_critical_points():
    assert solve_system(P("y")) == []


def test_apple_critical_points(apple):
    cs = solve_system(apple)
    assert len(cs) == 6
    assert pts(cs) == [(-2, 0), (0, 0), (0, 1), (2, 0)]
    boxed = [c for c in cs if not c.is_exact]
    for c in boxed:
        c.refine(F(1, 10 ** 9))
    got = [(float(c.box.x.mid), float(c.box.y.mid)) for c in boxed]
    assert got[0] == pytest.approx((0.5291336839, 1.4199736832), abs=1e-8)
    assert got[1] == pytest.approx((1.5672797570, -0.8966077392), abs=1e-8)
    kinds = {(float(c.box.x.mid), float(c.box.y.mid)): c.kind for c in cs}
    sing = sorted(k for k, v in kinds.items() if v is Kind.SINGULAR)
    assert sing == [(0.0, 0.0), (0.0, 1.0), pytest.approx((1.5672797570, -0.8966077392), abs=1e-8)]
    assert all(c.kind_certified for c in cs)


def test_apple_singular_points_verified_exactly(apple):
    fx, fy = partial_derivative(apple, "x"), partial_derivative(apple, "y")
    for x, y in ((0, 0), (0, 1)):
        assert apple(x, y) == fx(x, y) == fy(x, y) == 0
    for x in (-2, 2):
        assert apple(x, 0) == fy(x, 0) == 0 and fx(x, 0) != 0


@pytest.mark.parametrize("name", ["circle", "cross", "cusp", "nested", "stacked", "apple"])
def test_boxes_contain_solutions(name):
    f = parse_polynomial(CORPUS[name])
    fy = partial_derivative(f, "y")
    height = max(abs(c) for c in f.terms.values())
    for c in solve_system(f):
        b = c.refine(F(1, 10 ** 8))
        x, y = b.x.mid, b.y.mid
        assert abs(f(x, y)) < 1e-4 * (1 + height)
        assert abs(fy(x, y)) < 1e-4 * (1 + height)


def test_classify_examples():
    cross = P("x^2 - y^2")
    assert classify(Box(RatInterval(0, 0), RatInterval(0, 0)), cross) == (Kind.SINGULAR, True)
    circle = P("x^2 + y^2 - 1")
    assert classify(Box(RatInterval(1, 1), RatInterval(0, 0)), circle) == (Kind.VERTICAL_TANGENT, True)
    assert classify(Box(RatInterval(0, 0), RatInterval(1, 1)), P(CORPUS["apple"])) == (Kind.SINGULAR, True)


def test_classify_boxes():
    circle = P("x^2 + y^2 - 1")
    box = Box(RatInterval(F(99, 100), F(101, 100)), RatInterval(F(-1, 100), F(1, 100)))
    assert classify(box, circle) == (Kind.VERTICAL_TANGENT, True)
    # f_x = 2x straddles zero on this box: only an uncertified singular verdict is possible
    box = Box(RatInterval(F(-1, 100), F(1, 100)), RatInterval(F(-1, 100), F(1, 100)))
    assert classify(box, P("x^2 - y^2")) == (Kind.SINGULAR, False)


def test_schedule():
    s = shear_schedule()
    assert s[:5] == [0, F(1, 64), F(-1, 64), F(1, 32), F(-1, 32)]
    assert s[-2:] == [1, -1] and len(s) == 15
    assert shear_schedule(3) == s[:3]


def test_circle_is_generic_unsheared():
    m = ensure_generic(P("x^2 + y^2 - 1"))
    assert m.shear_t == 0 and len(m.criticals) == 2


def test_stacked_circles_need_a_shear():
    m = ensure_generic(P(CORPUS["stacked"]))
    assert m.shear_t == F(1, 64)
    assert m.attempts[0]["shear"] == "0" and m.attempts[0]["reason"] != "accepted"
    xs = [c.x for c in m.criticals]
    for a, b in zip(xs, xs[1:]):
        assert a.compare(b) == -1


def test_line_raises_no_critical_points():
    with pytest.raises(NoCriticalPoints):
        ensure_generic(P("y - x"))


def test_retry_cap_gives_genericity_failure():
    with pytest.raises(GenericityFailure):
        ensure_generic(P(CORPUS["stacked"]), max_retries=1)


def test_vanishing_leading_coefficient_triggers_shear():
    f = P("x*y - 1")
    with pytest.raises(LeadingCoeffVanishes):
        solve_system(f)
    m = ensure_generic(f)
    assert m.shear_t != 0 and "LeadingCoeffVanishes" in m.attempts[0]["reason"]


def test_vertical_line_factor_split_off():
    m = ensure_generic(P("x*(x^2 + y^2 - 4)"))
    assert m.shear_t == 0
    assert [l.exact for l in m.vertical_lines] == [0]
    assert len(m.criticals) == 2


def test_vertical_line_through_critical_x_is_rejected():
    m = ensure_generic(P("(x - 1)*(x^2 + y^2 - 1)"))
    assert m.shear_t != 0 and not m.vertical_lines


def test_triple_point_is_generic():
    # three lines through the origin: gcd of the fibre has degree 2, a pure square
    m = ensure_generic(P("(y - x)*(y + x)*(y - 2x)"))
    assert m.shear_t == 0
    (c,) = m.criticals
    assert c.kind is Kind.SINGULAR and c.kind_certified and c.gcd_degree == 2


def test_irrational_singularity_classified_exactly():
    # a node at (sqrt 2, 0): (x^2 - 2)^2 - y^2 crossing, shifted off rational coordinates
    f = P("y^2 - (x^2 - 2)^2 * (x + 3)")
    an = CriticalAnalysis(f)
    sing = [c for c in an.critical_points if c.kind is Kind.SINGULAR]
    assert len(sing) == 2 and all(c.kind_certified for c in sing)
    assert sorted(round(float(c.x), 9) for c in sing) == [-1.414213562, 1.414213562]


@pytest.mark.parametrize("name", ["circle", "cross", "cusp", "nested", "stacked"])
def test_critical_count_stable_across_generic_shears(name):
    f = P(CORPUS[name])
    counts = {len(ensure_generic(f, shears=[t]).criticals) for t in (F(1, 64), F(-1, 64), F(1, 8))}
    assert len(counts) == 1


def test_sheared_criticals_solve_sheared_system(apple):
    m = ensure_generic(apple)
    g = shear(apple, m.shear_t)
    gy = partial_derivative(g, "y")
    for c in m.criticals:
        b = c.refine(F(1, 10 ** 10))
        assert abs(g(b.x.mid, b.y.mid)) < 1e-6 and abs(gy(b.x.mid, b.y.mid)) < 1e-6


def test_two_criticals_over_one_irrational_x():
    # at x^2 = 2 the fibre is (y^2 - 1)^2: critical points (+-sqrt 2, +-1)
    an = CriticalAnalysis(P("(y^2 - 1)^2 - x^2 + 2"))
    cs = an.critical_points
    assert not an.is_generic
    assert len(cs) == 6  # plus the vertical tangents at (+-sqrt 3, 0)
    irr = [c for c in cs if c.x.is_zero([-2, 0, 1])]
    assert len(irr) == 4
    assert sorted((round(float(c.x), 6), round(float(c.y.refine(F(1, 10**9)).mid), 6)) for c in irr) == [
        (-1.414214, -1.0), (-1.414214, 1.0), (1.414214, -1.0), (1.414214, 1.0)]
    assert all(c.kind is Kind.VERTICAL_TANGENT and c.kind_certified for c in irr)
    m = ensure_generic(P("(y^2 - 1)^2 - x^2 + 2"))
    assert m.shear_t != 0


def test_rational_fibre_root_over_irrational_station():
    # vertical tangents at x = (5 +- sqrt 57)/4, both with y = -2 exactly
    from curvetop import analyze
    d = analyze(parse_polynomial("2*x^2 + y^2 - 5*x + 4*y"))
    assert all(c.x.exact is None for c in d.model.criticals)
    crit = [fb for fb in d.fibers if fb.kind.name == "CRITICAL"]
    assert [[r.exact for r in fb.roots] for fb in crit] == [[-2], [-2]]
