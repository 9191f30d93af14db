"""End-to-end analysis: polynomial in, generic model, fibres and graph out."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .critical import CriticalPoint, GenericModel, ensure_generic, solve_system
from .errors import CurvetopError, InputError
from .polynomial import BiPoly, square_free_part
from .render import RenderOptions, render
from .roots import DEFAULT_BUDGET
from .topology import CurveGraph, Fiber, build_graph


@dataclass
class Drawing:
    polynomial: BiPoly
    curve: BiPoly  # square-free part actually analysed
    model: GenericModel
    fibers: List[Fiber]
    graph: CurveGraph
    original_criticals: Optional[List[CriticalPoint]] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def reduced(self) -> bool:
        """Whether repeated factors were dropped from the input."""
        return self.curve.total_degree < self.polynomial.total_degree


def _precision_width(precision: int) -> Fraction:
    return min(Fraction(1, 1 << 40), Fraction(1, 10 ** (precision + 2)))


def analyze(f: BiPoly, *, shear=None, max_retries: Optional[int] = None,
            budget: int = DEFAULT_BUDGET, precision: int = 4) -> Drawing:
    """Critical points, generic model and plane graph of ``f = 0``.

    ``shear`` forces a single shear value instead of the retry schedule.
    The critical points of the unsheared curve are reported as well when
    they can be computed directly.
    """
    if f.is_zero():
        raise InputError("the zero polynomial does not define a curve")
    curve = square_free_part(f)
    warnings = []
    if curve.total_degree < f.total_degree:
        warnings.append("input was not square-free; analysing its square-free part")
    shears = None if shear is None else [Fraction(shear)]
    model = ensure_generic(curve, max_retries=max_retries, budget=budget, shears=shears)
    fibers, graph = build_graph(model, budget, _precision_width(precision))
    original = None
    if model.shear_t == 0 and not model.vertical_lines:
        original = model.criticals
    elif curve.deg_y > 0:
        try:
            original = solve_system(curve, budget)
        except CurvetopError:
            original = None
    for c in model.criticals:
        if not c.kind_certified:
            warnings.append(f"classification at x ~ {float(c.x):.6g} is not certified")
    return Drawing(f, curve, model, fibers, graph, original, warnings)


def draw(f: BiPoly, opts: RenderOptions = RenderOptions(), **kw) -> str:
    """Render ``f = 0`` straight to TikZ, SVG or JSON text."""
    d = analyze(f, precision=opts.precision, **kw)
    return render(d.graph, opts, d.model.curve)
