"""Certified topology and drawings of real plane algebraic curves."""

__version__ = "0.1.0"

from .algebraic import RealAlgebraic
from .critical import (Box, CriticalPoint, GenericModel, Kind, classify,
                       ensure_generic, solve_system)
from .errors import (CommonComponent, CurvetopError, GenericityFailure, InputError,
                     LeadingCoeffVanishes, NoCriticalPoints, NotIsolating,
                     PolynomialSyntaxError, SeparationFailure, TopologyInconsistent,
                     UnknownVariable)
from .intervals import IntervalPoly, RatInterval
from .parser import parse_polynomial
from .pipeline import Drawing, analyze, draw
from .polynomial import BiPoly, UniPoly, partial_derivative, shear, square_free_part
from .render import RenderOptions, emit_json, emit_svg, emit_tikz, graph_from_json, to_paths
from .roots import isolate_roots, isolate_roots_interval, refine, sturm_count, sturm_sequence
from .subresultant import eliminant, resultant_y
from .topology import (CurveGraph, build_stations, compute_fiber, components, connect,
                       degree_sequence, schematic_layout)

__all__ = [
    "BiPoly", "Box", "CommonComponent", "CriticalPoint", "CurveGraph", "CurvetopError", "Drawing",
    "GenericModel", "GenericityFailure", "InputError", "IntervalPoly", "Kind",
    "LeadingCoeffVanishes", "NoCriticalPoints", "NotIsolating", "PolynomialSyntaxError",
    "RatInterval", "RealAlgebraic", "RenderOptions", "SeparationFailure", "TopologyInconsistent",
    "UniPoly", "UnknownVariable", "analyze", "build_stations", "classify", "components",
    "compute_fiber", "connect", "degree_sequence", "draw", "eliminant", "emit_json", "emit_svg",
    "emit_tikz", "ensure_generic", "graph_from_json", "isolate_roots", "isolate_roots_interval",
    "parse_polynomial", "partial_derivative", "refine", "resultant_y", "schematic_layout",
    "shear", "solve_system", "square_free_part", "sturm_count", "sturm_sequence", "to_paths",
]
