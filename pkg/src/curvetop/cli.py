"""``curvetop``: draw the real zero set of a bivariate polynomial.

Exit status: 0 success, 1 bad input, 2 no critical points after all
shears, 3 any other analysis failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import sys
import traceback
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .critical import CriticalPoint
from .errors import CurvetopError, InputError
from .parser import parse_polynomial
from .pipeline import analyze
from .render import RenderOptions, render
from .roots import DEFAULT_BUDGET
from .topology import components

DIAG_SCHEMA = "curvetop-diag/1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _bbox(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("bbox needs four comma-separated numbers x0,y0,x1,y1")
    vals = [_fraction(p) for p in parts]
    if vals[0] >= vals[2] or vals[1] >= vals[3]:
        raise argparse.ArgumentTypeError("bbox must satisfy x0 < x1 and y0 < y1")
    return tuple(vals)


def _overlay(text: str):
    pts = []
    for p in text.split(";"):
        xy = p.split(",")
        if len(xy) != 2:
            raise argparse.ArgumentTypeError("overlay points look like x0,y0;x1,y1")
        pts.append((_fraction(xy[0]), _fraction(xy[1])))
    if len(pts) < 2:
        raise argparse.ArgumentTypeError("an overlay needs at least two points")
    return tuple(pts)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvetop", description="Topology and drawing of a real plane algebraic curve f(x, y) = 0.")
    p.add_argument("poly", nargs="?", help="polynomial in x and y, e.g. 'x^2 + y^2 - 1'")
    p.add_argument("-f", "--file", help="read the polynomial from a file ('-' for stdin)")
    p.add_argument("--mode", choices=["metric", "schematic"], default="metric")
    p.add_argument("--style", choices=["pl", "bezier", "both"], default="both")
    p.add_argument("--format", choices=["tikz", "svg", "json"], default="tikz")
    p.add_argument("-o", "--out", help="output file (default: stdout)")
    p.add_argument("--shear", type=_fraction, help="use this shear instead of the retry schedule")
    p.add_argument("--max-retries", type=_positive, help="try at most this many shears")
    p.add_argument("--precision", type=int, default=4, help="decimal places in metric output (>= 3)")
    p.add_argument("--bbox", type=_bbox, help="viewport x0,y0,x1,y1")
    p.add_argument("--overlay", type=_overlay, action="append", default=[],
                   help="extra gray polyline x0,y0;x1,y1;... (repeatable)")
    p.add_argument("--standalone", action="store_true", help="wrap TikZ in a standalone document")
    p.add_argument("--diag-json", nargs="?", const="-", metavar="PATH",
                   help="write diagnostics as JSON (to stderr, or PATH)")
    p.add_argument("--seed", type=int, help="reserved; the analysis is deterministic")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


# --- diagnostics -----------------------------------------------------------------


def _q(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def critical_record(c: CriticalPoint, width=Fraction(1, 10 ** 12)) -> dict:
    box = c.refine(width)
    return {
        "x": float(box.x.mid),
        "y": float(box.y.mid),
        "x_box": [_q(box.x.lo), _q(box.x.hi)],
        "y_box": [_q(box.y.lo), _q(box.y.hi)],
        "exact": c.is_exact,
        "kind": c.kind.value,
        "certified": c.kind_certified,
    }


def _text_report(diag: dict) -> str:
    lines = []
    if diag.get("shear") is not None:
        lines.append(f"shear: {diag['shear']}")
    for a in diag.get("attempts", []):
        if a["reason"] != "accepted":
            lines.append(f"  shear {a['shear']} rejected: {a['reason']}")
    for title, key in (("critical points", "critical_points"),
                       ("critical points (sheared model)", "model_critical_points")):
        rows = diag.get(key)
        if rows is None:
            continue
        lines.append(f"{title}: {len(rows)}")
        for r in rows:
            tag = "exact" if r["exact"] else "boxed"
            cert = "" if r["certified"] else " (uncertified)"
            lines.append(f"  ({r['x']:.10g}, {r['y']:.10g})  {r['kind']}{cert}  [{tag}]")
    if diag.get("components") is not None:
        lines.append(f"components: {diag['components']}")
    for w in diag.get("warnings", []):
        lines.append(f"warning: {w}")
    if diag.get("error"):
        lines.append(f"error: {diag['error']['type']}: {diag['error']['message']}")
    return "\n".join(lines) + "\n"


def _read_input(args) -> str:
    if (args.poly is None) == (args.file is None):
        raise InputError("give exactly one of POLY or --file")
    if args.file is None:
        return args.poly
    try:
        if args.file == "-":
            return sys.stdin.read()
        with open(args.file, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None


def _budget() -> int:
    raw = os.environ.get("CURVETOP_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        v = int(raw)
    except ValueError:
        v = 0
    if v <= 0:
        raise InputError(f"CURVETOP_BUDGET must be a positive integer, got {raw!r}")
    return v


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
        args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="curvetop: %(message)s", stream=stderr)
    diag = {"schema": DIAG_SCHEMA, "status": "error", "exit_code": 3, "input": None,
            "square_free_reduced": False, "shear": None, "attempts": [],
            "critical_points": None, "model_critical_points": None,
            "components": None, "stations": None, "warnings": [], "error": None}
    code = 0
    try:
        if args.precision < 3:
            raise InputError("--precision must be at least 3")
        text = _read_input(args)
        diag["input"] = text.strip()
        budget = _budget()
        f = parse_polynomial(text)
        opts = RenderOptions(mode=args.mode, style=args.style, format=args.format,
                             bbox=args.bbox, precision=args.precision,
                             standalone=args.standalone, overlay=tuple(args.overlay))
        d = analyze(f, shear=args.shear, max_retries=args.max_retries,
                    budget=budget, precision=args.precision)
        diag["square_free_reduced"] = d.reduced
        diag["shear"] = _q(d.model.shear_t)
        diag["attempts"] = d.model.attempts
        if d.original_criticals is not None:
            diag["critical_points"] = [critical_record(c) for c in d.original_criticals]
        diag["model_critical_points"] = [critical_record(c) for c in d.model.criticals]
        diag["components"] = components(d.graph)
        diag["stations"] = d.graph.n_stations
        diag["warnings"] = d.warnings
        doc = render(d.graph, opts, d.model.curve)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(doc)
        else:
            stdout.write(doc)
        diag["status"] = "ok"
    except CurvetopError as exc:
        code = exc.exit_code
        diag["attempts"] = getattr(exc, "attempts", diag["attempts"])
        diag["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except OSError as exc:
        code = 1
        diag["error"] = {"type": "InputError", "message": str(exc)}
    except Exception as exc:  # last line of the exit-code contract
        code = 3
        diag["error"] = {"type": type(exc).__name__, "message": str(exc) or repr(exc)}
        if args.verbose:
            traceback.print_exc(file=stderr)
    diag["exit_code"] = code
    if args.diag_json is None:
        stderr.write(_text_report(diag))
    else:
        payload = json.dumps(diag, indent=1, sort_keys=True) + "\n"
        if args.diag_json == "-":
            stderr.write(payload)
        else:
            with open(args.diag_json, "w", encoding="utf-8") as fh:
                fh.write(payload)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
