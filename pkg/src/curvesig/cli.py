"""Command-line front end: curve files in, JSON reports out.

Curve files are line oriented:

    # comment
    kind plane            (or: kind space)
    param t
    label X1              (optional)
    x = 10*t/(t^3+1)      (plane: x, y; space: z1, z2, z3)
    y = 10*t^2/(t^3+1)

Exit status: 0 decided, 2 undetermined, 1 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__, linalg
from .algebra import AlgebraError, ParseError, Poly, RatFunc, parse_expression
from .equivalence import equivalent
from .invariants import Exceptional, ParamCurve2, ParamCurve3, VerticalLineError, classify, invariants
from .projection import ProjectionError, decide_central, decide_parallel
from .signature import Constant, signature_of

EXIT_DECIDED = 0
EXIT_ERROR = 1
EXIT_UNDETERMINED = 2

COMPONENTS = {"plane": ("x", "y"), "space": ("z1", "z2", "z3")}


class CurveFileError(ValueError):
    def __init__(self, message: str, source: str, line: int | None = None, column: int | None = None):
        where = source + (f":{line}" if line else "") + (f":{column}" if column else "")
        super().__init__(f"{where}: {message}")
        self.message = message
        self.source = source
        self.line = line
        self.column = column


class UsageError(ValueError):
    pass


@dataclass
class CurveFile:
    kind: str
    param: str
    components: dict[str, str]
    label: str | None = None
    source: str = "<string>"
    lines: dict[str, int] = field(default_factory=dict)

    def curve(self) -> ParamCurve2 | ParamCurve3:
        parsed = []
        for name in COMPONENTS[self.kind]:
            text = self.components[name]
            try:
                parsed.append(parse_expression(text, [self.param]))
            except ParseError as exc:
                raise CurveFileError(exc.message, self.source, self.lines[name],
                                     self._column(name) + exc.position) from exc
            except AlgebraError as exc:
                raise CurveFileError(str(exc), self.source, self.lines[name]) from exc
        label = self.label or Path(self.source).stem
        try:
            if self.kind == "plane":
                return ParamCurve2(*parsed, self.param, label)
            return ParamCurve3(*parsed, self.param, label)
        except ValueError as exc:
            raise CurveFileError(str(exc), self.source) from exc

    def _column(self, name: str) -> int:
        return self._columns.get(name, 1) if hasattr(self, "_columns") else 1


def parse_curve_file(text: str, source: str = "<string>") -> CurveFile:
    kind = param = label = None
    comps: dict[str, str] = {}
    lines: dict[str, int] = {}
    columns: dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if "=" in stripped:
            name, _, expr = stripped.partition("=")
            name = name.strip()
            if name in comps:
                raise CurveFileError(f"duplicate component {name!r}", source, number)
            comps[name] = expr.strip()
            lines[name] = number
            columns[name] = raw.index("=") + 2 + (len(expr) - len(expr.lstrip()))
            continue
        key, _, value = stripped.partition(" ")
        value = value.strip()
        if key == "kind":
            if value not in COMPONENTS:
                raise CurveFileError(f"kind must be plane or space, not {value!r}", source, number)
            kind = value
        elif key == "param":
            if not value.isidentifier():
                raise CurveFileError(f"bad parameter name {value!r}", source, number)
            param = value
        elif key == "label":
            label = value
        else:
            raise CurveFileError(f"unrecognized line {stripped!r}", source, number)
    if kind is None:
        raise CurveFileError("missing 'kind plane|space' line", source)
    if param is None:
        raise CurveFileError("missing 'param <name>' line", source)
    expected = COMPONENTS[kind]
    if set(comps) != set(expected):
        raise CurveFileError(f"a {kind} curve needs components {', '.join(expected)}; got {', '.join(sorted(comps)) or 'none'}", source)
    cf = CurveFile(kind, param, comps, label, source, lines)
    cf._columns = columns
    return cf


def corpus_path(name: str) -> Path | None:
    root = resources.files("curvesig") / "corpus"
    for candidate in (name, name + ".curve"):
        p = root / candidate
        if p.is_file():
            return Path(str(p))
    return None


def load_curve_file(path: str) -> CurveFile:
    p = Path(path)
    if not p.is_file():
        bundled = corpus_path(p.name)
        if bundled is None:
            raise CurveFileError("file not found", path)
        p = bundled
    return parse_curve_file(p.read_text(), str(path))


def load_curve(path: str, kind: str | None = None):
    cf = load_curve_file(path)
    if kind is not None and cf.kind != kind:
        raise CurveFileError(f"expected a {kind} curve, got {cf.kind}", path)
    return cf.curve()


# ---------------------------------------------------------------------------
# Serialization.


def render(value):
    """JSON-ready form with exact rationals as 'p/q' strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, (Poly, RatFunc)):
        return str(value)
    if isinstance(value, dict):
        return {k: render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    return value


def integer_class(m: Sequence[Sequence]) -> linalg.Matrix:
    """Primitive integer representative of a matrix up to scale, first nonzero entry positive."""
    m = linalg.as_matrix(m)
    den = 1
    for row in m:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [[int(v * den) for v in row] for row in m]
    g = 0
    for row in ints:
        for v in row:
            g = math.gcd(g, v)
    first = next((v for row in ints for v in row if v), 1)
    g = g or 1
    if first < 0:
        g = -g
    return [[Fraction(v, g) for v in row] for row in ints]


def affine_class(m: Sequence[Sequence]) -> linalg.Matrix:
    """Scale so the last row ends in 1 (affine normal form)."""
    m = linalg.as_matrix(m)
    k = m[-1][-1]
    return [[v / k for v in row] for row in m] if k else m


def _matrix_for(group_or_kind: str, m):
    if m is None:
        return None
    if group_or_kind in ("affine", "parallel"):
        return affine_class(m)
    return integer_class(m)


# ---------------------------------------------------------------------------
# Commands.


def _label(curve) -> str:
    return curve.label or "curve"


def cmd_invariants(args) -> tuple[int, dict]:
    curve = load_curve(args.file, "plane")
    report = {"curve": _label(curve), "group": args.group}
    try:
        pair = invariants(curve, args.group)
    except Exceptional as exc:
        report.update(verdict="Exceptional", reason=str(exc))
        return EXIT_DECIDED, report
    report.update(verdict="ok", param=pair.param, K=pair.K, T=pair.T)
    return EXIT_DECIDED, report


def cmd_classify(args) -> tuple[int, dict]:
    curve = load_curve(args.file, "plane")
    return EXIT_DECIDED, {"curve": _label(curve), "verdict": classify(curve, "real"),
                          "classification": classify(curve, "real"),
                          "classification_complex": classify(curve, "complex")}


def _signature_report(sig) -> dict:
    if isinstance(sig, Constant):
        return {"kind": "constant", "kappa0": sig.kappa0, "tau0": sig.tau0}
    return {"kind": "curve", "implicit": sig.implicit.poly.canonical(), "K": sig.K, "T": sig.T}


def cmd_signature(args) -> tuple[int, dict]:
    curve = load_curve(args.file, "plane")
    report = {"curve": _label(curve), "group": args.group}
    try:
        sig = signature_of(curve, args.group)
    except Exceptional as exc:
        report.update(verdict="Exceptional", reason=str(exc))
        return EXIT_DECIDED, report
    report.update(verdict=sig.kind, signature=_signature_report(sig))
    return EXIT_DECIDED, report


def cmd_equivalent(args) -> tuple[int, dict]:
    c1 = load_curve(args.file1, "plane")
    c2 = load_curve(args.file2, "plane")
    res = equivalent(c1, c2, args.group, args.field)
    report = {
        "curves": [_label(c1), _label(c2)],
        "group": args.group,
        "field": args.field,
        "verdict": res.verdict,
        "equivalent": res.equivalent,
        "reparameterization": res.reparameterization,
        "transform": _matrix_for(args.group, res.transform),
        "diagnostics": {"evidence": res.evidence},
    }
    return (EXIT_DECIDED if res.decided else EXIT_UNDETERMINED), report


def _witness_report(w) -> dict:
    return {"family": w.family, "values": w.values, "verdict": w.verdict, "route": w.route}


def cmd_project(args) -> tuple[int, dict]:
    space = load_curve(args.space, "space")
    plane = load_curve(args.plane, "plane")
    decide = decide_central if args.kind == "central" else decide_parallel
    dec = decide(space, plane, args.field, exhaustive=args.exhaustive)
    report = {
        "curves": [_label(space), _label(plane)],
        "kind": args.kind,
        "field": args.field,
        "verdict": dec.answer,
        "witnesses": [_witness_report(w) for w in dec.witnesses],
    }
    if args.certificate:
        w = next((w for w in dec.witnesses if w.camera is not None), None)
        report["certificate"] = None if w is None else {
            "family": w.family,
            "values": w.values,
            "camera": _matrix_for(args.kind, w.camera),
            "transform": _matrix_for("affine" if args.kind == "parallel" else "projective", w.transform),
            "reparameterization": w.reparameterization,
            "verified_points": w.verification,
        }
    report["diagnostics"] = {
        "evidence": dec.evidence,
        "variety": [{"generators": c.generators,
                     "parameterization": c.parameterization} for c in dec.variety],
    }
    return (EXIT_UNDETERMINED if dec.answer == "Undetermined" else EXIT_DECIDED), report


# Reference verdicts replayed by `examples`: (argv, expected verdict).
EXAMPLES = [
    (["classify", "parabola.curve"], "Parabola"),
    (["classify", "circle.curve"], "Ellipse"),
    (["classify", "X1.curve"], "General"),
    (["signature", "--group", "projective", "X3.curve"], "constant"),
    (["signature", "--group", "projective", "quintic.curve"], "constant"),
    (["signature", "--group", "projective", "X1.curve"], "curve"),
    (["equivalent", "--group", "projective", "--field", "real", "X1.curve", "X2.curve"], "EquivalentReal"),
    (["equivalent", "--group", "projective", "--field", "real", "X4.curve", "X2.curve"], "EquivalentComplexOnly"),
    (["equivalent", "--group", "projective", "--field", "real", "X3.curve", "X1.curve"], "NotEquivalent"),
    (["equivalent", "--group", "affine", "--field", "real", "X1.curve", "X2.curve"], "NotEquivalent"),
    (["project", "--kind", "central", "twisted_cubic.curve", "X1.curve"], "Yes"),
    (["project", "--kind", "central", "twisted_cubic.curve", "X2.curve"], "Yes"),
    (["project", "--kind", "central", "twisted_cubic.curve", "X3.curve"], "Yes"),
    (["project", "--kind", "central", "twisted_cubic.curve", "X4.curve"], "Yes"),
    (["project", "--kind", "central", "twisted_cubic.curve", "quintic.curve"], "No"),
    (["project", "--kind", "central", "twisted_cubic.curve", "circle.curve"], "Yes"),
    (["project", "--kind", "parallel", "quartic_space.curve", "quartic_plane.curve"], "Yes"),
    (["project", "--kind", "parallel", "twisted_cubic.curve", "X1.curve"], "No"),
    (["project", "--kind", "parallel", "twisted_cubic.curve", "X2.curve"], "No"),
    (["project", "--kind", "parallel", "twisted_cubic.curve", "X3.curve"], "No"),
    (["project", "--kind", "parallel", "twisted_cubic.curve", "X4.curve"], "No"),
    (["project", "--kind", "parallel", "twisted_cubic.curve", "parabola.curve"], "Yes"),
    (["project", "--kind", "parallel", "twisted_cubic.curve", "ellipse.curve"], "No"),
    (["project", "--kind", "parallel", "twisted_cubic.curve", "hyperbola.curve"], "No"),
]


def cmd_examples(args) -> tuple[int, dict]:
    rows = []
    for argv, expected in EXAMPLES:
        status, report = run(argv)
        got = report.get("verdict")
        rows.append({"command": " ".join(argv), "expected": expected, "verdict": got, "ok": got == expected})
    ok = all(r["ok"] for r in rows)
    return (EXIT_DECIDED if ok else EXIT_ERROR), {"verdict": "ok" if ok else "mismatch", "cases": rows}


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="curvesig", description="Exact signatures, equivalence and projections of rational curves.")
    parser.add_argument("--version", action="version", version=f"curvesig {__version__}")
    parser.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("invariants", help="K and T restricted to a plane curve")
    p.add_argument("--group", choices=("affine", "projective"), required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", help="line, conic class or general")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("signature", help="signature point or implicit signature curve")
    p.add_argument("--group", choices=("affine", "projective"), required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("equivalent", help="decide equivalence of two plane curves")
    p.add_argument("--group", choices=("affine", "projective"), required=True)
    p.add_argument("--field", choices=("real", "complex"), default="real")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_equivalent)

    p = sub.add_parser("project", help="decide whether a space curve projects onto a plane curve")
    p.add_argument("--kind", choices=("central", "parallel"), required=True)
    p.add_argument("--field", choices=("real", "complex"), default="real")
    p.add_argument("--certificate", action="store_true", help="include the camera and transform")
    p.add_argument("--exhaustive", action="store_true", help="scan every family and candidate level")
    p.add_argument("space")
    p.add_argument("plane")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("examples", help="replay the bundled example corpus")
    p.set_defaults(func=cmd_examples)
    return parser


def _error_report(argv, kind: str, exc: Exception, **extra) -> dict:
    err = {"type": kind, "message": getattr(exc, "message", str(exc))}
    err.update({k: v for k, v in extra.items() if v is not None})
    return {"command": list(argv), "verdict": "Error", "error": err}


def run(argv: Sequence[str]) -> tuple[int, dict]:
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return EXIT_ERROR, _error_report(argv, "usage", exc)
    start = time.perf_counter()
    try:
        status, body = args.func(args)
    except CurveFileError as exc:
        return EXIT_ERROR, _error_report(argv, "input", exc, file=exc.source, line=exc.line, column=exc.column)
    except (ProjectionError, VerticalLineError, Exceptional) as exc:
        return EXIT_ERROR, _error_report(argv, "precondition", exc)
    report = {"command": argv}
    report.update(body)
    if args.timing:
        report["timing"] = f"{time.perf_counter() - start:.3f}"
    return status, render(report)


def main(argv: Sequence[str] | None = None) -> int:
    status, report = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(json.dumps(render(report), indent=2) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
