"""Does a space curve project onto a given plane curve?

Central cameras are written P = A . [I | c] (centre -c); parallel cameras
P = A . P0 . B with P0 dropping z3 and B one of three coordinate changes,
giving the families

    central  eps(c) = ((z1 + c1)/(z3 + c3), (z2 + c2)/(z3 + c3))
    delta    (z1 + a1 z3, z2 + a2 z3)
    beta     (z1 + b z2, z3)
    alpha    (z2, z3)

The space curve projects onto the target iff some generic member of a
family is equivalent to it (projective group for central, affine for
parallel).  Two routes find members:

* signature route: compose the target's implicit signature with the
  family's symbolic invariants; coefficients in s give a system in the
  family parameters; every solution is re-verified by the equivalence
  module;
* correspondence route (can only answer Yes): look for a Moebius
  reparameterization under which the target's homogeneous coefficient
  rows lie in the row space of the space curve's, then solve for the
  camera linearly.  Used when the symbolic family is too large.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import AlgebraError, Poly, RatFunc, coprime_basis, multiplicity, substitute
from .elimination import (
    Component,
    AlgebraicPoint,
    EliminationError,
    height,
    height_values,
    implicitize,
    point_key,
    primes,
    solve_system,
)
from .equivalence import (
    EquivalenceResult,
    ReconstructionError,
    _moebius_image_rows,
    equivalent,
    equivalent_to_signature,
)
from .invariants import (
    Exceptional,
    ParamCurve2,
    ParamCurve3,
    _affine,
    _projective,
    classify,
    delta1_form,
    delta2_form,
    homogeneous_jets,
    is_coplanar,
    is_line,
    is_space_line,
)
from .signature import SIGNATURE_VARS, Constant, signature_from_pair

log = logging.getLogger(__name__)

KINDS = ("central", "parallel-delta", "parallel-beta", "parallel-alpha")
ANSWERS = ("Yes", "No", "YesComplexOnly", "Undetermined")
CONICS = ("Parabola", "Ellipse", "Hyperbola")

CAMERA_POINTS = 20
# Verified candidates per family before the scan is reported as unresolved.
MAX_CANDIDATES = 48
# Symbolic families whose jets grow beyond this many terms are not composed.
FAMILY_TERM_LIMIT = 1000
COMPOSE_TERM_LIMIT = 100_000
# Target signature maps whose K and T degrees sum past this are not implicitized.
SIGNATURE_DEGREE_LIMIT = 64


class ProjectionError(ValueError):
    pass


class _TooLarge(Exception):
    pass


# ---------------------------------------------------------------------------
# Families.


def _p(name):
    return Poly.var(name)


@dataclass(frozen=True)
class ProjectionFamily:
    kind: str
    curve: ParamCurve2
    parameters: tuple[str, ...]
    source: ParamCurve3

    @property
    def group(self) -> str:
        return "projective" if self.kind == "central" else "affine"

    def member(self, values: dict) -> ParamCurve2:
        if not self.parameters:
            return self.curve
        return self.curve.specialize({u: Fraction(values[u]) for u in self.parameters})

    def base_matrix(self, values: dict) -> linalg.Matrix:
        """B: the 4x4 coordinate change of the family at `values`."""
        v = {u: Fraction(values[u]) for u in self.parameters}
        one, zero = Fraction(1), Fraction(0)
        if self.kind == "central":
            c1, c2, c3 = v["c1"], v["c2"], v["c3"]
            return [[one, zero, zero, c1], [zero, one, zero, c2], [zero, zero, one, c3], [zero, zero, zero, one]]
        if self.kind == "parallel-delta":
            a1, a2 = v["a1"], v["a2"]
            return [[one, zero, a1, zero], [zero, one, a2, zero], [zero, zero, one, zero], [zero, zero, zero, one]]
        if self.kind == "parallel-beta":
            b = v["b"]
            return [[one, b, zero, zero], [zero, zero, one, zero], [zero, one, zero, zero], [zero, zero, zero, one]]
        return [[zero, one, zero, zero], [zero, zero, one, zero], [one, zero, zero, zero], [zero, zero, zero, one]]

    def canonical_projection(self) -> linalg.Matrix:
        """P0: [I | 0] for central, rows (e1, e2, e4) for parallel."""
        if self.kind == "central":
            return [[Fraction(int(i == j)) for j in range(4)] for i in range(3)]
        return [[Fraction(int(j == k)) for j in range(4)] for k in (0, 1, 3)]

    def camera_base(self, values: dict) -> linalg.Matrix:
        return linalg.matmul(self.canonical_projection(), self.base_matrix(values))


def _require_curve(curve3: ParamCurve3):
    if is_space_line(curve3):
        raise ProjectionError("the space curve is a line")


def central_family(curve3: ParamCurve3) -> ProjectionFamily:
    _require_curve(curve3)
    W1, W2, W3, W0 = curve3.homogeneous()
    den = W3 + _p("c3") * W0
    x = RatFunc(W1 + _p("c1") * W0, den)
    y = RatFunc(W2 + _p("c2") * W0, den)
    return ProjectionFamily("central", ParamCurve2(x, y, curve3.param), ("c1", "c2", "c3"), curve3)


def parallel_families(curve3: ParamCurve3) -> list[ProjectionFamily]:
    """delta, beta, alpha in that order."""
    _require_curve(curve3)
    W1, W2, W3, W0 = curve3.homogeneous()
    s = curve3.param
    specs = [
        ("parallel-delta", ("a1", "a2"), W1 + _p("a1") * W3, W2 + _p("a2") * W3),
        ("parallel-beta", ("b",), W1 + _p("b") * W2, W3),
        ("parallel-alpha", (), W2, W3),
    ]
    out = []
    for kind, params, X, Y in specs:
        try:
            curve = ParamCurve2(RatFunc(X, W0), RatFunc(Y, W0), s)
        except ValueError:
            continue
        out.append(ProjectionFamily(kind, curve, params, curve3))
    return out


# ---------------------------------------------------------------------------
# Cameras.


def space_degree(curve3: ParamCurve3) -> int:
    return max(w.degree(curve3.param) for w in curve3.homogeneous())


def reconstruct_camera(family: ProjectionFamily, values: dict, transform: Sequence[Sequence]) -> linalg.Matrix:
    """P = A . P0 . B, A mapping the family member onto the target."""
    return linalg.matmul(linalg.as_matrix(transform), family.camera_base(values))


def camera_image_points(P: Sequence[Sequence], curve3: ParamCurve3, count: int = CAMERA_POINTS):
    hom = curve3.homogeneous()
    out = []
    for p in primes():
        w = [h(**{curve3.param: p}) for h in hom]
        if w[3] == 0:
            continue
        q = linalg.apply(P, w)
        if q[2] == 0:
            continue
        out.append((q[0] / q[2], q[1] / q[2]))
        if len(out) == count:
            return out


def verify_camera(P: Sequence[Sequence], curve3: ParamCurve3, target: ParamCurve2 | Poly,
                  count: int = CAMERA_POINTS) -> int:
    """Number of sampled points of P(curve3) lying exactly on the target (0 on failure)."""
    F = target if isinstance(target, Poly) else implicitize(target.components, ("x", "y"), param=target.param).poly
    pts = camera_image_points(P, curve3, count)
    if len(set(pts)) < 2:
        return 0
    for x, y in pts:
        if F(x=x, y=y) != 0:
            return 0
    return len(pts)


def is_central_camera(P) -> bool:
    return linalg.det([row[:3] for row in P]) != 0


def is_parallel_camera(P) -> bool:
    return all(v == 0 for v in P[2][:3]) and P[2][3] != 0 and linalg.rank(P) == 3


# ---------------------------------------------------------------------------
# Results.


@dataclass
class Witness:
    family: str
    values: dict
    verdict: str
    transform: linalg.Matrix | None = None
    reparameterization: RatFunc | None = None
    camera: linalg.Matrix | None = None
    verification: int = 0
    route: str = "signature"


@dataclass
class ProjectionDecision:
    answer: str
    kind: str
    field: str
    witnesses: list[Witness] = dc_field(default_factory=list)
    camera: linalg.Matrix | None = None
    verification: int = 0
    variety: list[Component] = dc_field(default_factory=list)
    evidence: list[str] = dc_field(default_factory=list)

    @property
    def witness(self) -> Witness | None:
        return self.witnesses[0] if self.witnesses else None


@dataclass
class _Outcome:
    family: ProjectionFamily
    real: list[Witness] = dc_field(default_factory=list)
    complex: list[Witness] = dc_field(default_factory=list)
    undetermined: bool = False
    unresolved: bool = False
    variety: list[Component] = dc_field(default_factory=list)
    notes: list[str] = dc_field(default_factory=list)


# ---------------------------------------------------------------------------
# Symbolic systems.


def _coefficients(p: Poly, var: str) -> list[Poly]:
    if p.is_zero():
        return []
    return [c for c in p.coefficients_in(var).values() if not c.is_zero()]


def _budget(p: Poly) -> Poly:
    if len(p) > COMPOSE_TERM_LIMIT:
        raise _TooLarge(f"signature composition exceeds {COMPOSE_TERM_LIMIT} terms")
    return p

def compose_signature(S: Poly, K: RatFunc, T: RatFunc) -> Poly:
    """Numerator of S(K, T) over the least common denominator of its terms."""
    S = S.lift(SIGNATURE_VARS)
    ik, it = S.variables.index("kappa"), S.variables.index("tau")
    basis = coprime_basis([K.den, T.den])

    def exps(d):
        out = []
        rest = d
        for b in basis:
            k, rest = multiplicity(rest, b)
            out.append(k)
        return out, rest.constant_value()

    ek, uk = exps(K.den)
    et, ut = exps(T.den)
    terms = [(int(m[ik]), int(m[it]), c) for m, c in S.terms().items()]
    need = [max(i * a + j * b for i, j, _ in terms) for a, b in zip(ek, et)]
    cache = {}

    def power(key, base, e):
        if (key, e) not in cache:
            prev = cache.get((key, e - 1))
            cache[(key, e)] = base ** e if prev is None else prev * base
            _budget(cache[(key, e)])
        return cache[(key, e)]

    total = Poly.constant(0)
    for i, j, c in terms:
        term = Poly.constant(c / (uk ** i * ut ** j))
        if i:
            term = term * power("K", K.num, i)
        if j:
            term = term * power("T", T.num, j)
        for n, (b, a, bb) in enumerate(zip(basis, ek, et)):
            e = need[n] - i * a - j * bb
            if e:
                term = term * power(n, b, e)
        total = total + _budget(term)
    return _budget(total)


def _jet_size_guard(family: ProjectionFamily, order: int):
    J = homogeneous_jets(family.curve, order)
    size = max(len(n) for n in J.N.values())
    if family.parameters and size > FAMILY_TERM_LIMIT:
        raise _TooLarge(f"family jets have {size} terms")
    return J


def _genericity_polys(family: ProjectionFamily, conic_target: bool) -> list[list[Poly]]:
    """Groups of polynomials in (s, parameters); a group vanishing identically violates genericity."""
    X, Y, Z = family.curve.homogeneous()
    s = family.curve.param
    dX, dY, dZ = (F.derivative(s) for F in (X, Y, Z))
    polys = [Z]
    # det of (X, Y, Z) and two derivatives: zero iff the member is a line
    ddX, ddY, ddZ = (F.derivative(s) for F in (dX, dY, dZ))
    polys.append(X * (dY * ddZ - dZ * ddY) - Y * (dX * ddZ - dZ * ddX) + Z * (dX * ddY - dY * ddX))
    if not conic_target:
        J = homogeneous_jets(family.curve, 5)
        polys.append(delta2_form(J.N))
        if family.group == "affine":
            polys.append(delta1_form(J.N))
    return [[p] for p in polys]


def _component_degenerate(comp: Component, groups: list[list[Poly]]) -> bool:
    """Exact test: some group vanishes on the whole parameterized component."""
    if comp.parameterization is None:
        return False
    param = {u: f for u, f in comp.parameterization.items() if f != RatFunc(Poly.var(u))}
    return any(all(substitute(RatFunc(p), param).is_zero() for p in group) for group in groups)


def _member_generic(family: ProjectionFamily, values: dict, conic_target: bool) -> ParamCurve2 | None:
    try:
        member = family.member(values)
    except (ZeroDivisionError, ValueError, AlgebraError):
        return None
    X, Y, Z = member.homogeneous()
    if Z.is_zero() or is_line(member):
        return None
    J = homogeneous_jets(member, 5)
    if J.A.is_zero():
        return None
    d2 = delta2_form(J.N).is_zero()
    if conic_target:
        return member if d2 else None
    if d2:
        return None
    if family.group == "affine" and delta1_form(J.N).is_zero():
        return None
    return member


# ---------------------------------------------------------------------------
# Candidate enumeration.


def _param_points(comp: Component, unknowns: Sequence[str], max_height: int):
    """(level, point) for rational points of a parameterized component, by height of the free values."""
    param = comp.parameterization
    free = [u for u in unknowns if param[u] == RatFunc(Poly.var(u))]
    values = height_values(max_height)
    seen = set()
    for h in range(max_height + 1):
        level = [v for v in values if max(abs(v.numerator), v.denominator) <= h]
        pts = []
        for combo in itertools.product(level, repeat=len(free)):
            if max((max(abs(v.numerator), v.denominator) for v in combo), default=0) != h:
                continue
            vals = dict(zip(free, combo))
            try:
                pt = {u: (param[u].constant_value() if param[u].is_constant() else param[u](**vals)) for u in unknowns}
            except ZeroDivisionError:
                continue
            key = tuple(pt[u] for u in unknowns)
            if key in seen:
                continue
            if not all(g.evaluate(pt).constant_value() == 0 for g in comp.generators):
                continue
            seen.add(key)
            pts.append(pt)
        for pt in sorted(pts, key=lambda q: point_key(q, unknowns)):
            yield h, pt
        if not free:
            return


def _candidates(sol, unknowns, max_height, degenerate_polys, outcome: _Outcome):
    """Candidates grouped by level; flags positive-dimensional or irrational parts as unresolved."""
    levels: dict[int, list[dict]] = {}

    def add(h, pt):
        pt = {u: pt[u] for u in unknowns}
        bucket = levels.setdefault(h, [])
        if pt not in bucket:
            bucket.append(pt)

    for p in sol.points:
        if isinstance(p, AlgebraicPoint):
            outcome.unresolved = True
            outcome.notes.append("irrational solution point cannot be verified exactly")
            continue
        add(height(p), p)
    for comp in sol.variety_description or []:
        if _component_degenerate(comp, degenerate_polys):
            outcome.notes.append("component dropped: genericity fails identically on it")
            continue
        outcome.variety.append(comp)
        outcome.unresolved = True
        if comp.parameterization is not None:
            for h, pt in _param_points(comp, unknowns, max_height):
                add(h, pt)
        else:
            for pt in comp.samples:
                add(height(pt), pt)
    for h in sorted(levels):
        yield h, sorted(levels[h], key=lambda q: point_key(q, unknowns))


# ---------------------------------------------------------------------------
# The signature route for one family.


def _target_data(target: ParamCurve2, group: str):
    pair = _invariant_parts(target, group).pair
    size = sum(max(r.num.degree(target.param), r.den.degree(target.param)) for r in (pair.K, pair.T))
    if size > SIGNATURE_DEGREE_LIMIT:
        raise _TooLarge(f"target signature map has degree {size}")
    return signature_from_pair(pair)


def _invariant_parts(curve: ParamCurve2, group: str):
    return _projective(curve) if group == "projective" else _affine(curve)


@dataclass
class FamilySystem:
    equations: list[Poly]
    K: RatFunc | None = None
    T: RatFunc | None = None


def family_system(family: ProjectionFamily, target: ParamCurve2, target_class: str,
                  target_sig=None) -> FamilySystem | None:
    """Equations in the family parameters, or None when every member is exceptional."""
    s = family.curve.param
    if target_class in CONICS:
        J = _jet_size_guard(family, 5)
        return FamilySystem(_coefficients(delta2_form(J.N), s))
    _jet_size_guard(family, 8 if family.group == "projective" else 6)
    try:
        parts = _invariant_parts(family.curve, family.group)
    except Exceptional:
        return None
    J = homogeneous_jets(family.curve, 5)
    if delta2_form(J.N).is_zero():
        return None
    K, T = parts.pair.K, parts.pair.T
    if isinstance(target_sig, Constant):
        eqs = _coefficients((K - target_sig.kappa0).num, s)
        eqs += _coefficients((T - target_sig.tau0).num, s)
        return FamilySystem(eqs, K, T)
    return FamilySystem(_coefficients(compose_signature(target_sig.implicit.poly, K, T), s), K, T)


def _verify_member(family, values, member, target, target_sig, field, target_poly):
    group = family.group
    if target_sig is None:
        res = equivalent(target, member, group, field)
    else:
        res = equivalent_to_signature(target, target_sig, member, group, field)
    w = Witness(family.kind, dict(values), res.verdict, res.transform, res.reparameterization)
    if res.verdict == "EquivalentReal" and res.transform is not None:
        P = reconstruct_camera(family, values, res.transform)
        n = verify_camera(P, family.source, target_poly)
        if n:
            w.camera, w.verification = P, n
        else:
            log.warning("camera for %s %s failed verification; candidate discarded", family.kind, values)
            w.verdict = "Discarded"
    return w


def decide_family(family: ProjectionFamily, target: ParamCurve2, field: str = "real", *,
                  exhaustive: bool = False, max_height: int = 3, target_class: str | None = None,
                  target_sig=None, target_poly: Poly | None = None) -> _Outcome:
    """Signature route on one family; raises _TooLarge when the symbolic family exceeds the budget."""
    out = _Outcome(family)
    tclass = target_class or classify(target, "real")
    conic = tclass in CONICS
    if not conic and target_sig is None:
        target_sig = _target_data(target, family.group)
    if target_poly is None:
        target_poly = implicitize(target.components, ("x", "y"), param=target.param).poly
    unknowns = family.parameters
    if not unknowns:
        levels = [(0, [{}])]
    else:
        system = family_system(family, target, tclass, target_sig)
        if system is None:
            out.notes.append(f"{family.kind}: every member is exceptional")
            return out
        eqs = system.equations
        degenerate = _genericity_polys(family, conic)
        if system.K is not None and not isinstance(target_sig, Constant):
            # a constant signature never equals a curve signature
            s = family.curve.param
            degenerate.append([system.K.differentiate(s).num, system.T.differentiate(s).num])
        if not eqs:
            whole = Component([], [], {u: RatFunc(Poly.var(u)) for u in unknowns})
            sol_comps, sol_points = [whole], []
            out.notes.append(f"{family.kind}: the condition holds for every parameter value")
        else:
            sol = solve_system(eqs, unknowns, max_height=max_height, max_samples=40)
            sol_comps, sol_points = sol.variety_description or [], sol.points
            out.notes.append(f"{family.kind}: {len(eqs)} equations, solution set {sol.dimension}")
        from .elimination import SolutionSet

        levels = list(_candidates(SolutionSet("", sol_points, sol_comps), unknowns, max_height, degenerate, out))
    tried = 0
    for level, pts in levels:
        for values in pts:
            member = _member_generic(family, values, conic)
            if member is None:
                continue
            tried += 1
            if tried > MAX_CANDIDATES:
                out.unresolved = True
                out.notes.append(f"{family.kind}: candidate budget exhausted")
                break
            w = _verify_member(family, values, member, target, None if conic else target_sig, field, target_poly)
            if w.verdict == "EquivalentReal":
                out.real.append(w)
                if not exhaustive:
                    break
            elif w.verdict == "EquivalentComplexOnly":
                out.complex.append(w)
            elif w.verdict == "RealUndetermined":
                out.undetermined = True
        if tried > MAX_CANDIDATES or ((out.real or (field == "complex" and out.complex)) and not exhaustive):
            break
    return out


# ---------------------------------------------------------------------------
# The correspondence route.


def _coefficient_rows(polys: Sequence[Poly], var: str, d: int) -> list[list[Fraction]]:
    rows = []
    for F in polys:
        co = F.coefficients_in(var)
        rows.append([co[k].constant_value() if k in co else Fraction(0) for k in range(d + 1)])
    return rows


def _solve_right(M: Sequence[Sequence], C: Sequence[Sequence]) -> linalg.Matrix | None:
    """X with X . C = M exactly, C of full row rank."""
    Ct = [list(r) for r in zip(*C)]
    G = linalg.matmul(C, Ct)
    if linalg.det(G) == 0:
        return None
    X = linalg.matmul(linalg.matmul(M, Ct), linalg.inverse(G))
    return X if linalg.matmul(X, C) == linalg.as_matrix(M) else None


def decompose_camera(P: Sequence[Sequence], curve3: ParamCurve3, kind: str):
    """(family, values, A) with P = A . P0 . B(values)."""
    P = linalg.as_matrix(P)
    if kind == "central":
        fam = central_family(curve3)
        L = [row[:3] for row in P]
        c = linalg.apply(linalg.inverse(L), [row[3] for row in P])
        return fam, dict(zip(fam.parameters, c)), L
    fams = {f.kind: f for f in parallel_families(curve3)}
    v = linalg.nullspace([row[:3] for row in P[:2]], 3)[0]
    if v[2] != 0:
        fam, values = fams["parallel-delta"], {"a1": -v[0] / v[2], "a2": -v[1] / v[2]}
    elif v[1] != 0:
        fam, values = fams["parallel-beta"], {"b": -v[0] / v[1]}
    else:
        fam, values = fams["parallel-alpha"], {}
    A = _solve_right(P, fam.camera_base(values))
    return fam, values, A


def correspondence_cameras(curve3: ParamCurve3, target: ParamCurve2, kind: str, *, limit: int = 4,
                           max_height: int = 3) -> list[Witness]:
    """Cameras P with P . curve3(s) = target(phi(s)) for a Moebius phi (sampled, verified)."""
    s = curve3.param
    hom = curve3.homogeneous()
    D = max(w.degree(s) for w in hom)
    C = _coefficient_rows(hom, s, D)
    X, Y, Z = target.homogeneous()
    d = max(F.degree(target.param) for F in (X, Y, Z))
    if d != D or linalg.rank(C) < 4:
        return []
    kernel = linalg.nullspace(C, D + 1)
    target_poly = implicitize(target.components, ("x", "y"), param=target.param).poly
    a, b, c = Poly.var("a1"), Poly.var("a2"), Poly.var("b")
    out = []
    for chart in ("e1", "e0"):
        if chart == "e1":
            img, _ = _moebius_image_rows(target, a, b, c, Poly.constant(1), "_s")
            unknowns, jac = ("a1", "a2", "b"), a - b * c
        else:
            img, _ = _moebius_image_rows(target, a, b, Poly.constant(1), Poly.constant(0), "_s")
            unknowns, jac = ("a1", "a2"), -b
        eqs = [sum((entry * kv[j] for j, entry in enumerate(row)), Poly.constant(0)) for row in img for kv in kernel]
        if kind == "parallel":
            w0 = C[3]
            zi = img[2]
            eqs += [zi[i] * w0[j] - zi[j] * w0[i] for i in range(D + 1) for j in range(i + 1, D + 1)]
        try:
            sol = solve_system(eqs, unknowns, [jac], max_height=max_height, max_samples=12, rational_only=True)
        except EliminationError:
            continue
        for pt in sol.rational_points:
            vals = {u: pt[u] for u in unknowns}
            A_, B_ = vals["a1"], vals["a2"]
            C_ = vals.get("b", Fraction(1))
            E_ = Fraction(1) if chart == "e1" else Fraction(0)
            if A_ * E_ - B_ * C_ == 0:
                continue
            M = [[e.evaluate(vals).constant_value() for e in row] for row in img]
            P = _solve_right(M, C)
            if P is None:
                continue
            if kind == "central" and not is_central_camera(P):
                continue
            if kind == "parallel":
                if not is_parallel_camera(P):
                    continue
                P = [[x / P[2][3] for x in row] for row in P]
            n = verify_camera(P, curve3, target_poly)
            if not n:
                continue
            fam, values, A = decompose_camera(P, curve3, kind)
            T = Poly.var(target.param)
            phi = RatFunc(T * A_ + B_, T * C_ + E_)
            out.append(Witness(fam.kind, values, "EquivalentReal", A, phi, linalg.as_matrix(P), n, "correspondence"))
            if len(out) >= limit:
                return out
    return out


# ---------------------------------------------------------------------------
# Decisions.


def _line_target(curve3: ParamCurve3, target: ParamCurve2, kind: str, field: str) -> ProjectionDecision:
    dec = ProjectionDecision("No", kind, field)
    if not is_coplanar(curve3):
        dec.evidence.append("target is a line and the space curve is not planar")
        return dec
    dec.answer = "Yes"
    dec.evidence.append("target is a line and the space curve is planar")
    target_poly = implicitize(target.components, ("x", "y"), param=target.param).poly
    s = curve3.param
    comps = curve3.components
    from .algebra import differentiate

    d1 = [differentiate(z, s) for z in comps]
    d2 = [differentiate(z, s) for z in d1]
    fams = [central_family(curve3)] if kind == "central" else parallel_families(curve3)
    for p in primes():
        try:
            q = [z(**{s: p}) for z in comps]
            u = [z(**{s: p}) for z in d1]
            w = [z(**{s: p}) for z in d2]
        except ZeroDivisionError:
            continue
        trials = []
        if kind == "central":
            for l1, l2 in ((1, 1), (2, 1), (1, 2), (3, 1)):
                centre = [q[i] + l1 * u[i] + l2 * w[i] for i in range(3)]
                trials.append((fams[0], {"c1": -centre[0], "c2": -centre[1], "c3": -centre[2]}))
        else:
            for direction in (u, w):
                if direction[2] != 0:
                    trials.append((fams[0], {"a1": -direction[0] / direction[2], "a2": -direction[1] / direction[2]}))
                elif direction[1] != 0:
                    trials.append((next(f for f in fams if f.kind == "parallel-beta"), {"b": -direction[0] / direction[1]}))
                else:
                    trials.append((next(f for f in fams if f.kind == "parallel-alpha"), {}))
        for fam, values in trials:
            try:
                member = fam.member(values)
            except (ZeroDivisionError, ValueError, AlgebraError):
                continue
            if not is_line(member):
                continue
            res = equivalent(target, member, fam.group, field)
            if res.transform is None:
                continue
            P = reconstruct_camera(fam, values, res.transform)
            n = verify_camera(P, curve3, target_poly)
            if n:
                dec.witnesses.append(Witness(fam.kind, values, res.verdict, res.transform, None, P, n))
                dec.camera, dec.verification = P, n
                return dec
        if p > 50:
            break
    dec.evidence.append("no certificate camera found among the sampled centres")
    return dec


def _aggregate(dec: ProjectionDecision, outcomes: list[_Outcome], field: str):
    real = [w for o in outcomes for w in o.real]
    cplx = [w for o in outcomes for w in o.complex]
    for o in outcomes:
        dec.evidence += o.notes
        dec.variety += o.variety
    if real:
        dec.answer = "Yes"
        dec.witnesses = real + cplx
    elif cplx:
        dec.answer = "Yes" if field == "complex" else "YesComplexOnly"
        dec.witnesses = cplx
    elif any(o.undetermined or o.unresolved for o in outcomes):
        dec.answer = "Undetermined"
    else:
        dec.answer = "No"
    with_camera = [w for w in dec.witnesses if w.camera is not None]
    if with_camera:
        dec.camera, dec.verification = with_camera[0].camera, with_camera[0].verification
    return dec


def _with_correspondence(dec: ProjectionDecision, curve3, target, kind, field) -> bool:
    found = correspondence_cameras(curve3, target, kind)
    if not found:
        dec.evidence.append("correspondence route: no rational camera of small height")
        return False
    found.sort(key=lambda w: point_key(w.values, sorted(w.values)))
    dec.answer = "Yes"
    dec.witnesses = found
    dec.camera, dec.verification = found[0].camera, found[0].verification
    dec.evidence.append("correspondence route: camera found and verified")
    return True


def _decide(curve3: ParamCurve3, target: ParamCurve2, kind: str, field: str, exhaustive: bool,
            route: str, max_height: int) -> ProjectionDecision:
    if field not in ("real", "complex"):
        raise ValueError(f"unknown field {field!r}")
    if route not in ("auto", "signature", "correspondence"):
        raise ValueError(f"unknown route {route!r}")
    _require_curve(curve3)
    dec = ProjectionDecision("Undetermined", kind, field)
    tclass = classify(target, "real")
    dec.evidence.append(f"target class {tclass}")
    if tclass == "Line":
        return _line_target(curve3, target, kind, field)
    if route == "correspondence":
        _with_correspondence(dec, curve3, target, kind, field)
        return dec
    families = [central_family(curve3)] if kind == "central" else _parallel_order(parallel_families(curve3))
    group = families[0].group
    conic = tclass in CONICS
    target_poly = implicitize(target.components, ("x", "y"), param=target.param).poly
    target_sig = None
    outcomes = []
    too_large = False
    for fam in families:
        try:
            if fam.parameters:
                _jet_size_guard(fam, 5 if conic else (8 if group == "projective" else 6))
            if target_sig is None and not conic:
                target_sig = _target_data(target, group)
            o = decide_family(fam, target, field, exhaustive=exhaustive, max_height=max_height,
                              target_class=tclass, target_sig=target_sig, target_poly=target_poly)
        except _TooLarge as exc:
            dec.evidence.append(f"{fam.kind}: signature route skipped ({exc})")
            too_large = True
            o = _Outcome(fam, unresolved=True)
        outcomes.append(o)
        if (o.real or (field == "complex" and o.complex)) and not exhaustive:
            break
    _aggregate(dec, outcomes, field)
    if dec.answer != "Yes" and route == "auto" and not conic:
        # sampled heights may miss real witnesses; this route can only upgrade to Yes
        _with_correspondence(dec, curve3, target, kind, field)
    return dec


def _parallel_order(fams: list[ProjectionFamily]) -> list[ProjectionFamily]:
    """alpha first (no unknowns), then delta and beta."""
    order = {"parallel-alpha": 0, "parallel-delta": 1, "parallel-beta": 2}
    return sorted(fams, key=lambda f: order[f.kind])


def decide_central(curve3: ParamCurve3, curve2: ParamCurve2, field: str = "real", *, exhaustive: bool = False,
                   route: str = "auto", max_height: int = 3) -> ProjectionDecision:
    return _decide(curve3, curve2, "central", field, exhaustive, route, max_height)


def decide_parallel(curve3: ParamCurve3, curve2: ParamCurve2, field: str = "real", *, exhaustive: bool = False,
                    route: str = "auto", max_height: int = 3) -> ProjectionDecision:
    return _decide(curve3, curve2, "parallel", field, exhaustive, route, max_height)


def check_witness(curve3: ParamCurve3, curve2: ParamCurve2, family_kind: str, values: dict,
                  field: str = "real") -> Witness | None:
    """Verify one family member as a projection witness; None if it is not generic."""
    fams = [central_family(curve3)] + parallel_families(curve3)
    fam = next(f for f in fams if f.kind == family_kind)
    conic = classify(curve2, "real") in CONICS
    member = _member_generic(fam, values, conic)
    if member is None:
        return None
    target_poly = implicitize(curve2.components, ("x", "y"), param=curve2.param).poly
    return _verify_member(fam, values, member, curve2, None, field, target_poly)
