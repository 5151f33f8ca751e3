"""Affine and projective equivalence of parameterized plane curves.

Direction convention: a returned transform A and reparameterization phi
satisfy A . c2(s) = c1(phi(s)) in homogeneous coordinates, i.e. A maps the
second curve onto the first.  Transforms are additionally checked in the
other direction (A^-1 maps the first curve onto the second).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import Poly, RatFunc, substitute
from .elimination import (
    implicitize,
    isolate_real_roots,
    primes,
    solve_system,
)
from .invariants import ParamCurve2, classify, invariants
from .signature import Constant, Curve, Signature, signature_from_pair, signatures_equal_complex

VERDICTS = ("EquivalentReal", "EquivalentComplexOnly", "NotEquivalent", "RealUndetermined")

# A curve is exceptional when its class is anything but General.
EXCEPTIONAL = ("Line", "Parabola", "Ellipse", "Hyperbola", "ConicComplexClass")

VERIFY_POINTS = 20
PREIMAGE_TESTS = 12


@dataclass
class EquivalenceResult:
    verdict: str
    reparameterization: RatFunc | None = None
    transform: linalg.Matrix | None = None
    evidence: list[str] = dc_field(default_factory=list)
    group: str = "projective"
    field: str = "real"
    candidates: list[tuple[RatFunc, linalg.Matrix | None]] = dc_field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        """The decision for the requested field."""
        if self.field == "complex":
            return self.verdict != "NotEquivalent"
        return self.verdict == "EquivalentReal"

    @property
    def decided(self) -> bool:
        return self.field == "complex" or self.verdict != "RealUndetermined"


# ---------------------------------------------------------------------------
# Helpers on curves.


def _rename(f: RatFunc, old: str, new: str) -> RatFunc:
    if old == new:
        return f
    return substitute(f, {old: RatFunc(Poly.var(new))})


def homogeneous_point(curve: ParamCurve2, value) -> list[Fraction]:
    x, y = curve.point(value)
    return [x, y, Fraction(1)]


def _cross(q, r):
    return [q[1] * r[2] - q[2] * r[1], q[2] * r[0] - q[0] * r[2], q[0] * r[1] - q[1] * r[0]]


def implicit_poly(curve: ParamCurve2) -> Poly:
    return implicitize(curve.components, ("x", "y"), param=curve.param).poly


def _on_curve(F: Poly, q: Sequence[Fraction]) -> bool:
    if q[2] == 0:
        return False
    return F(x=q[0] / q[2], y=q[1] / q[2]) == 0


def transform_maps_onto(A: linalg.Matrix, src: ParamCurve2, dst_poly: Poly, count: int = VERIFY_POINTS) -> bool:
    """A sends `count` sampled points of src onto the zero set of dst_poly."""
    n = 0
    for p in primes():
        try:
            q = linalg.apply(A, homogeneous_point(src, p))
        except ZeroDivisionError:
            continue
        if q[2] == 0:
            continue
        if not _on_curve(dst_poly, q):
            return False
        n += 1
        if n == count:
            return True


def verify_transform(A: linalg.Matrix, c1: ParamCurve2, c2: ParamCurve2, count: int = VERIFY_POINTS) -> bool:
    """A maps c2 into c1 and A^-1 maps c1 into c2 (sampled, exact)."""
    if linalg.det(A) == 0:
        return False
    F1, F2 = implicit_poly(c1), implicit_poly(c2)
    return (transform_maps_onto(A, c2, F1, count)
            and transform_maps_onto(linalg.inverse(A), c1, F2, count))


# ---------------------------------------------------------------------------
# Reparameterizations.


def _numerator_difference(f1: RatFunc, f2: RatFunc) -> Poly:
    return f1.num * f2.den - f2.num * f1.den


def find_reparameterizations(sig1: Curve, sig2: Curve) -> list[RatFunc]:
    """All t = phi(s) of degree 1 in t with K1(phi) = K2 and T1(phi) = T2.

    Returned in the parameter of sig2; polynomial phi first.
    """
    t, s = "_t", "_s"
    K1, T1 = _rename(sig1.K, sig1.param, t), _rename(sig1.T, sig1.param, t)
    K2, T2 = _rename(sig2.K, sig2.param, s), _rename(sig2.T, sig2.param, s)
    P = _numerator_difference(K1, K2)
    Q = _numerator_difference(T1, T2)
    if P.is_zero() and Q.is_zero():
        return []
    g = P if Q.is_zero() else (Q if P.is_zero() else P.gcd(Q))
    found = []
    for f, _ in g.irreducible_factors():
        if f.degree(t) != 1 or f.degree(s) < 1:
            continue
        coeffs = f.coefficients_in(t)
        phi = RatFunc(-coeffs.get(0, Poly.constant(0)), coeffs[1])
        if phi.is_constant(s):
            continue
        b = {t: phi}
        if substitute(K1, b) == K2 and substitute(T1, b) == T2:
            found.append(_rename(phi, s, sig2.param))
    found.sort(key=lambda f: (not f.den.is_constant(), max(f.num.total_degree(), f.den.total_degree()), len(f.num) + len(f.den), str(f)))
    return found


def find_reparameterization(sig1: Curve, sig2: Curve) -> RatFunc | None:
    found = find_reparameterizations(sig1, sig2)
    return found[0] if found else None


# ---------------------------------------------------------------------------
# Transform reconstruction.


class ReconstructionError(ValueError):
    pass


def _matched_pairs(c1: ParamCurve2, c2: ParamCurve2, phi: RatFunc, limit: int = 60):
    seen = set()
    for p in primes():
        if limit == 0:
            return
        limit -= 1
        try:
            src = homogeneous_point(c2, p)
            t = phi(**{c2.param: p})
            dst = homogeneous_point(c1, t)
        except ZeroDivisionError:
            continue
        key = (tuple(src), tuple(dst))
        if key in seen:
            continue
        seen.add(key)
        yield src, dst


def _solve_projective(pairs) -> linalg.Matrix | None:
    rows = []
    for p, q in pairs:
        # q x (A p) = 0, unknowns A row-major
        for i, j in ((1, 2), (2, 0), (0, 1)):
            row = [Fraction(0)] * 9
            for k in range(3):
                row[j * 3 + k] += q[i] * p[k]
                row[i * 3 + k] -= q[j] * p[k]
            rows.append(row)
    ns = linalg.nullspace(rows, 9)
    if len(ns) != 1:
        return None
    v = ns[0]
    return linalg.normalize([v[0:3], v[3:6], v[6:9]])


def _solve_affine(pairs) -> linalg.Matrix | None:
    rows = []
    for p, q in pairs:
        x, y = p[0] / p[2], p[1] / p[2]
        u, w = q[0] / q[2], q[1] / q[2]
        rows.append([x, y, 1, 0, 0, 0, -u])
        rows.append([0, 0, 0, x, y, 1, -w])
    ns = linalg.nullspace(rows, 7)
    if len(ns) != 1 or ns[0][6] == 0:
        return None
    v = [c / ns[0][6] for c in ns[0]]
    return [v[0:3], v[3:6], [Fraction(0), Fraction(0), Fraction(1)]]


def _pair_matches(A, p, q) -> bool:
    return all(c == 0 for c in _cross(linalg.apply(A, p), q))


def reconstruct_transform(c1: ParamCurve2, c2: ParamCurve2, phi: RatFunc, group: str) -> linalg.Matrix:
    """A with A . c2(s) = c1(phi(s)): affine from 3 pairs, projective from 4, checked on 4 more."""
    need = 3 if group == "affine" else 4
    pairs = list(_matched_pairs(c1, c2, phi))
    solve = _solve_affine if group == "affine" else _solve_projective
    for start in range(0, max(1, len(pairs) - need - 4 + 1)):
        base = pairs[start:start + need]
        extra = pairs[start + need:start + need + 4]
        if len(base) < need or len(extra) < 4:
            break
        A = solve(base)
        if A is None or linalg.det(A) == 0:
            continue
        if all(_pair_matches(A, p, q) for p, q in extra):
            return A
    raise ReconstructionError("no general-position samples found for the transform")


# ---------------------------------------------------------------------------
# Exceptional curves.


def _homogeneous_coefficients(curve: ParamCurve2) -> tuple[list[list[Fraction]], int]:
    """Rows (X, Y, Z) of coefficients in 1, t, ..., t^d."""
    X, Y, Z = curve.homogeneous()
    p = curve.param
    d = max(X.degree(p), Y.degree(p), Z.degree(p))
    rows = []
    for F in (X, Y, Z):
        co = F.coefficients_in(p)
        rows.append([co[k].constant_value() if k in co else Fraction(0) for k in range(d + 1)])
    return rows, d


def _moebius_image_rows(curve: ParamCurve2, a, b, c, e, s: str):
    """Coefficient rows of curve(phi(s)) for phi = (a s + b)/(c s + e), homogenized."""
    rows, d = _homogeneous_coefficients(curve)
    S = Poly.var(s)
    num = S * a + b
    den = S * c + e
    out = []
    for row in rows:
        acc = Poly.constant(0)
        for k, coef in enumerate(row):
            if coef:
                acc = acc + num ** k * den ** (d - k) * coef
        co = acc.coefficients_in(s)
        out.append([co.get(k, Poly.constant(0)) for k in range(d + 1)])
    return out, d


def moebius_correspondences(c1: ParamCurve2, c2: ParamCurve2, group: str, limit: int = 4) -> list[tuple[RatFunc, linalg.Matrix]]:
    """Degree-1 reparameterizations phi with c1(phi(s)) = A c2(s) for a group element A.

    Unknown phi = (a s + b)/(c s + e), searched in the charts e = 1 and
    (e = 0, c = 1); rational points of the solution set are verified.
    """
    rows2, d2 = _homogeneous_coefficients(c2)
    rows1, d1 = _homogeneous_coefficients(c1)
    if d1 != d2 or linalg.rank(rows2) < 3:
        return []
    kernel = linalg.nullspace(rows2, d2 + 1)
    a, b, c = Poly.var("a1"), Poly.var("a2"), Poly.var("b")
    s = "_s"
    results = []
    for chart in ("e1", "e0"):
        if chart == "e1":
            img, _ = _moebius_image_rows(c1, a, b, c, Poly.constant(1), s)
            unknowns = ("a1", "a2", "b")
            jac = a - b * c
        else:
            img, _ = _moebius_image_rows(c1, a, b, Poly.constant(1), Poly.constant(0), s)
            unknowns = ("a1", "a2")
            jac = -b
        eqs = []
        for row in img:
            for kv in kernel:
                eqs.append(sum((entry * kv[j] for j, entry in enumerate(row)), Poly.constant(0)))
        if group == "affine":
            z2 = rows2[2]
            zi = img[2]
            for i in range(len(z2)):
                for j in range(i + 1, len(z2)):
                    eqs.append(zi[i] * z2[j] - zi[j] * z2[i])
        sol = solve_system(eqs, unknowns, [jac], max_height=3, max_samples=8)
        for pt in sol.rational_points:
            vals = {u: pt[u] for u in unknowns}
            A_, B_ = vals["a1"], vals["a2"]
            C_ = vals.get("b", Fraction(1))
            E_ = Fraction(1) if chart == "e1" else Fraction(0)
            if A_ * E_ - B_ * C_ == 0:
                continue
            S = Poly.var(c2.param)
            phi = RatFunc(S * A_ + B_, S * C_ + E_)
            try:
                A = reconstruct_transform(c1, c2, phi, group)
            except ReconstructionError:
                continue
            if verify_transform(A, c1, c2):
                results.append((phi, A))
                if len(results) >= limit:
                    return results
    return results


def _line_transform(c1: ParamCurve2, c2: ParamCurve2) -> linalg.Matrix | None:
    pts1, pts2 = [], []
    for p in primes():
        try:
            q1, q2 = c1.point(p), c2.point(p)
        except ZeroDivisionError:
            continue
        if q1 not in pts1 and q2 not in pts2 and len(pts1) < 2:
            pts1.append(q1)
            pts2.append(q2)
        if len(pts1) == 2:
            break
    (x1, y1), (x2, y2) = pts2
    (u1, w1), (u2, w2) = pts1
    # complete each segment to a frame with its perpendicular
    src = [[x2 - x1, -(y2 - y1), x1], [y2 - y1, x2 - x1, y1], [0, 0, 1]]
    dst = [[u2 - u1, -(w2 - w1), u1], [w2 - w1, u2 - u1, w1], [0, 0, 1]]
    A = linalg.matmul(dst, linalg.inverse(src))
    return A


def _exceptional(c1, c2, k1, k2, group, fld) -> EquivalenceResult:
    res = EquivalenceResult("NotEquivalent", group=group, field=fld)
    if k1 == "General" or k2 == "General":
        res.evidence.append(f"exceptional vs non-exceptional ({k1}, {k2})")
        return res
    if (k1 == "Line") != (k2 == "Line"):
        res.evidence.append(f"line vs conic ({k1}, {k2})")
        return res
    if k1 == "Line":
        res.verdict = "EquivalentReal"
        res.evidence.append("lines form a single class")
        A = _line_transform(c1, c2)
        if A is not None and verify_transform(A, c1, c2):
            res.transform = A
        return res
    if group == "affine" and (k1 == "Parabola") != (k2 == "Parabola"):
        res.evidence.append(f"conic classes differ for {group}: {k1} vs {k2}")
        return res
    if group == "affine" and k1 != k2:
        # ellipse vs hyperbola: one affine class over C, two over R
        res.verdict = "EquivalentComplexOnly"
        res.evidence.append(f"conic classes {k1} and {k2} merge only over C")
        return res
    res.verdict = "EquivalentReal"
    res.evidence.append(f"conic class table: {k1} ~ {k2} under {group}")
    if group == "projective":
        A = _conic_projective_transform(c1, c2)
        if A is not None:
            res.transform = A
            res.reparameterization = RatFunc(Poly.var(c2.param))
            return res
    corr = moebius_correspondences(c1, c2, group, limit=1)
    if corr:
        res.reparameterization, res.transform = corr[0]
    else:
        res.evidence.append("no rational transform of small height found; class table decides")
    return res


def _conic_projective_transform(c1, c2):
    r1, d1 = _homogeneous_coefficients(c1)
    r2, d2 = _homogeneous_coefficients(c2)
    if d1 != 2 or d2 != 2 or linalg.rank(r1) < 3 or linalg.rank(r2) < 3:
        return None
    A = linalg.normalize(linalg.matmul(r1, linalg.inverse(r2)))
    return A if verify_transform(A, c1, c2) else None


# ---------------------------------------------------------------------------
# Real preimage test.


def _defined_values(f: RatFunc, g: RatFunc, param: str, count: int):
    out = []
    for p in primes():
        try:
            out.append((p, f(**{param: p}), g(**{param: p})))
        except ZeroDivisionError:
            continue
        if len(out) == count:
            return out


def _value_at_infinity(f: RatFunc, param: str):
    dn, dd = f.num.degree(param), f.den.degree(param)
    if dn > dd:
        return None
    if dn < dd:
        return Fraction(0)
    return f.num.coefficients_in(param)[dn].constant_value() / f.den.coefficients_in(param)[dd].constant_value()


def has_real_preimage(sig: Curve, k0: Fraction, t0: Fraction) -> bool:
    """Is (k0, t0) = (K(s), T(s)) for some real s, including s = infinity?"""
    p = sig.param
    P = (sig.K - k0).num
    Q = (sig.T - t0).num
    g = P if Q.is_zero() else (Q if P.is_zero() else P.gcd(Q))
    if g.is_zero():
        return True
    if g.degree(p) > 0 and isolate_real_roots(g).intervals:
        return True
    return _value_at_infinity(sig.K, p) == k0 and _value_at_infinity(sig.T, p) == t0


def real_preimage_test(sig1: Curve, sig2: Curve) -> tuple[bool, list[str]]:
    """True when a sampled signature point of one map has no real preimage under the other."""
    notes = []
    for a, b, label in ((sig1, sig2, "1->2"), (sig2, sig1, "2->1")):
        for t0, k0, tau0 in _defined_values(a.K, a.T, a.param, PREIMAGE_TESTS):
            if not has_real_preimage(b, k0, tau0):
                notes.append(f"signature point ({k0}, {tau0}) at {a.param}={t0} has no real preimage ({label})")
                return True, notes
    notes.append(f"all {2 * PREIMAGE_TESTS} sampled signature points have real preimages")
    return False, notes


# ---------------------------------------------------------------------------


def equivalent(c1: ParamCurve2, c2: ParamCurve2, group: str = "projective", field: str = "real") -> EquivalenceResult:
    if group not in ("affine", "projective"):
        raise ValueError(f"unknown group {group!r}")
    if field not in ("real", "complex"):
        raise ValueError(f"unknown field {field!r}")
    k1, k2 = classify(c1, "real"), classify(c2, "real")
    if k1 != "General" or k2 != "General":
        return _exceptional(c1, c2, k1, k2, group, field)
    sig1 = signature_from_pair(invariants(c1, group))
    sig2 = signature_from_pair(invariants(c2, group))
    return _compare(c1, c2, sig1, sig2, group, field)


def equivalent_to_signature(c1: ParamCurve2, sig1: Signature, c2: ParamCurve2, group: str = "projective",
                            field: str = "real") -> EquivalenceResult:
    """`equivalent` for a non-exceptional c1 whose signature is already known."""
    k2 = classify(c2, "real")
    if k2 != "General":
        return _exceptional(c1, c2, "General", k2, group, field)
    sig2 = signature_from_pair(invariants(c2, group))
    return _compare(c1, c2, sig1, sig2, group, field)


def _compare(c1, c2, sig1: Signature, sig2: Signature, group, fld) -> EquivalenceResult:
    res = EquivalenceResult("NotEquivalent", group=group, field=fld)
    if not signatures_equal_complex(sig1, sig2):
        res.evidence.append("signatures differ over C")
        return res
    res.evidence.append("signatures agree over C")
    if isinstance(sig1, Constant):
        corr = moebius_correspondences(c1, c2, group, limit=1)
        if corr:
            res.verdict = "EquivalentReal"
            res.reparameterization, res.transform = corr[0]
            res.candidates = corr
            res.evidence.append("constant signatures; degree-1 correspondence found")
        else:
            res.verdict = "RealUndetermined"
            res.evidence.append("constant signatures; no rational degree-1 correspondence of small height")
        return res
    phis = find_reparameterizations(sig1, sig2)
    for phi in phis:
        try:
            A = reconstruct_transform(c1, c2, phi, group)
        except ReconstructionError:
            res.candidates.append((phi, None))
            continue
        if verify_transform(A, c1, c2):
            res.candidates.append((phi, A))
        else:
            res.candidates.append((phi, None))
    good = [(p, A) for p, A in res.candidates if A is not None]
    if good:
        res.verdict = "EquivalentReal"
        res.reparameterization, res.transform = good[0]
        res.evidence.append(f"real reparameterization {c1.param} = {good[0][0]}")
        return res
    differ, notes = real_preimage_test(sig1, sig2)
    res.evidence += notes
    res.verdict = "EquivalentComplexOnly" if differ else "RealUndetermined"
    return res
