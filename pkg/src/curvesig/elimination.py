"""Resultants, implicitization, small polynomial systems and real roots.

The system solver is aimed at the tiny parameter systems (at most three
unknowns) that come out of projection problems.  It eliminates by iterated
resultants, factors eliminants over Q, lifts rational solutions exactly and
describes positive-dimensional components by generators plus sampled
rational points of small height.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import flint

from .algebra import (
    AlgebraError,
    Poly,
    RatFunc,
    ZeroDenominatorError,
    sort_variables,
    to_fraction,
    to_fmpq,
)


class EliminationError(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# Sample parameters.


def primes() -> Iterator[int]:
    """2, 3, 5, 7, ... (optionally shuffled by CURVESIG_SAMPLE_SEED)."""
    seed = os.environ.get("CURVESIG_SAMPLE_SEED")
    offset = 0
    if seed:
        offset = int(seed) % 97
    found = 0
    n = 2
    while True:
        if all(n % p for p in range(2, math.isqrt(n) + 1)):
            if found >= offset:
                yield n
            found += 1
        n += 1


def sample_values(count: int, avoid: Iterable[Poly] = (), var: str = "t") -> list[Fraction]:
    """`count` primes at which none of the `avoid` polynomials (in `var`) vanish."""
    avoid = [p for p in avoid if not p.is_zero()]
    out = []
    for p in primes():
        if all(q.evaluate({var: p}).constant_value() != 0 for q in avoid if q.degree(var) >= 0 and set(q.used_variables()) <= {var}):
            out.append(Fraction(p))
            if len(out) == count:
                return out


# ---------------------------------------------------------------------------
# Resultants.


def _prem(a, b, idx: int):
    """Pseudo-remainder of raw flint polys in the variable with index idx."""
    db = b.degrees()[idx]
    lb, _ = _lead(b, idx)
    delta = a.degrees()[idx] - db + 1
    e = 0
    while not a.is_zero() and a.degrees()[idx] >= db:
        la, da = _lead(a, idx)
        a = lb * a - la * _mono(a, idx, da - db) * b
        e += 1
    if e < delta:
        a = a * lb ** int(delta - e)
    return a


def _lead(p, idx: int):
    d = int(p.degrees()[idx])
    ctx = p.context()
    data = {}
    for m, c in zip(p.monoms(), p.coeffs()):
        if m[idx] == d:
            key = list(m)
            key[idx] = 0
            data[tuple(key)] = c
    return ctx.from_dict(data), d


def _mono(p, idx: int, k: int):
    ctx = p.context()
    key = [0] * ctx.nvars()
    key[idx] = int(k)
    return ctx.from_dict({tuple(key): 1})


def resultant(a: Poly, b: Poly, var: str) -> Poly:
    """Sylvester resultant of a and b with respect to var (exact, not normalized).

    Computed with the subresultant pseudo-remainder sequence.
    """
    a = Poly.coerce(a)
    b = Poly.coerce(b)
    if a.is_zero() or b.is_zero():
        return Poly.constant(0)
    names = sort_variables(a.variables + b.variables + (var,))
    A = a.in_variables(names)
    B = b.in_variables(names)
    idx = names.index(var)
    da = int(A.degrees()[idx])
    db = int(B.degrees()[idx])
    if da == 0:
        return Poly(A ** db, names).trimmed()
    if db == 0:
        return Poly(B ** da, names).trimmed()
    sign = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da % 2 and db % 2:
            sign = -sign
    ctx = A.context()
    g = ctx.constant(1)
    h = ctx.constant(1)
    while True:
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        R = _prem(A, B, idx)
        A = B
        da = db
        if R.is_zero():
            return Poly.constant(0)
        B = _exact(R, g * h ** delta)
        db = int(B.degrees()[idx])
        g, _ = _lead(A, idx)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _exact(g ** delta, h ** (delta - 1))
        if db == 0:
            break
    if da == 1:
        res = B
    else:
        res = _exact(B ** da, h ** (da - 1))
    return Poly(res * sign, names).trimmed()


def _exact(a, b):
    q, r = divmod(a, b)
    if not r.is_zero():
        raise EliminationError("inexact division in subresultant sequence")
    return q


# ---------------------------------------------------------------------------
# Real root isolation.


def _as_fmpq_poly(p: Poly) -> tuple["flint.fmpq_poly", str]:
    used = p.used_variables()
    if len(used) > 1:
        raise EliminationError("polynomial is not univariate")
    if not used:
        return flint.fmpq_poly([to_fmpq(p.constant_value())]), ""
    v = used[0]
    coeffs = p.coefficients_in(v)
    deg = max(coeffs)
    arr = [to_fmpq(coeffs[k].constant_value()) if k in coeffs else flint.fmpq(0) for k in range(deg + 1)]
    return flint.fmpq_poly(arr), v


def _sturm_chain(f: "flint.fmpq_poly") -> list:
    chain = [f, f.derivative()]
    while chain[-1].degree() > 0:
        r = -(chain[-2] % chain[-1])
        if r == 0:
            break
        chain.append(r)
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    fx = to_fmpq(x)
    signs = []
    for q in chain:
        v = q(fx)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for u, w in zip(signs, signs[1:]) if u != w)


def _count(chain, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in (lo, hi]."""
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


@dataclass(frozen=True)
class RealRootIsolation:
    polynomial: Poly
    intervals: list[tuple[Fraction, Fraction]]

    def refine(self, width: Fraction) -> "RealRootIsolation":
        return RealRootIsolation(self.polynomial, [refine_root(self.polynomial, iv, width) for iv in self.intervals])


def _squarefree(f: "flint.fmpq_poly") -> "flint.fmpq_poly":
    g = f.gcd(f.derivative())
    return f / g if g.degree() > 0 else f


def isolate_real_roots(p: Poly) -> RealRootIsolation:
    """Disjoint isolating intervals (closed, rational endpoints) for all real roots.

    Rational roots met during bisection come back as degenerate intervals
    [r, r]; every other root gets an open interval (a, b) of width at most 1
    with integer endpoints when possible.
    """
    p = Poly.coerce(p)
    if p.is_zero():
        raise EliminationError("cannot isolate the roots of the zero polynomial")
    f, _ = _as_fmpq_poly(p)
    if f.degree() <= 0:
        return RealRootIsolation(p, [])
    f = _squarefree(f)
    chain = _sturm_chain(f)
    coeffs = [to_fraction(c) for c in f.coeffs()]
    lead = abs(coeffs[-1])
    bound = 1 + max(abs(c) / lead for c in coeffs[:-1])
    B = Fraction(1 << max(1, math.ceil(bound)).bit_length())
    intervals: list[tuple[Fraction, Fraction]] = []
    _bisect(f, chain, -B, B, _count(chain, -B, B), intervals)
    out = []
    for lo, hi in intervals:
        while hi - lo > 1:
            lo, hi = _split_once(f, lo, hi)
        out.append((lo, hi))
    out.sort()
    return RealRootIsolation(p, out)


def _midpoint(lo: Fraction, hi: Fraction) -> Fraction:
    if hi - lo > 1:
        return Fraction(math.floor((lo + hi) / 2))
    return (lo + hi) / 2


def _split_once(f, lo, hi):
    mid = _midpoint(lo, hi)
    fm = f(to_fmpq(mid))
    if fm == 0:
        return mid, mid
    if (f(to_fmpq(lo)) > 0) != (fm > 0):
        return lo, mid
    return mid, hi


def _bisect(f, chain, lo, hi, n, out, check_hi=True):
    """Isolate the n roots in (lo, hi]; hi is known not to be a root when check_hi is False."""
    if n and check_hi and f(to_fmpq(hi)) == 0:
        out.append((hi, hi))
        n -= 1
    if n == 0:
        return
    if n == 1:
        out.append((lo, hi))
        return
    mid = _midpoint(lo, hi)
    left = _count(chain, lo, mid)
    _bisect(f, chain, lo, mid, left, out)
    _bisect(f, chain, mid, hi, n - left, out, check_hi=False)


def refine_root(p: Poly, interval: tuple[Fraction, Fraction], width: Fraction) -> tuple[Fraction, Fraction]:
    lo, hi = interval
    if lo == hi:
        return interval
    f, _ = _as_fmpq_poly(p)
    f = _squarefree(f)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = f(to_fmpq(mid))
        if fm == 0:
            return (mid, mid)
        if (f(to_fmpq(lo)) > 0) != (fm > 0):
            hi = mid
        else:
            lo = mid
    return (lo, hi)


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of a univariate polynomial, ascending."""
    f, _ = _as_fmpq_poly(p)
    if f.degree() <= 0:
        return []
    _, facs = f.factor()
    roots = []
    for g, _ in facs:
        if g.degree() == 1:
            c = g.coeffs()
            roots.append(to_fraction(-c[0] / c[1]))
    return sorted(roots)


def count_real_roots(p: Poly) -> int:
    return len(isolate_real_roots(p).intervals)


# ---------------------------------------------------------------------------
# Implicitization.


@dataclass(frozen=True)
class ImplicitCurve:
    poly: Poly
    pruning_certificate: list[tuple[Fraction, ...]] = field(default_factory=list)
    out_vars: tuple[str, str] = ("x", "y")

    def __str__(self):
        return str(self.poly)


def _param_of(maps: Sequence[RatFunc]) -> str:
    names = set()
    for m in maps:
        names.update(m.variables)
    if len(names) != 1:
        raise EliminationError(f"expected a map in one parameter, got variables {sorted(names)}")
    return names.pop()


def implicit_degree_bound(maps: Sequence[RatFunc], param: str) -> int:
    return max(max(m.num.degree(param), m.den.degree(param)) for m in maps)


def implicitize(maps: Sequence[RatFunc], out_vars: tuple[str, str] = ("x", "y"), *, param: str | None = None) -> ImplicitCurve:
    """Irreducible polynomial whose zero set is the closure of the image of a plane map."""
    fx, fy = (RatFunc.coerce(m) for m in maps)
    if fx.is_constant() and fy.is_constant():
        raise EliminationError("the map is constant; its image is a point")
    if param is None:
        param = _param_of([fx, fy])
    u, v = (Poly.var(n) for n in out_vars)
    if fx.is_constant():
        poly = (u * fx.den - fx.num).canonical()
        return ImplicitCurve(poly, [], tuple(out_vars))
    if fy.is_constant():
        poly = (v * fy.den - fy.num).canonical()
        return ImplicitCurve(poly, [], tuple(out_vars))
    ex = fx.den * u - fx.num
    ey = fy.den * v - fy.num
    res = resultant(ex, ey, param)
    if res.is_zero():
        raise EliminationError("resultant vanished identically")
    factors = [f for f, _ in res.irreducible_factors() if set(f.used_variables()) & set(out_vars)]
    n = 1 + res.total_degree() * implicit_degree_bound([fx, fy], param)
    pts = _image_points(fx, fy, param, n)
    keep = []
    for f in factors:
        if all(f(**{out_vars[0]: a, out_vars[1]: b}) == 0 for a, b in pts):
            keep.append(f)
    if not keep:
        raise EliminationError("no factor of the resultant vanishes on the image")
    poly = Poly.constant(1)
    for f in keep:
        poly = poly * f
    poly = poly.canonical()
    if not substitute_map(poly, out_vars, fx, fy).is_zero():
        raise EliminationError("implicit equation fails back-substitution")
    return ImplicitCurve(poly, pts, tuple(out_vars))


def _image_points(fx: RatFunc, fy: RatFunc, param: str, n: int) -> list[tuple[Fraction, Fraction]]:
    pts = []
    for p in primes():
        try:
            pts.append((fx(**{param: p}), fy(**{param: p})))
        except ZeroDivisionError:
            continue
        if len(pts) == n:
            return pts


def substitute_map(poly: Poly, out_vars: Sequence[str], *maps: RatFunc) -> RatFunc:
    from .algebra import substitute

    return substitute(RatFunc(poly), dict(zip(out_vars, maps)))


def curve_contains_image(poly: Poly, out_vars: Sequence[str], fx: RatFunc, fy: RatFunc, n: int, param: str | None = None) -> bool:
    """poly vanishes at n distinct non-pole points of the parameterized curve."""
    if param is None:
        param = _param_of([fx, fy])
    for a, b in _image_points(fx, fy, param, n):
        if poly(**{out_vars[0]: a, out_vars[1]: b}) != 0:
            return False
    return True


def same_curve(map_a: Sequence[RatFunc], poly_a: Poly, map_b: Sequence[RatFunc], poly_b: Poly, out_vars: Sequence[str] = ("x", "y")) -> bool:
    """Mutual sampled vanishing with N = 1 + product of total-degree bounds."""
    da = max(poly_a.total_degree(), 1)
    db = max(poly_b.total_degree(), 1)
    return (curve_contains_image(poly_b, out_vars, *map_a, n=1 + da * db)
            and curve_contains_image(poly_a, out_vars, *map_b, n=1 + da * db))


# ---------------------------------------------------------------------------
# Systems.


@dataclass(frozen=True)
class AlgebraicPoint:
    """A real solution with at least one irrational coordinate.

    `exact` holds rational coordinates; `isolated` maps the remaining
    coordinates to (defining univariate polynomial, isolating interval).
    """

    exact: dict
    isolated: dict


@dataclass(frozen=True)
class Component:
    """A positive-dimensional piece: generators plus verified rational samples."""

    generators: list[Poly]
    samples: list[dict]
    parameterization: dict | None = None


@dataclass
class SolutionSet:
    dimension: str
    points: list
    variety_description: list[Component] | None = None

    @property
    def rational_points(self) -> list[dict]:
        pts = [p for p in self.points if isinstance(p, dict)]
        for comp in self.variety_description or []:
            pts.extend(s for s in comp.samples if s not in pts)
        return pts

    def is_empty(self) -> bool:
        return self.dimension == "empty"


def height(point: Mapping[str, Fraction]) -> int:
    return max((max(abs(v.numerator), v.denominator) for v in point.values()), default=0)


def point_key(point: Mapping[str, Fraction], unknowns: Sequence[str]):
    """Order: height, support size, then coordinatewise (nonzero before zero,
    smaller magnitude first, positive before negative)."""
    vals = [point[u] for u in unknowns]
    support = sum(1 for v in vals if v != 0)
    return (height(point), support, tuple((v == 0, abs(v), v < 0) for v in vals))


def satisfies(point: Mapping[str, Fraction], equations: Iterable[Poly], inequations: Iterable[Poly] = ()) -> bool:
    for e in equations:
        if e.evaluate(point).constant_value() != 0:
            return False
    for q in inequations:
        if not set(q.used_variables()) <= set(point):
            continue
        if q.evaluate(point).constant_value() == 0:
            return False
    return True


def _prepare(equations: Iterable[Poly]) -> list[Poly] | None:
    """Canonical, deduplicated nonzero equations; None when inconsistent."""
    out = []
    for e in equations:
        e = Poly.coerce(e)
        if e.is_zero():
            continue
        if e.is_constant():
            return None
        e = e.canonical()
        if not any(e == f for f in out):
            out.append(e)
    return out


def height_values(max_height: int) -> list[Fraction]:
    """Rationals ordered by height: 0, 1, -1, 2, -2, 1/2, -1/2, ..."""
    seen = []
    for h in range(0, max_height + 1):
        level = set()
        for q in range(1, h + 1):
            for p in range(0, h + 1):
                if max(p, q) == h and math.gcd(p, q) == 1:
                    level.add(Fraction(p, q))
        if h == 0:
            level = {Fraction(0)}
        for v in sorted(level, key=lambda f: (f.denominator != 1, f.denominator, f)):
            seen.append(v)
            if v != 0:
                seen.append(-v)
    return seen


class _Solver:
    def __init__(self, inequations: Sequence[Poly], max_height: int, max_samples: int, rational_only: bool = False):
        self.rational_only = rational_only
        self.inequations = [Poly.coerce(q) for q in inequations]
        self.max_height = max_height
        self.max_samples = max_samples

    # Each routine returns (points, algebraic_points, components) where points
    # are rational dicts over `unknowns`.

    def solve(self, eqs: list[Poly], unknowns: tuple[str, ...], depth: int = 0):
        eqs = _prepare(eqs)
        if eqs is None:
            return [], [], []
        if not unknowns:
            return ([{}] if not eqs else []), [], []
        if not eqs:
            comp = Component([], self.sample(lambda vals: [dict(vals)], unknowns, unknowns))
            return [], [], [comp]
        if depth > 12:
            raise EliminationError("elimination recursion too deep")
        if len(unknowns) == 1:
            return self.univariate(eqs, unknowns[0]) + ([],)
        g = eqs[0]
        for e in eqs[1:]:
            g = g.gcd(e)
            if g.is_constant():
                break
        points, alg, comps = [], [], []
        if not g.is_constant():
            for f, _ in g.irreducible_factors():
                comps.append(self.hypersurface(f, unknowns))
            rest = [e.exact_div(_power_part(e, g)) for e in eqs]
            p2, a2, c2 = self.solve(rest, unknowns, depth + 1)
            points += p2
            alg += a2
            comps += c2
            return points, alg, comps
        v = self.pick_variable(eqs, unknowns)
        rest_vars = tuple(u for u in unknowns if u != v)
        with_v = [e for e in eqs if e.degree(v) > 0]
        without_v = [e for e in eqs if e.degree(v) <= 0]
        if not with_v:
            # v is free on every solution of the remaining equations
            p2, a2, c2 = self.solve(without_v, rest_vars, depth + 1)
            for pt in p2:
                comps.append(self.free_line(eqs, pt, v, unknowns))
            for comp in c2:
                comps.append(self.extend_component(comp, eqs, unknowns, v))
            alg += a2
            return points, alg, comps
        pivot = min(with_v, key=lambda e: (e.degree(v), len(e)))
        others = [e for e in eqs if e is not pivot]
        for f, _ in pivot.irreducible_factors():
            if f.degree(v) <= 0:
                p2, a2, c2 = self.solve([f] + others, unknowns, depth + 1)
            else:
                reduced = [e for e in others if not f.divides(e)]
                if not reduced:
                    comps.append(self.hypersurface(f, unknowns))
                    continue
                sub = [resultant(f, e, v) for e in reduced]
                q2, a2, sub_comps = self.solve(sub, rest_vars, depth + 1)
                p2, c2 = [], []
                for pt in q2:
                    lifted, free = self.lift(eqs, pt, v)
                    p2 += lifted
                    if free:
                        c2.append(self.free_line(eqs, pt, v, unknowns))
                for comp in sub_comps:
                    c2.append(self.extend_component(comp, [f] + reduced, unknowns, v))
            points += p2
            alg += a2
            comps += c2
        return points, alg, comps

    def pick_variable(self, eqs, unknowns):
        def cost(v):
            degs = [e.degree(v) for e in eqs if e.degree(v) > 0]
            return (min(degs) if degs else 0, sum(degs), -unknowns.index(v))
        return min(unknowns, key=cost)

    def univariate(self, eqs, v):
        g = eqs[0]
        for e in eqs[1:]:
            g = g.gcd(e)
        if g.is_constant():
            return [], []
        points = [{v: r} for r in rational_roots(g)]
        alg = []
        for f, _ in ([] if self.rational_only else g.irreducible_factors()):
            if f.degree(v) > 1:
                for iv in isolate_real_roots(f).intervals:
                    alg.append(AlgebraicPoint({}, {v: (f, iv)}))
        return points, alg

    def lift(self, eqs, pt, v):
        """Rational extensions of pt by a value of v; also reports when v is free."""
        subs = [e.evaluate(pt) for e in eqs]
        subs = [e for e in subs if not e.is_zero()]
        if not subs:
            return [], True
        g = subs[0]
        for e in subs[1:]:
            g = g.gcd(e)
        if g.is_constant():
            return [], False
        return [dict(pt, **{v: r}) for r in rational_roots(g)], False

    # positive-dimensional pieces ------------------------------------------

    def hypersurface(self, f: Poly, unknowns):
        return self.component([f], unknowns)

    def free_line(self, eqs, pt, v, unknowns):
        gens = [Poly.var(u) - val for u, val in pt.items()]
        return self.component(gens, unknowns, parameterization={**{u: RatFunc(Poly.constant(val)) for u, val in pt.items()}, v: RatFunc(Poly.var(v))})

    def extend_component(self, comp: Component, eqs, unknowns, v):
        gens = _prepare(list(comp.generators) + list(eqs)) or []
        param = _linear_parameterization(gens, unknowns)
        if param is not None:
            return self.component(gens, unknowns, parameterization=param)
        samples = []
        for s in comp.samples:
            lifted, free = self.lift(eqs, s, v)
            if free:
                lifted = [dict(s, **{v: val}) for val in height_values(self.max_height)]
            samples += [p for p in lifted if satisfies(p, gens, self.inequations) and p not in samples]
        samples.sort(key=lambda p: point_key(p, unknowns))
        return Component(_minimal_generators(gens), samples[: self.max_samples], None)

    def component(self, gens: list[Poly], unknowns, parameterization=None):
        gens = _prepare(gens) or []
        if parameterization is None:
            parameterization = _linear_parameterization(gens, unknowns)
        if parameterization is not None:
            gens = _parameterization_generators(gens, parameterization) or gens
        samples = self.sample_component(gens, unknowns, parameterization)
        return Component(_minimal_generators(gens), samples, parameterization)

    def sample_component(self, gens, unknowns, parameterization):
        if parameterization is not None:
            free = [u for u in unknowns if parameterization[u] == RatFunc(Poly.var(u))]

            def make(vals):
                try:
                    pt = {u: parameterization[u](**vals) if not parameterization[u].is_constant() else parameterization[u].constant_value() for u in unknowns}
                except ZeroDivisionError:
                    return []
                return [pt]

            return self.sample(make, free, unknowns, gens)
        # choose the variable of lowest degree as dependent, sample the others
        dep = min(unknowns, key=lambda u: (min((g.degree(u) for g in gens if g.degree(u) > 0), default=99), -unknowns.index(u)))
        free = [u for u in unknowns if u != dep]

        def make(vals):
            sub = _prepare(g.evaluate(vals) for g in gens)
            if not sub:
                return []
            pts, _ = self.univariate(sub, dep)
            return [dict(vals, **p) for p in pts]

        return self.sample(make, free, unknowns, gens)

    def sample(self, make, free, unknowns, gens=()):
        values = height_values(self.max_height)
        found = []
        seen = set()
        for h in range(0, self.max_height + 1):
            level_vals = [v for v in values if max(abs(v.numerator), v.denominator) <= h]
            for combo in itertools.product(level_vals, repeat=len(free)):
                if max((max(abs(v.numerator), v.denominator) for v in combo), default=0) != h:
                    continue
                for pt in make(dict(zip(free, combo))):
                    key = tuple(pt[u] for u in unknowns)
                    if key in seen:
                        continue
                    seen.add(key)
                    if satisfies(pt, gens, self.inequations):
                        found.append(pt)
            if len(found) >= self.max_samples:
                break
        found.sort(key=lambda p: point_key(p, unknowns))
        return found[: self.max_samples]


def _comp_vars(comp: Component):
    names = set()
    for g in comp.generators:
        names.update(g.used_variables())
    return names


def _power_part(e: Poly, g: Poly) -> Poly:
    """The largest power of g dividing e."""
    out = Poly.constant(1)
    cur = e
    while True:
        q, r = cur.divmod(g)
        if not r.is_zero():
            return out
        out = out * g
        cur = q


def _parameterization_generators(gens: list[Poly], param: dict) -> list[Poly] | None:
    """u - f(free) for each solved unknown, when these cut out the same set as gens."""
    from .algebra import substitute

    bound = {u: f for u, f in param.items() if f != RatFunc(Poly.var(u))}
    if not all(substitute(RatFunc(g), bound).is_zero() for g in gens):
        return None
    return [(Poly.var(u) * f.den - f.num).canonical() for u, f in bound.items()]


def _minimal_generators(gens: list[Poly]) -> list[Poly]:
    return sorted(gens, key=lambda g: (g.total_degree(), len(g)))


def _linear_parameterization(gens: list[Poly], unknowns) -> dict | None:
    """Solve generators that are monic-linear in distinct unknowns, by back substitution.

    Returns a map unknown -> RatFunc in the remaining free unknowns, or None.
    """
    solved: dict[str, RatFunc] = {}
    pending = list(gens)
    progress = True
    while pending and progress:
        progress = False
        for g in list(pending):
            g2 = RatFunc(g)
            if solved:
                from .algebra import substitute

                g2 = substitute(g2, solved)
            if g2.is_zero():
                pending.remove(g)
                progress = True
                continue
            num = g2.num.squarefree_part() if not g2.num.is_constant() else g2.num
            for u in unknowns:
                if u in solved or num.degree(u) != 1:
                    continue
                coeffs = num.coefficients_in(u)
                lead = coeffs[1]
                if not lead.is_constant():
                    continue
                rest = coeffs.get(0, Poly.constant(0))
                solved[u] = RatFunc(-rest, lead)
                pending.remove(g)
                progress = True
                break
            if progress:
                break
    if pending:
        return None
    # resolve chains
    from .algebra import substitute

    for _ in range(len(solved)):
        solved = {u: substitute(f, solved) for u, f in solved.items()}
    param = {}
    for u in unknowns:
        param[u] = solved.get(u, RatFunc(Poly.var(u)))
    if not solved:
        return None
    return param


def _branch_parameterizations(gens: list[Poly], unknowns, solved=None, depth: int = 0) -> list[dict] | None:
    """Cover V(gens) by rational parameterizations, splitting along factors linear in an unknown.

    Each branch is exact: every generator vanishes identically on it.  None
    when some generator has a factor that is not linear in any unknown.
    """
    from .algebra import substitute

    solved = dict(solved or {})
    if depth > 3 * len(unknowns) + 6:
        return None
    pending = []
    for g in gens:
        g2 = substitute(RatFunc(g), solved) if solved else RatFunc(g)
        if g2.is_zero():
            continue
        if g2.num.is_constant():
            return []
        pending.append(g2.num)
    if not pending:
        param = {u: solved.get(u, RatFunc(Poly.var(u))) for u in unknowns}
        for _ in range(len(solved)):
            param = {u: substitute(f, solved) for u, f in param.items()}
        return [param]
    # prefer a generator that is linear (after squarefree reduction) in some unknown
    best = None
    for g in sorted(pending, key=lambda q: (q.total_degree(), len(q))):
        factors = [f for f, _ in g.irreducible_factors() if not f.is_constant()]
        choices = []
        for f in factors:
            u = next((u for u in unknowns if u not in solved and f.degree(u) == 1
                      and f.coefficients_in(u)[1].is_constant()), None)
            if u is None:
                break
            choices.append((f, u))
        else:
            best = choices
            break
    if best is None:
        return None
    out = []
    for f, u in best:
        co = f.coefficients_in(u)
        value = RatFunc(-co.get(0, Poly.constant(0)), co[1])
        branch_solved = {v: substitute(h, {u: value}) for v, h in solved.items()}
        branch_solved[u] = value
        sub = _branch_parameterizations(gens, unknowns, branch_solved, depth + 1)
        if sub is None:
            return None
        out += [b for b in sub if b not in out]
    return out


def solve_system(
    equations: Sequence[Poly],
    unknowns: Sequence[str],
    inequations: Sequence[Poly] = (),
    *,
    max_height: int = 3,
    max_samples: int = 12,
    rational_only: bool = False,
) -> SolutionSet:
    """Real solutions of a small polynomial system.

    Rational points are exact; irrational real points are reported through
    isolating intervals of the eliminated coordinate; positive-dimensional
    components come with generators and rational samples of height at most
    `max_height` satisfying the inequations.  With `rational_only`, irrational
    points are not isolated.
    """
    unknowns = tuple(unknowns)
    if len(unknowns) > 3:
        raise EliminationError("at most three unknowns are supported")
    eqs = [Poly.coerce(e) for e in equations]
    solver = _Solver(inequations, max_height, max_samples, rational_only)
    points, alg, comps = solver.solve(eqs, unknowns)
    prepared = _prepare(eqs) or []
    good = []
    for p in points:
        full = {u: p[u] for u in unknowns}
        if satisfies(full, prepared, solver.inequations) and full not in good:
            good.append(full)
    good.sort(key=lambda p: point_key(p, unknowns))
    comps = _dedupe_components([piece for c in comps for piece in _split(solver, c, unknowns)])
    if comps:
        dim = "positive"
    elif good or alg:
        dim = "zero"
    else:
        dim = "empty"
    return SolutionSet(dim, good + alg, comps or None)


def _split(solver: _Solver, comp: Component, unknowns) -> list[Component]:
    """Replace an unparameterized component by its parameterized branches, when possible."""
    if comp.parameterization is not None or not comp.generators:
        return [comp]
    branches = _branch_parameterizations(comp.generators, unknowns)
    if branches is None:
        return [comp]
    out = []
    for param in branches:
        if all(f.is_constant() for f in param.values()):
            continue  # isolated points are reported through their component's samples
        out.append(solver.component(list(comp.generators), unknowns, parameterization=param))
    points = [b for b in branches if all(f.is_constant() for f in b.values())]
    for b in points:
        pt = {u: b[u].constant_value() for u in unknowns}
        if not any(_on_param(pt, c.parameterization) for c in out):
            gens = [Poly.var(u) - v for u, v in pt.items()]
            out.append(Component(gens, [pt] if satisfies(pt, comp.generators, solver.inequations) else [],
                                 {u: RatFunc(Poly.constant(v)) for u, v in pt.items()}))
    return out


def _on_param(pt, param) -> bool:
    """Is pt in the image of a parameterization whose free unknowns are read off pt?"""
    vals = {u: pt[u] for u, f in param.items() if f == RatFunc(Poly.var(u))}
    try:
        return all((f.constant_value() if f.is_constant() else f(**vals)) == pt[u] for u, f in param.items())
    except ZeroDivisionError:
        return False


def _dedupe_components(comps: list[Component]) -> list[Component]:
    out = []
    for c in comps:
        if not any(len(c.generators) == len(d.generators) and all(any(g == h for h in d.generators) for g in c.generators) for d in out):
            out.append(c)
    return out
