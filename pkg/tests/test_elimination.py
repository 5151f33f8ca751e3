import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from curvesig.algebra import Poly, RatFunc, parse_expression, parse_poly
from curvesig.elimination import (
    EliminationError, count_real_roots, implicitize, isolate_real_roots, primes, rational_roots,
    resultant, same_curve, sample_values, satisfies, solve_system, substitute_map,
)
from curvesig.invariants import classify
from curvesig.projection import central_family, family_system
from curvesig.signature import signature_of

from conftest import curve, rand_poly, to_sympy

t = Poly.var("t")


def P(text, vs=("t",)):
    return parse_poly(text, vs)


def sylvester(a, b, var):
    """Resultant as the determinant of the Sylvester matrix (sympy, independent of the PRS)."""
    x = sympy.Symbol(var)
    A, B = sympy.Poly(to_sympy(a), x), sympy.Poly(to_sympy(b), x)
    m, n = A.degree(), B.degree()
    ca, cb = A.all_coeffs(), B.all_coeffs()
    rows = [[0] * i + ca + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + cb + [0] * (m - 1 - i) for i in range(m)]
    return sympy.expand(sympy.Matrix(rows).det())


# resultant

def test_resultant_examples():
    assert resultant(t ** 2 + 1, t - 1, "t") == Poly.constant(2)
    assert resultant(t ** 2 - 1, t - 1, "t").is_zero()
    r = resultant(P("x - t", ("x", "t")), P("y - t^2", ("y", "t")), "t")
    assert r.canonical() == P("x^2 - y", ("x", "y")).canonical()


def test_resultant_matches_sylvester_determinant():
    a = P("3*t^4 - x*t^2 + 2*t - y", ("t", "x", "y"))
    b = P("t^3 + x*y*t - 5", ("t", "x", "y"))
    assert sympy.expand(to_sympy(resultant(a, b, "t")) - sylvester(a, b, "t")) == 0


def test_resultant_matches_sylvester_random():
    rng = random.Random(7)
    for _ in range(20):
        a = rand_poly(rng, "t", rng.randint(1, 4))
        b = rand_poly(rng, "t", rng.randint(1, 4))
        if a.degree("t") < 1 or b.degree("t") < 1:
            continue
        assert resultant(a, b, "t").constant_value() == sylvester(a, b, "t")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4), st.lists(st.integers(-3, 3), min_size=2, max_size=4),
       st.lists(st.integers(-2, 2), min_size=1, max_size=3))
def test_resultant_vanishes_iff_common_factor(ca, cb, cg):
    mk = lambda cs: sum((t ** k * c for k, c in enumerate(cs)), Poly.constant(0))
    a, b, g = mk(ca), mk(cb), mk(cg)
    if a.is_zero() or b.is_zero() or g.is_zero():
        return
    a, b = a * g, b * g
    if a.degree("t") < 1 or b.degree("t") < 1:
        return
    assert resultant(a, b, "t").is_zero() == (a.gcd(b).degree("t") > 0)


# implicitization

def test_implicitize_parabola():
    imp = implicitize([RatFunc(t), RatFunc(t ** 2)])
    assert imp.poly.canonical() == P("x^2 - y", ("x", "y")).canonical()


def test_implicitize_circle_matches_sympy():
    c = curve("circle")
    imp = implicitize(list(c.components), param=c.param)
    x, y = sympy.symbols("x y")
    ratio = sympy.cancel(to_sympy(imp.poly) / (x ** 2 + y ** 2 - 1))
    assert ratio.is_number


def test_implicitize_x1_is_folium():
    c = curve("X1")
    imp = implicitize(list(c.components), param=c.param)
    assert imp.poly.canonical() == P("x^3 + y^3 - 10*x*y", ("x", "y")).canonical()


def test_implicit_vanishes_on_image():
    rng = random.Random(3)
    for _ in range(8):
        den = rand_poly(rng, "t", 1) + t ** 2
        fx, fy = RatFunc(rand_poly(rng, "t", 3), den), RatFunc(rand_poly(rng, "t", 2), den)
        if fx.is_constant() or fy.is_constant():
            continue
        imp = implicitize([fx, fy])
        assert substitute_map(imp.poly, ("x", "y"), fx, fy).is_zero()


def test_same_curve_detects_reparameterization():
    c = curve("X1")
    phi = parse_expression("(2*t+1)/(t-3)", ["t"])
    other = [f.substitute({"t": phi}) for f in c.components]
    pa = implicitize(list(c.components)).poly
    pb = implicitize(other).poly
    assert same_curve(list(c.components), pa, other, pb)


# real roots

def test_isolate_examples():
    iso = isolate_real_roots(t ** 2 - 2)
    assert len(iso.intervals) == 2
    for lo, hi in iso.intervals:
        assert lo < hi and (lo ** 2 - 2) * (hi ** 2 - 2) < 0
    assert isolate_real_roots(t ** 2 + 1).intervals == []
    iso = isolate_real_roots(P("t^3 - 6*t^2 + 11*t - 6"))
    assert len(iso.intervals) == 3
    for r, (lo, hi) in zip((1, 2, 3), iso.intervals):
        assert lo <= r <= hi


def test_refine_shrinks_interval():
    iso = isolate_real_roots(t ** 2 - 2).refine(Fraction(1, 1000))
    lo, hi = iso.intervals[1]
    assert hi - lo <= Fraction(1, 1000) and lo ** 2 < 2 < hi ** 2


def test_isolate_zero_poly_rejected():
    with pytest.raises(EliminationError):
        isolate_real_roots(Poly.constant(0))


def test_rational_roots():
    assert sorted(rational_roots(P("(2*t - 1)*(t + 3)*(t^2 + 1)"))) == [-3, Fraction(1, 2)]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=0, max_size=4), st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 4)), max_size=2))
def test_root_count_matches_sympy(lin, quad):
    p = Poly.constant(1)
    for r in lin:
        p = p * (t - r)
    for b, c in quad:
        p = p * (t ** 2 + b * t + b * b + c)  # discriminant -3b^2 - 4c < 0
    iso = isolate_real_roots(p)
    assert len(iso.intervals) == len(set(lin)) == count_real_roots(p)
    ts = sympy.Symbol("t")
    assert len(iso.intervals) == len(sympy.Poly(to_sympy(p), ts).sqf_part().real_roots()) if p.degree("t") else True


# sampling schedule

def test_sample_schedule_is_primes():
    it = primes()
    assert [next(it) for _ in range(6)] == [2, 3, 5, 7, 11, 13]
    assert sample_values(3, avoid=[t - 3]) == [2, 5, 7]


# solving

def test_solve_small_system():
    x, y = Poly.var("x"), Poly.var("y")
    sol = solve_system([x ** 2 + y ** 2 - 5, x - y + 1], ["x", "y"])
    assert sorted((p["x"], p["y"]) for p in sol.points) == [(-2, -1), (1, 2)]
    for p in sol.points:
        assert satisfies(p, [x ** 2 + y ** 2 - 5, x - y + 1])


def test_solve_inconsistent():
    x, y = Poly.var("x"), Poly.var("y")
    assert solve_system([x * y - 1, x], ["x", "y"]).is_empty()
    assert solve_system([x ** 2 + y ** 2 + 1], ["x", "y"]).rational_points == []


def test_solve_irrational_point_reported_by_interval():
    x = Poly.var("x")
    sol = solve_system([x ** 2 - 2], ["x"])
    assert not sol.is_empty() and sol.rational_points == []


def _system(space, plane):
    fam = central_family(curve(space))
    target = curve(plane)
    cls = classify(target)
    sig = None if cls != "General" else signature_of(target, "projective")
    return fam, family_system(fam, target, cls, sig).equations


def test_solve_conic_system_positive_dimensional():
    fam, eqs = _system("twisted_cubic", "parabola")
    sol = solve_system(eqs, fam.parameters)
    assert sol.dimension == "positive"
    c1, c2, c3 = (Poly.var(v) for v in ("c1", "c2", "c3"))
    gens = {g.canonical() for comp in sol.variety_description for g in comp.generators}
    assert gens == {(c1 - c3 ** 3).canonical(), (c2 + c3 ** 2).canonical()}
    for p in sol.rational_points:
        assert p["c1"] == p["c3"] ** 3 and p["c2"] == -p["c3"] ** 2
        assert satisfies(p, eqs)


def test_solve_x2_system_contains_witness():
    fam, eqs = _system("twisted_cubic", "X2")
    sol = solve_system(eqs, fam.parameters)
    pts = sol.rational_points
    assert {"c1": 1, "c2": 0, "c3": 0} in pts
    assert all(satisfies(p, eqs) for p in pts)


def test_quintic_system_only_degenerate_solutions():
    fam, eqs = _system("twisted_cubic", "quintic")
    sol = solve_system(eqs, fam.parameters)
    # every solution lies on c = (h^3, -h^2, h), where the family member is a conic
    assert sol.variety_description
    for comp in sol.variety_description:
        c1, c2, c3 = (RatFunc.coerce(comp.parameterization[v]) for v in ("c1", "c2", "c3"))
        assert c1 == c3 * c3 * c3 and c2 == -(c3 * c3)
    for p in sol.rational_points:
        assert p["c1"] == p["c3"] ** 3 and p["c2"] == -p["c3"] ** 2
