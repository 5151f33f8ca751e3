import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvesig import linalg
from curvesig.algebra import Poly, RatFunc, parse_expression
from curvesig.equivalence import (
    equivalent, find_reparameterization, implicit_poly, reconstruct_transform, transform_maps_onto,
    verify_transform,
)
from curvesig.invariants import ParamCurve2
from curvesig.signature import signature_of

from conftest import curve, rand_affine, rand_general_curve, rand_projective

s = Poly.var("s")
PRINTED_T21 = [[0, 10, 0], [0, 0, 10], [1, 0, 0]]


def quartic_member(a1=20, a2=2):
    return ParamCurve2.parse(f"s^4 + {a1}*s", f"s^2 + {a2}*s", "s")


def test_x1_x2_real():
    res = equivalent(curve("X1"), curve("X2"), "projective", "real")
    assert res.verdict == "EquivalentReal" and res.equivalent
    assert res.reparameterization == RatFunc(s + 1)
    assert linalg.proportional(res.transform, [[0, 0, 10], [0, 10, 0], [1, 0, 0]])
    assert verify_transform(res.transform, curve("X1"), curve("X2"))


def test_x1_x2_printed_transform_is_a_verified_candidate():
    res = equivalent(curve("X1"), curve("X2"), "projective", "real")
    pairs = [(phi, A) for phi, A in res.candidates if A is not None and linalg.proportional(A, PRINTED_T21)]
    assert pairs and pairs[0][0] == RatFunc(Poly.constant(1), s + 1)
    assert verify_transform(PRINTED_T21, curve("X1"), curve("X2"))


def test_x4_x2():
    real = equivalent(curve("X4"), curve("X2"), "projective", "real")
    assert real.verdict == "EquivalentComplexOnly" and not real.equivalent and real.decided
    cplx = equivalent(curve("X4"), curve("X2"), "projective", "complex")
    assert cplx.equivalent


@pytest.mark.parametrize("other", ["X1", "X2", "X4"])
def test_x3_not_equivalent(other):
    assert equivalent(curve("X3"), curve(other), "projective", "real").verdict == "NotEquivalent"


def test_affine_x1_x2():
    assert equivalent(curve("X1"), curve("X2"), "affine", "real").verdict == "NotEquivalent"


def test_find_reparameterization_examples():
    s1, s2 = signature_of(curve("X1"), "projective"), signature_of(curve("X2"), "projective")
    assert find_reparameterization(s1, s2) == RatFunc(s + 1)
    phi = find_reparameterization(s1, s1)
    assert phi == RatFunc(Poly.var("t")) or phi == RatFunc(Poly.var("s"))


def test_quartic_affine_transform():
    target = curve("quartic_plane")
    res = equivalent(quartic_member(), target, "affine", "real")
    assert res.verdict == "EquivalentReal"
    phi = res.reparameterization
    (v,) = phi.variables
    assert phi.num.degree(v) == 1 and phi.den.is_constant()
    assert linalg.proportional(res.transform, [[256, 96, 21], [0, 16, 3], [0, 0, 1]])


def test_reconstruct_identity():
    c = curve("X1")
    A = reconstruct_transform(c, c, RatFunc(Poly.var("t")), "projective")
    assert linalg.proportional(A, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_exceptional_classes():
    L = curve
    assert equivalent(L("line"), L("line"), "affine").verdict == "EquivalentReal"
    assert equivalent(L("line"), L("parabola"), "projective").verdict == "NotEquivalent"
    assert equivalent(L("parabola"), L("ellipse"), "projective").verdict == "EquivalentReal"
    assert equivalent(L("parabola"), L("ellipse"), "affine", "complex").verdict == "NotEquivalent"
    assert equivalent(L("circle"), L("ellipse"), "affine").verdict == "EquivalentReal"
    e_h = equivalent(L("ellipse"), L("hyperbola"), "affine", "real")
    assert e_h.verdict == "EquivalentComplexOnly" and not e_h.equivalent
    assert equivalent(L("ellipse"), L("hyperbola"), "affine", "complex").equivalent
    assert equivalent(L("X1"), L("parabola"), "projective").verdict == "NotEquivalent"


def test_transforms_land_on_target():
    for a, b, g in [("X1", "X2", "projective"), ("circle", "ellipse", "affine"), ("parabola", "hyperbola", "projective")]:
        res = equivalent(curve(a), curve(b), g)
        assert res.transform is not None
        assert transform_maps_onto(res.transform, curve(b), implicit_poly(curve(a)))


seeds = st.integers(0, 10 ** 6)


def _constructed(seed, group):
    rng = random.Random(seed)
    g = rand_general_curve(rng)
    M = rand_affine(rng) if group == "affine" else rand_projective(rng)
    a, b = rng.choice([1, -1, 2, Fraction(1, 2), 3]), rng.randint(-3, 3)
    phi = parse_expression(f"{a}*s + {b}", ["s"])
    try:
        h = g.transformed(M).reparameterize(phi, "s")
    except ValueError:
        return None
    return g, h, M


@settings(max_examples=6, deadline=None, derandomize=True)
@given(seeds, st.sampled_from(["affine", "projective"]))
def test_constructed_equivalence_recovered(seed, group):
    built = _constructed(seed, group)
    if built is None:
        return
    g, h, M = built
    res = equivalent(g, h, group, "real")
    assert res.verdict == "EquivalentReal"
    assert verify_transform(res.transform, g, h)


@settings(max_examples=4, deadline=None, derandomize=True)
@given(seeds)
def test_verdict_symmetric(seed):
    built = _constructed(seed, "projective")
    if built is None:
        return
    g, h, _ = built
    assert equivalent(g, h).verdict == equivalent(h, g).verdict
