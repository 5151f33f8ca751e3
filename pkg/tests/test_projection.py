from fractions import Fraction

import pytest
import sympy

from curvesig import linalg
from curvesig.algebra import Poly, RatFunc, parse_expression
from curvesig.equivalence import equivalent, implicit_poly
from curvesig.invariants import ParamCurve2, ParamCurve3, classify, projective_invariants
from curvesig.projection import (
    ProjectionError, central_family, check_witness, decide_central, decide_parallel, family_system,
    is_central_camera, is_parallel_camera, parallel_families, reconstruct_camera, verify_camera,
)
from curvesig.signature import Constant, signature_of

from conftest import curve, to_sympy

s = Poly.var("s")


def R(text, vs=("s",)):
    return parse_expression(text, vs)


def by_kind(fams):
    return {f.kind: f for f in fams}


# families

def test_central_family_twisted_cubic():
    fam = central_family(curve("twisted_cubic"))
    assert fam.parameters == ("c1", "c2", "c3")
    assert fam.curve.x == R("(s^3 + c1)/(s + c3)", ("s", "c1", "c3"))
    assert fam.curve.y == R("(s^2 + c2)/(s + c3)", ("s", "c2", "c3"))
    m = fam.member({"c1": 1, "c2": 0, "c3": 0})
    assert (m.x, m.y) == (R("(s^3+1)/s"), R("s"))
    m = fam.member({"c1": 0, "c2": 0, "c3": 1})
    assert (m.x, m.y) == (R("s^3/(s+1)"), R("s^2/(s+1)"))


def test_parallel_families_quartic():
    fams = by_kind(parallel_families(curve("quartic_space")))
    assert list(fams) == ["parallel-delta", "parallel-beta", "parallel-alpha"]
    d = fams["parallel-delta"].curve
    assert (d.x, d.y) == (R("s^4 + a1*s", ("s", "a1")), R("s^2 + a2*s", ("s", "a2")))
    b = fams["parallel-beta"].curve
    assert (b.x, b.y) == (R("s^4 + b*s^2", ("s", "b")), R("s"))
    a = fams["parallel-alpha"].curve
    assert (a.x, a.y) == (R("s^2"), R("s"))


def test_alpha_family_of_twisted_cubic_is_parabola():
    a = by_kind(parallel_families(curve("twisted_cubic")))["parallel-alpha"].curve
    assert classify(a) == "Parabola"


def test_line_rejected():
    line = ParamCurve3.parse("s", "2*s", "3*s + 1")
    with pytest.raises(ProjectionError):
        central_family(line)
    with pytest.raises(ProjectionError):
        decide_parallel(line, curve("X1"))


# cameras

def test_camera_for_x3_witness():
    fam = central_family(curve("twisted_cubic"))
    P = reconstruct_camera(fam, {"c1": 0, "c2": 0, "c3": 1}, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert linalg.proportional(P, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]])
    assert is_central_camera(P) and not is_parallel_camera(P)
    assert verify_camera(P, curve("twisted_cubic"), curve("X3")) == 20


def test_quartic_camera_resolves_misprint():
    w = check_witness(curve("quartic_space"), curve("quartic_plane"), "parallel-delta", {"a1": 20, "a2": 2})
    assert w.verdict == "EquivalentReal" and w.verification == 20
    P = [[v / w.camera[2][3] for v in row] for row in w.camera]
    assert P[0] == [Fraction(1, 256), Fraction(-3, 128), Fraction(1, 32), Fraction(-3, 256)]
    assert is_parallel_camera(P)
    misprint = [[Fraction(1, 156)] + P[0][1:], P[1], P[2]]
    assert verify_camera(misprint, curve("quartic_space"), curve("quartic_plane")) == 0


def test_specialization_commutes_at_witness():
    fam = central_family(curve("twisted_cubic"))
    sym = projective_invariants(fam.curve)
    for c in ({"c1": 1, "c2": 0, "c3": 0}, {"c1": 0, "c2": 0, "c3": 1}, {"c1": 1, "c2": 1, "c3": 0}):
        spec = projective_invariants(fam.member(c))
        assert (sym.K.evaluate(c), sym.T.evaluate(c)) == (spec.K, spec.T)


# decisions

def test_central_x3_and_quintic():
    d = decide_central(curve("twisted_cubic"), curve("X3"))
    assert d.answer == "Yes" and d.witness.values == {"c1": 0, "c2": 0, "c3": 1}
    assert d.verification == 20 and is_central_camera(d.camera)
    assert decide_central(curve("twisted_cubic"), curve("quintic")).answer == "No"


def test_central_conic_variety():
    d = decide_central(curve("twisted_cubic"), curve("parabola"))
    assert d.answer == "Yes"
    c1, c2, c3 = (Poly.var(v) for v in ("c1", "c2", "c3"))
    gens = {g.canonical() for comp in d.variety for g in comp.generators}
    assert gens == {(c1 - c3 ** 3).canonical(), (c2 + c3 ** 2).canonical()}


@pytest.mark.parametrize("a", [1, 2])
def test_conic_member_implicit(a):
    fam = central_family(curve("twisted_cubic"))
    m = fam.member({"c1": a ** 3, "c2": -a ** 2, "c3": a})
    F = implicit_poly(m).canonical()
    x, y = Poly.var("x"), Poly.var("y")
    assert F == (y ** 2 + y * a - x + a * a).canonical()


def test_line_target_uses_coplanarity():
    planar = ParamCurve3.parse("s", "s^2", "2*s + 3*s^2")
    assert decide_central(planar, curve("line")).answer == "Yes"
    assert decide_central(curve("twisted_cubic"), curve("line")).answer == "No"


def test_parallel_conics():
    G = curve("twisted_cubic")
    d = decide_parallel(G, curve("parabola"))
    assert d.answer == "Yes" and d.witness.family == "parallel-alpha" and is_parallel_camera(d.camera)
    assert decide_parallel(G, curve("ellipse")).answer == "No"
    assert decide_parallel(G, curve("hyperbola")).answer == "No"


@pytest.mark.parametrize("target", ["X1", "X2", "X3", "X4"])
def test_parallel_twisted_cubic_no_even_over_complex(target):
    assert decide_parallel(curve("twisted_cubic"), curve(target), "complex").answer == "No"


@pytest.mark.parametrize("target", ["X1", "X2", "X3", "X4"])
def test_parallel_no_groebner_oracle(target):
    """Every complex solution of each family system is empty or a constant-signature member."""
    T = curve(target)
    sig = signature_of(T, "affine")
    for fam in parallel_families(curve("twisted_cubic")):
        if not fam.parameters:
            assert not equivalent(T, fam.curve, "affine", "complex").equivalent
            continue
        fs = family_system(fam, T, classify(T), sig)
        if not fs.equations:
            # identically satisfied: every member has a constant signature
            for v in (0, 1, -2):
                assert isinstance(signature_of(fam.member({fam.parameters[0]: v}), "affine"), Constant)
            continue
        syms = sympy.symbols(fam.parameters)
        gb = sympy.groebner([to_sympy(e) for e in fs.equations], *syms, order="lex")
        if list(gb.exprs) == [1]:
            continue
        # remaining case: the ideal is a power of 4 a1 + 3 a2^2
        a1, a2 = syms
        assert all(sympy.rem(g, 4 * a1 + 3 * a2 ** 2, a1) == 0 for g in gb.exprs)
        for h in (1, 2, -1):
            m = fam.member({"a1": Fraction(-3 * h * h, 4), "a2": h})
            assert isinstance(signature_of(m, "affine"), Constant)
            assert not equivalent(T, m, "affine", "complex").equivalent


def test_kinds_not_conflated():
    c = decide_central(curve("twisted_cubic"), curve("X3"))
    p = decide_parallel(curve("quartic_space"), curve("quartic_plane"))
    assert is_central_camera(c.camera) and not is_parallel_camera(c.camera)
    assert is_parallel_camera(p.camera) and not is_central_camera(p.camera)
    assert c.kind == "central" and p.kind == "parallel"


def test_exhaustive_collects_more_witnesses():
    d = decide_parallel(curve("quartic_space"), curve("quartic_plane"), exhaustive=True)
    assert d.answer == "Yes" and len(d.witnesses) > 1
    for w in d.witnesses:
        if w.verdict == "EquivalentReal":
            assert 5 * w.values["a2"] ** 3 == 2 * w.values["a1"] and w.verification == 20
