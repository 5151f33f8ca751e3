import logging
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvesig.algebra import parse_poly
from curvesig.elimination import substitute_map
from curvesig.invariants import Exceptional, ParamCurve2, affine_invariants
from curvesig.signature import Constant, Curve, signature_of, signatures_equal_complex

from conftest import curve, rand_general_curve, rand_projective

X1_QUARTIC = ("4410000*tau^4 + 259308000*tau^3 + 53760000*kappa*tau^2 + 5250987000*tau^2"
              " - 2032128000*kappa*tau + 163840000*kappa^2 + 39697461720*tau - 6401203200*kappa + 62523502209")
BETA_CUBIC = "245*tau^3 + 40000 - 448*kappa^2 + 3780*tau*kappa - 1575*tau^2 + 14525*kappa - 6000*tau"
SIG = ("kappa", "tau")


def test_constant_signature():
    sig = signature_of(curve("X3"), "projective")
    assert isinstance(sig, Constant)
    assert (sig.kappa0, sig.tau0) == (Fraction(250047, 12800), 0)


def test_x1_signature_quartic():
    sig = signature_of(curve("X1"), "projective")
    assert isinstance(sig, Curve)
    assert sig.implicit.poly.canonical() == parse_poly(X1_QUARTIC, SIG).canonical()


def test_beta_family_signature_independent_of_b():
    target = parse_poly(BETA_CUBIC, SIG).canonical()
    fam = ParamCurve2.parse("s^4 + b*s^2", "s", "s", symbols=["b"])
    pair = affine_invariants(fam)
    assert substitute_map(target, SIG, pair.K, pair.T).is_zero()
    for b in (1, -2, Fraction(7, 3)):
        sig = signature_of(fam.specialize({"b": b}), "affine")
        assert sig.implicit.poly.canonical() == target


def test_signature_of_exceptional():
    with pytest.raises(Exceptional):
        signature_of(ParamCurve2.parse("t", "t^2"), "affine")


def test_signatures_equal_complex_examples():
    s1, s2, s3 = (signature_of(curve(n), "projective") for n in ("X1", "X2", "X3"))
    assert signatures_equal_complex(s1, s2)
    assert not signatures_equal_complex(s1, s3)
    assert signatures_equal_complex(s1, s1)


def test_constant_tau_mismatch_logs_warning(caplog):
    a = Constant(Fraction(1), Fraction(0), "projective")
    b = Constant(Fraction(1), Fraction(2), "projective")
    with caplog.at_level(logging.WARNING):
        assert signatures_equal_complex(a, b)
    assert "tau" in caplog.text


seeds = st.integers(0, 10 ** 6)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_implicit_vanishes_on_signature_map(seed):
    c = rand_general_curve(random.Random(seed))
    sig = signature_of(c, "projective")
    if isinstance(sig, Curve):
        assert substitute_map(sig.implicit.poly, SIG, sig.K, sig.T).is_zero()


@settings(max_examples=6, deadline=None)
@given(seeds)
def test_signature_invariant_and_symmetric(seed):
    rng = random.Random(seed)
    c = rand_general_curve(rng)
    try:
        moved = c.transformed(rand_projective(rng))
    except ValueError:
        return
    s1, s2 = signature_of(c, "projective"), signature_of(moved, "projective")
    assert signatures_equal_complex(s1, s2) and signatures_equal_complex(s2, s1)
    assert signatures_equal_complex(s1, s1)
