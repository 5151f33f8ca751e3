import random
from fractions import Fraction

import pytest
import sympy

from curvesig import linalg
from curvesig.algebra import Poly, RatFunc
from curvesig.cli import load_curve
from curvesig.invariants import ParamCurve2, ParamCurve3, classify, is_coplanar, is_space_line


def curve(name):
    return load_curve(name)


@pytest.fixture(scope="session")
def corpus():
    names = ["X1", "X2", "X3", "X4", "quintic", "twisted_cubic", "quartic_space", "quartic_plane",
             "circle", "parabola", "ellipse", "hyperbola", "line"]
    return {n: curve(n) for n in names}


def to_sympy(p, names=None):
    """Poly or RatFunc -> sympy expression (independent route for oracles)."""
    if isinstance(p, RatFunc):
        return to_sympy(p.num) / to_sympy(p.den)
    syms = sympy.symbols(p.variables) if p.variables else ()
    if len(p.variables) == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    expr = sympy.Integer(0)
    for mono, c in p.terms().items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mono):
            term *= s ** int(e)
        expr += term
    return expr


def sympy_equal(a, b):
    return sympy.simplify(sympy.together(a - b)) == 0


def rand_poly(rng, var, deg, lo=-3, hi=3):
    t = Poly.var(var)
    p = Poly.constant(0)
    for k in range(deg + 1):
        p = p + t ** k * rng.randint(lo, hi)
    return p


def rand_fraction(rng, lo=-5, hi=5):
    while True:
        q = Fraction(rng.randint(lo, hi), rng.randint(1, 4))
        if q:
            return q


def rand_general_curve(rng, var="t", deg=3):
    """Random rational plane curve that is neither a line nor a conic."""
    while True:
        den = rand_poly(rng, var, rng.randint(0, 2))
        if den.is_zero():
            continue
        x = RatFunc(rand_poly(rng, var, deg), den)
        y = RatFunc(rand_poly(rng, var, rng.randint(2, deg)), den)
        try:
            c = ParamCurve2(x, y, var)
        except ValueError:
            continue
        if max(x.num.degree(var), y.num.degree(var), den.degree(var)) < 3:
            continue
        try:
            if classify(c) == "General":
                return c
        except Exception:
            continue


def rand_affine(rng):
    while True:
        m = [[rand_fraction(rng) for _ in range(3)] for _ in range(2)] + [[Fraction(0), Fraction(0), Fraction(1)]]
        if linalg.det(m):
            return m


def rand_projective(rng):
    while True:
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        if linalg.det(m):
            return m


def rand_space_curve(rng, deg, var="s"):
    """Random polynomial space curve of degree deg, neither a line nor planar."""
    while True:
        comps = [rand_poly(rng, var, deg)] + [rand_poly(rng, var, rng.randint(1, deg)) for _ in range(2)]
        comps[0] = comps[0] + Poly.var(var) ** deg * rng.choice([1, -1, 2])
        rng.shuffle(comps)
        try:
            G = ParamCurve3(*(RatFunc(c) for c in comps), var)
        except ValueError:
            continue
        if not is_space_line(G) and not is_coplanar(G):
            return G


def rand_camera(rng, kind):
    while True:
        P = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(3)]
        if kind == "parallel":
            P[2] = [Fraction(0)] * 3 + [Fraction(1)]
            ok = linalg.rank(P) == 3
        else:
            ok = linalg.det([r[:3] for r in P]) != 0
        if ok:
            return P


def image_curve(G, P, var="t"):
    """Plane curve P∘G in a fresh parameter, or None when the image degenerates."""
    W = G.homogeneous()
    img = [sum((w * P[r][k] for k, w in enumerate(W)), Poly.constant(0)) for r in range(3)]
    if img[2].is_zero():
        return None
    sub = {G.param: Poly.var(var)}
    try:
        return ParamCurve2(RatFunc(img[0], img[2]).substitute(sub), RatFunc(img[1], img[2]).substitute(sub), var)
    except ValueError:
        return None


@pytest.fixture
def rng():
    return random.Random(20261016)


# acceptance bookkeeping: one line per criterion in the terminal summary
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
