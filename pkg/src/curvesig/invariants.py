"""Jets of parameterized plane curves and their affine/projective invariants.

Two routes compute jets.  `jet_restrict` differentiates the rational
functions literally.  The invariants themselves use a homogeneous form:
writing x = X/Z, y = Y/Z and A = X'Z - XZ', every y^(k) (k >= 2) equals
Z^k N_k / A^(2k-1) for a polynomial N_k, and each invariant is weighted
homogeneous of weight zero, so it can be evaluated on the N_k directly.
This keeps symbolic families (parameters c1, c2, ...) small.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    Poly,
    RatFunc,
    differentiate,
    parse_expression,
    power_product,
    substitute,
)


class Exceptional(Exception):
    """The curve is exceptional (line or conic) for the requested group."""

    def __init__(self, group: str, reason: str = ""):
        super().__init__(f"Exceptional({group})" + (f": {reason}" if reason else ""))
        self.group = group


class VerticalLineError(ValueError):
    pass


GROUPS = ("affine", "projective")


@dataclass(frozen=True)
class ParamCurve2:
    x: RatFunc
    y: RatFunc
    param: str = "t"
    label: str | None = None

    def __post_init__(self):
        if self.x.is_constant(self.param) and self.y.is_constant(self.param):
            raise ValueError("a plane curve needs a non-constant component")

    @classmethod
    def parse(cls, x: str, y: str, param: str = "t", symbols: Iterable[str] = (), label: str | None = None):
        names = [param, *symbols]
        return cls(parse_expression(x, names), parse_expression(y, names), param, label)

    @property
    def components(self) -> tuple[RatFunc, RatFunc]:
        return (self.x, self.y)

    @property
    def symbols(self) -> tuple[str, ...]:
        names = set(self.x.variables) | set(self.y.variables)
        names.discard(self.param)
        return tuple(sorted(names))

    def homogeneous(self) -> tuple[Poly, Poly, Poly]:
        """(X, Y, Z) with x = X/Z, y = Y/Z and Z the lcm of the denominators."""
        g = self.x.den.gcd(self.y.den)
        Z = self.x.den * self.y.den.exact_div(g)
        X = self.x.num * self.y.den.exact_div(g)
        Y = self.y.num * self.x.den.exact_div(g)
        return X, Y, Z

    def reparameterize(self, phi: RatFunc, new_param: str) -> "ParamCurve2":
        b = {self.param: phi}
        return ParamCurve2(substitute(self.x, b), substitute(self.y, b), new_param, self.label)

    def transformed(self, matrix: Sequence[Sequence]) -> "ParamCurve2":
        """Image under the projective map (x, y, 1) -> M (x, y, 1)."""
        X, Y, Z = self.homogeneous()
        rows = [[Fraction(v) for v in row] for row in matrix]
        img = [X * r[0] + Y * r[1] + Z * r[2] for r in rows]
        if img[2].is_zero():
            raise ValueError("transformation sends the curve to infinity")
        return ParamCurve2(RatFunc(img[0], img[2]), RatFunc(img[1], img[2]), self.param, self.label)

    def specialize(self, values: dict) -> "ParamCurve2":
        return ParamCurve2(self.x.evaluate(values), self.y.evaluate(values), self.param, self.label)

    def point(self, value) -> tuple[Fraction, Fraction]:
        return self.x(**{self.param: value}), self.y(**{self.param: value})


@dataclass(frozen=True)
class ParamCurve3:
    z1: RatFunc
    z2: RatFunc
    z3: RatFunc
    param: str = "s"
    label: str | None = None

    def __post_init__(self):
        if all(z.is_constant(self.param) for z in self.components):
            raise ValueError("a space curve cannot be a single point")

    @classmethod
    def parse(cls, z1: str, z2: str, z3: str, param: str = "s", label: str | None = None):
        names = [param]
        return cls(*(parse_expression(z, names) for z in (z1, z2, z3)), param, label)

    @property
    def components(self) -> tuple[RatFunc, RatFunc, RatFunc]:
        return (self.z1, self.z2, self.z3)

    def homogeneous(self) -> tuple[Poly, Poly, Poly, Poly]:
        """(W1, W2, W3, W0) with z_i = W_i / W0."""
        den = Poly.constant(1)
        for z in self.components:
            den = den * z.den.exact_div(den.gcd(z.den))
        return tuple(z.num * den.exact_div(z.den) for z in self.components) + (den,)

    def point(self, value) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(z(**{self.param: value}) for z in self.components)


@dataclass(frozen=True)
class JetRestriction:
    order: int
    values: list[RatFunc]
    swapped: bool = False


@dataclass(frozen=True)
class InvariantPair:
    K: RatFunc
    T: RatFunc
    group: str
    param: str = "t"
    swapped: bool = False


# ---------------------------------------------------------------------------
# Literal jets.


def _chart(curve: ParamCurve2) -> tuple[RatFunc, RatFunc, bool]:
    if not curve.x.is_constant(curve.param):
        return curve.x, curve.y, False
    return curve.y, curve.x, True


def jet_restrict(curve: ParamCurve2, order: int) -> JetRestriction:
    """[y', y'', ..., y^(order)] along the curve, by repeated differentiation.

    A vertical line (x constant) is handled in the swapped chart and flagged.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    x, y, swapped = _chart(curve)
    dx = differentiate(x, curve.param)
    values = []
    cur = y
    for _ in range(order):
        cur = differentiate(cur, curve.param) / dx
        values.append(cur)
    return JetRestriction(order, values, swapped)


# ---------------------------------------------------------------------------
# Homogeneous jets.


@dataclass(frozen=True)
class HomogeneousJets:
    """N[k] for 1 <= k <= order, with y' = N1/A and y^(k) = Z^k N_k / A^(2k-1)."""

    A: Poly
    Z: Poly
    N: dict
    swapped: bool = False


def homogeneous_jets(curve: ParamCurve2, order: int) -> HomogeneousJets:
    X, Y, Z = curve.homogeneous()
    swapped = False
    if curve.x.is_constant(curve.param):
        X, Y = Y, X
        swapped = True
    p = curve.param
    A = X.derivative(p) * Z - X * Z.derivative(p)
    B = Y.derivative(p) * Z - Y * Z.derivative(p)
    N = {1: B}
    if order >= 2:
        N[2] = B.derivative(p) * A - B * A.derivative(p)
    dZ = Z.derivative(p)
    dA = A.derivative(p)
    for k in range(2, order):
        n = N[k]
        N[k + 1] = (dZ * n * k + Z * n.derivative(p)) * A - Z * dA * n * (2 * k - 1)
    return HomogeneousJets(A, Z, N, swapped)


def _d1(y):
    return 3 * y[4] * y[2] - 5 * y[3] ** 2


def _d2(y):
    return 9 * y[5] * y[2] ** 2 - 45 * y[4] * y[3] * y[2] + 40 * y[3] ** 3


def _ta(y):
    y2, y3, y4, y5, y6 = y[2], y[3], y[4], y[5], y[6]
    return (9 * y6 * y2**3 - 63 * y5 * y3 * y2**2 - 45 * y4**2 * y2**2
            + 255 * y4 * y3**2 * y2 - 160 * y3**4)


def _kp_bracket(y, d2):
    y2, y3, y4, y5, y6, y7 = (y[k] for k in range(2, 8))
    return (18 * y7 * y2**4 * d2 - 189 * y6**2 * y2**6
            + 126 * y6 * y2**4 * (9 * y5 * y3 * y2 + 15 * y4**2 * y2 - 25 * y4 * y3**2)
            - 189 * y5**2 * y2**4 * (4 * y3**2 + 15 * y2 * y4)
            + 210 * y5 * y3 * y2**2 * (63 * y4**2 * y2**2 - 60 * y4 * y3**2 * y2 + 32 * y3**4)
            - 525 * y4 * y2 * (9 * y4**3 * y2**3 + 15 * y4**2 * y3**2 * y2**2 - 60 * y4 * y3**4 * y2 + 64 * y3**6)
            + 11200 * y3**8)


def _tp_bracket(y, d2):
    y2, y3, y4, y5, y6, y7, y8 = (y[k] for k in range(2, 9))
    return (2 * y8 * y2 * d2**2
            - 8 * y7 * d2 * (9 * y6 * y2**3 - 36 * y5 * y3 * y2**2 - 45 * y4**2 * y2**2
                             + 120 * y4 * y3**2 * y2 - 40 * y3**4)
            + 504 * y6**3 * y2**5
            - 504 * y6**2 * y2**3 * (9 * y5 * y3 * y2 + 15 * y4**2 * y2 - 25 * y4 * y3**2)
            + 28 * y6 * (432 * y5**2 * y3**2 * y2**3 + 243 * y5**2 * y4 * y2**4
                         - 1800 * y5 * y4 * y3**3 * y2**2 - 240 * y5 * y3**5 * y2
                         + 540 * y5 * y4**2 * y3 * y2**3 + 6600 * y4**2 * y3**4 * y2
                         - 2000 * y4 * y3**6 - 5175 * y4**3 * y3**2 * y2**2 + 1350 * y4**4 * y2**3)
            - 2835 * y5**4 * y2**4
            + 252 * y5**3 * y3 * y2**2 * (9 * y4 * y2 - 136 * y3**2)
            - 35840 * y5**2 * y3**6
            - 630 * y5**2 * y4 * y2 * (69 * y4**2 * y2**2 - 160 * y3**4 - 153 * y4 * y3**2 * y2)
            + 2100 * y5 * y4**2 * y3 * (72 * y3**4 + 63 * y4**2 * y2**2 - 193 * y4 * y3**2 * y2)
            - 7875 * y4**4 * (8 * y4**2 * y2**2 - 22 * y4 * y3**2 * y2 + 9 * y3**4))


# Jet-polynomial forms, usable on RatFunc jets as well as on N_k.
delta1_form = _d1
delta2_form = _d2
affine_t_form = _ta
projective_k_bracket = _kp_bracket
projective_t_bracket = _tp_bracket


def delta_invariants(curve: ParamCurve2) -> tuple[RatFunc, RatFunc]:
    """(Delta1, Delta2) restricted to the curve."""
    J = homogeneous_jets(curve, 5)
    if J.A.is_zero():
        raise VerticalLineError("both components are constant")
    if any(J.N[k].is_zero() for k in (2,)):
        zero = RatFunc(Poly.constant(0))
        return zero, zero
    d1 = power_product(1, [(_d1(J.N), 1), (J.Z, 6)], [(J.A, 10)]) if not _d1(J.N).is_zero() else RatFunc(0)
    d2n = _d2(J.N)
    d2 = power_product(1, [(d2n, 1), (J.Z, 9)], [(J.A, 15)]) if not d2n.is_zero() else RatFunc(0)
    return d1, d2


def is_line(curve: ParamCurve2) -> bool:
    """det(gamma', gamma'') vanishes identically."""
    p = curve.param
    dx, dy = differentiate(curve.x, p), differentiate(curve.y, p)
    ddx, ddy = differentiate(dx, p), differentiate(dy, p)
    return (dx * ddy - dy * ddx).is_zero()


@dataclass(frozen=True)
class InvariantParts:
    """K = K.num/K.den and T likewise, plus the pieces projection needs."""

    pair: InvariantPair
    delta: Poly  # the jet polynomial whose vanishing makes the curve exceptional


def affine_invariants(curve: ParamCurve2) -> InvariantPair:
    return _affine(curve).pair


def _affine(curve: ParamCurve2) -> InvariantParts:
    if is_line(curve):
        raise Exceptional("affine", "line")
    J = homogeneous_jets(curve, 6)
    d1 = _d1(J.N)
    if d1.is_zero():
        raise Exceptional("affine", "Delta1 vanishes identically")
    d2 = _d2(J.N)
    if d2.is_zero():
        K = RatFunc(Poly.constant(0))
    else:
        K = power_product(1, [(d2, 2)], [(d1, 3)])
    ta = _ta(J.N)
    T = RatFunc(Poly.constant(0)) if ta.is_zero() else power_product(1, [(ta, 1)], [(d1, 2)])
    return InvariantParts(InvariantPair(K, T, "affine", curve.param, J.swapped), d1)


def projective_invariants(curve: ParamCurve2) -> InvariantPair:
    return _projective(curve).pair


def _projective(curve: ParamCurve2) -> InvariantParts:
    if is_line(curve):
        raise Exceptional("projective", "line")
    J = homogeneous_jets(curve, 8)
    d2 = _d2(J.N)
    if d2.is_zero():
        raise Exceptional("projective", "Delta2 vanishes identically")
    br = _kp_bracket(J.N, d2)
    K = RatFunc(Poly.constant(0)) if br.is_zero() else power_product(Fraction(729, 8), [(br, 3)], [(d2, 8)])
    tb = _tp_bracket(J.N, d2)
    T = RatFunc(Poly.constant(0)) if tb.is_zero() else power_product(Fraction(243, 2), [(J.N[2], 4), (tb, 1)], [(d2, 4)])
    return InvariantParts(InvariantPair(K, T, "projective", curve.param, J.swapped), d2)


def invariants(curve: ParamCurve2, group: str) -> InvariantPair:
    if group == "affine":
        return affine_invariants(curve)
    if group == "projective":
        return projective_invariants(curve)
    raise ValueError(f"unknown group {group!r}")


# ---------------------------------------------------------------------------
# Exceptional curves.


CLASSES = ("Line", "Parabola", "Ellipse", "Hyperbola", "ConicComplexClass", "General")


def conic_equation(curve: ParamCurve2) -> Poly:
    from .elimination import implicitize

    return implicitize(curve.components, ("x", "y"), param=curve.param).poly


def conic_discriminant(F: Poly) -> Fraction:
    """b^2 - 4ac of the quadratic part of a conic equation."""
    terms = F.lift(("x", "y")).terms()
    names = F.lift(("x", "y")).variables
    ix, iy = names.index("x"), names.index("y")

    def coeff(i, j):
        for m, c in terms.items():
            if m[ix] == i and m[iy] == j:
                return c
        return Fraction(0)

    a, b, c = coeff(2, 0), coeff(1, 1), coeff(0, 2)
    return b * b - 4 * a * c


def classify(curve: ParamCurve2, field: str = "real") -> str:
    if field not in ("real", "complex"):
        raise ValueError(f"unknown field {field!r}")
    if is_line(curve):
        return "Line"
    d1, d2 = delta_invariants(curve)
    if d1.is_zero():
        return "Parabola"
    if not d2.is_zero():
        return "General"
    if field == "complex":
        return "ConicComplexClass"
    disc = conic_discriminant(conic_equation(curve))
    if disc < 0:
        return "Ellipse"
    if disc > 0:
        return "Hyperbola"
    return "Parabola"


def space_wronskian(curve: ParamCurve3) -> RatFunc:
    p = curve.param
    rows = []
    cur = list(curve.components)
    for _ in range(3):
        cur = [differentiate(z, p) for z in cur]
        rows.append(cur)
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def is_coplanar(curve: ParamCurve3) -> bool:
    return space_wronskian(curve).is_zero()


def is_space_line(curve: ParamCurve3) -> bool:
    p = curve.param
    d1 = [differentiate(z, p) for z in curve.components]
    d2 = [differentiate(z, p) for z in d1]
    cross = (d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2], d1[0] * d2[1] - d1[1] * d2[0])
    return all(c.is_zero() for c in cross)
