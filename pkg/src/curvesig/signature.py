"""Signatures: the image of t -> (K(t), T(t)) as a point or an implicit curve."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .algebra import RatFunc
from .elimination import ImplicitCurve, curve_contains_image, implicitize
from .invariants import InvariantPair, ParamCurve2, invariants

log = logging.getLogger(__name__)

SIGNATURE_VARS = ("kappa", "tau")


class SignatureError(ValueError):
    pass


@dataclass(frozen=True)
class Constant:
    kappa0: Fraction
    tau0: Fraction
    group: str

    kind = "constant"


@dataclass(frozen=True)
class Curve:
    K: RatFunc
    T: RatFunc
    implicit: ImplicitCurve
    group: str
    param: str = "t"

    kind = "curve"


Signature = Constant | Curve


def signature_from_pair(pair: InvariantPair) -> Signature:
    K, T = pair.K, pair.T
    if K.is_constant(pair.param) and T.is_constant(pair.param):
        return Constant(K.constant_value(), T.constant_value(), pair.group)
    imp = implicitize([K, T], SIGNATURE_VARS, param=pair.param)
    return Curve(K, T, imp, pair.group, pair.param)


def signature_of(curve: ParamCurve2, group: str) -> Signature:
    """Signature of a non-exceptional curve; raises Exceptional otherwise."""
    return signature_from_pair(invariants(curve, group))


def signatures_equal_complex(s1: Signature, s2: Signature) -> bool:
    if s1.group != s2.group:
        raise SignatureError(f"signatures for different groups: {s1.group} vs {s2.group}")
    if isinstance(s1, Constant) and isinstance(s2, Constant):
        if s1.kappa0 == s2.kappa0 and s1.tau0 != s2.tau0:
            log.warning("constant signatures agree in kappa (%s) but differ in tau (%s vs %s)",
                        s1.kappa0, s1.tau0, s2.tau0)
        return s1.kappa0 == s2.kappa0
    if isinstance(s1, Constant) or isinstance(s2, Constant):
        return False
    p1, p2 = s1.implicit.poly, s2.implicit.poly
    n = 1 + max(p1.total_degree(), 1) * max(p2.total_degree(), 1)
    return (curve_contains_image(p2, SIGNATURE_VARS, s1.K, s1.T, n, s1.param)
            and curve_contains_image(p1, SIGNATURE_VARS, s2.K, s2.T, n, s2.param))
