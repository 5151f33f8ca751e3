"""Exact differential signatures of rational curves and projection decisions."""

from .algebra import Poly, RatFunc, Rational, parse_expression

__all__ = ["Poly", "RatFunc", "Rational", "parse_expression"]
__version__ = "0.1.0"
