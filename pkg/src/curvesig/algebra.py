"""Exact polynomials and rational functions over the rationals.

`Poly` wraps a python-flint ``fmpq_mpoly`` together with an ordered tuple of
variable names.  Binary operations first move both operands into the context
spanned by the union of their variables, so callers never manage contexts.

`RatFunc` keeps a quotient num/den with gcd(num, den) = 1 and den in
canonical form (integer-primitive, positive leading coefficient).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

import flint

Rational = Fraction

# Global variable order used for every context and for graded-lex leading terms.
VARIABLE_ORDER = (
    "t", "s", "x", "y", "kappa", "tau",
    "c1", "c2", "c3", "a1", "a2", "b",
    "z1", "z2", "z3",
)
_RANK = {name: i for i, name in enumerate(VARIABLE_ORDER)}

Scalar = Union[int, Fraction, "flint.fmpq", "flint.fmpz"]


class AlgebraError(ValueError):
    """Base class for errors raised by the algebra kernel."""


class ParseError(AlgebraError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class UnknownSymbolError(ParseError):
    pass


class ZeroDenominatorError(AlgebraError, ZeroDivisionError):
    pass


def sort_variables(names: Iterable[str]) -> tuple[str, ...]:
    """Order names by the global order; unknown names follow, alphabetically."""
    unique = set(names)
    return tuple(sorted(unique, key=lambda n: (_RANK.get(n, len(_RANK)), n)))


@functools.lru_cache(maxsize=None)
def context(names: tuple[str, ...]) -> "flint.fmpq_mpoly_ctx":
    return flint.fmpq_mpoly_ctx.get(names, "deglex")


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, flint.fmpq):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, (int, flint.fmpz)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def to_fmpq(value) -> "flint.fmpq":
    if isinstance(value, flint.fmpq):
        return value
    f = to_fraction(value)
    return flint.fmpq(f.numerator, f.denominator)


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, flint.fmpq, flint.fmpz)) and not isinstance(value, bool)


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("_vars", "_raw")

    def __init__(self, raw, variables: tuple[str, ...]):
        self._vars = variables
        self._raw = raw

    # construction -----------------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar = 0) -> "Poly":
        ctx = context(())
        return cls(ctx.constant(to_fmpq(value)), ())

    @classmethod
    def var(cls, name: str) -> "Poly":
        ctx = context((name,))
        return cls(ctx.gen(0), (name,))

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, ...], Scalar], variables: Iterable[str]) -> "Poly":
        names = tuple(variables)
        order = sort_variables(names)
        perm = [names.index(n) for n in order]
        data = {}
        for exps, coeff in terms.items():
            c = to_fmpq(coeff)
            if c != 0:
                key = tuple(exps[i] for i in perm)
                data[key] = data.get(key, 0) + c
        return cls(context(order).from_dict(data), order)

    @classmethod
    def from_raw(cls, raw) -> "Poly":
        return cls(raw, tuple(raw.context().names()))

    @staticmethod
    def coerce(value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if _is_scalar(value):
            return Poly.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as a polynomial")

    # accessors --------------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def raw(self):
        return self._raw

    def in_variables(self, names: tuple[str, ...]):
        """The flint polynomial re-expressed in the context of `names`."""
        if names == self._vars:
            return self._raw
        return self._raw.project_to_context(context(names))

    def lift(self, names: Iterable[str]) -> "Poly":
        order = sort_variables(tuple(names) + self._vars)
        return Poly(self.in_variables(order), order)

    def used_variables(self) -> tuple[str, ...]:
        degs = self._raw.degrees()
        return tuple(n for n, d in zip(self._vars, degs) if d > 0)

    def trimmed(self) -> "Poly":
        used = self.used_variables()
        if used == self._vars:
            return self
        return Poly(self.in_variables(used), used)

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {tuple(m): to_fraction(c) for m, c in zip(self._raw.monoms(), self._raw.coeffs())}

    def __len__(self) -> int:
        return len(self._raw)

    def is_zero(self) -> bool:
        return self._raw.is_zero()

    def is_constant(self) -> bool:
        return self._raw.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise AlgebraError("polynomial is not constant")
        if self.is_zero():
            return Fraction(0)
        return to_fraction(self._raw.leading_coefficient())

    def degree(self, var: str) -> int:
        """Degree in `var`; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        if var not in self._vars:
            return 0
        return int(self._raw.degrees()[self._vars.index(var)])

    def total_degree(self) -> int:
        return -1 if self.is_zero() else int(self._raw.total_degree())

    def leading_coefficient(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return to_fraction(self._raw.leading_coefficient())

    # arithmetic -------------------------------------------------------------

    def _pair(self, other):
        other = Poly.coerce(other)
        if other._vars == self._vars:
            return self._raw, other._raw, self._vars
        if not other._vars:
            return self._raw, other.in_variables(self._vars), self._vars
        if not self._vars:
            return self.in_variables(other._vars), other._raw, other._vars
        names = sort_variables(self._vars + other._vars)
        return self.in_variables(names), other.in_variables(names), names

    def __add__(self, other):
        if _is_scalar(other):
            return Poly(self._raw + to_fmpq(other), self._vars)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b, names = self._pair(other)
        return Poly(a + b, names)

    __radd__ = __add__

    def __sub__(self, other):
        if _is_scalar(other):
            return Poly(self._raw - to_fmpq(other), self._vars)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b, names = self._pair(other)
        return Poly(a - b, names)

    def __rsub__(self, other):
        if _is_scalar(other):
            return Poly(to_fmpq(other) - self._raw, self._vars)
        return NotImplemented

    def __mul__(self, other):
        if _is_scalar(other):
            return Poly(self._raw * to_fmpq(other), self._vars)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b, names = self._pair(other)
        return Poly(a * b, names)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(-self._raw, self._vars)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise AlgebraError("polynomial powers must be non-negative integers")
        return Poly(self._raw ** k, self._vars)

    def __truediv__(self, other):
        """Division by a nonzero scalar, or exact division by a polynomial."""
        if _is_scalar(other):
            if other == 0:
                raise ZeroDenominatorError("division by zero")
            return Poly(self._raw / to_fmpq(other), self._vars)
        return self.exact_div(other)

    def exact_div(self, other) -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise AlgebraError("polynomial division is not exact")
        return q

    def divides(self, other) -> bool:
        """True when self divides `other` exactly."""
        if self.is_zero():
            return Poly.coerce(other).is_zero()
        _, r = Poly.coerce(other).divmod(self)
        return r.is_zero()

    def divmod(self, other) -> tuple["Poly", "Poly"]:
        a, b, names = self._pair(other)
        if b.is_zero():
            raise ZeroDenominatorError("division by the zero polynomial")
        q, r = divmod(a, b)
        return Poly(q, names), Poly(r, names)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return other == self
        if not isinstance(other, Poly):
            if _is_scalar(other):
                return self.is_constant() and self.constant_value() == to_fraction(other)
            return NotImplemented
        a, b, _ = self._pair(other)
        return a == b

    def __hash__(self):
        t = self.trimmed()
        return hash((t._vars, tuple(sorted(t.terms().items()))))

    # algebra ----------------------------------------------------------------

    def derivative(self, var: str) -> "Poly":
        if var not in self._vars:
            return Poly.constant(0)
        return Poly(self._raw.derivative(var), self._vars)

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive (1 for zero)."""
        if self.is_zero():
            return Fraction(1)
        num = 0
        den = 1
        for c in self._raw.coeffs():
            num = math.gcd(num, int(c.p))
            den = den * int(c.q) // math.gcd(den, int(c.q))
        return Fraction(num, den)

    def canonical(self) -> "Poly":
        """Integer-primitive associate with positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self._raw.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return self
        return Poly(self._raw / to_fmpq(c), self._vars)

    def canonical_scale(self) -> Fraction:
        """The scalar u with self = u * self.canonical()."""
        if self.is_zero():
            return Fraction(1)
        c = self.content()
        return -c if self._raw.leading_coefficient() < 0 else c

    def gcd(self, other) -> "Poly":
        a, b, names = self._pair(other)
        if a.is_zero() and b.is_zero():
            return Poly.constant(0)
        return Poly(a.gcd(b), names).canonical()

    def squarefree_factors(self) -> list[tuple["Poly", int]]:
        """Squarefree decomposition as [(factor, multiplicity)], factors canonical."""
        if self.is_constant():
            return []
        _, facs = self._raw.factor_squarefree()
        return [(Poly(f, self._vars).canonical(), int(e)) for f, e in facs]

    def squarefree_part(self) -> "Poly":
        out = Poly.constant(1)
        for f, _ in self.squarefree_factors():
            out = out * f
        return out.canonical()

    def irreducible_factors(self) -> list[tuple["Poly", int]]:
        """Irreducible factors over Q with multiplicities (canonical, non-constant)."""
        if self.is_constant():
            return []
        _, facs = self._raw.factor()
        return [(Poly(f, self._vars).canonical(), int(e)) for f, e in facs]

    def coefficients_in(self, var: str) -> dict[int, "Poly"]:
        """Map k -> coefficient of var^k (a Poly in the remaining variables)."""
        if self.is_zero():
            return {}
        if var not in self._vars:
            return {0: self}
        idx = self._vars.index(var)
        rest = tuple(n for n in self._vars if n != var)
        buckets: dict[int, dict] = {}
        for m, c in zip(self._raw.monoms(), self._raw.coeffs()):
            key = m[:idx] + m[idx + 1:]
            buckets.setdefault(m[idx], {})[key] = c
        ctx = context(rest)
        return {k: Poly(ctx.from_dict(v), rest) for k, v in buckets.items()}

    def evaluate(self, values: Mapping[str, Scalar]) -> "Poly":
        """Substitute rational numbers for some variables."""
        args = {n: to_fmpq(v) for n, v in values.items() if n in self._vars}
        if not args:
            return self
        return Poly(self._raw.subs(args), self._vars).trimmed()

    def __call__(self, **values) -> Fraction:
        return self.evaluate(values).constant_value()

    def substitute(self, bindings: Mapping[str, "Poly"]) -> "Poly":
        """Simultaneous substitution of polynomials for variables."""
        bindings = {n: Poly.coerce(p) for n, p in bindings.items() if n in self._vars}
        if not bindings:
            return self
        names = set(n for n in self._vars if n not in bindings)
        for p in bindings.values():
            names.update(p.variables)
        order = sort_variables(names)
        ctx = context(order)
        images = []
        for n in self._vars:
            if n in bindings:
                images.append(bindings[n].in_variables(order))
            else:
                images.append(ctx.gen(order.index(n)))
        if not self._vars:
            return self
        return Poly(self._raw.compose(*images, ctx=ctx), order)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


# ---------------------------------------------------------------------------


def _format_coeff_term(c: Fraction, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def format_poly(p: Poly) -> str:
    """Parseable text, terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    parts = []
    for m, c in zip(p.raw.monoms(), p.raw.coeffs()):
        factors = []
        for name, e in zip(p.variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        parts.append(_format_coeff_term(to_fraction(c), "*".join(factors)))
    text = parts[0]
    for part in parts[1:]:
        text += " - " + part[1:] if part.startswith("-") else " + " + part
    return text


class RatFunc:
    """Reduced quotient num/den of polynomials; den is canonical."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        num = Poly.coerce(num)
        den = Poly.constant(1) if den is None else Poly.coerce(den)
        if den.is_zero():
            raise ZeroDenominatorError("rational function with zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        return cls(Poly.coerce(value))

    @property
    def variables(self) -> tuple[str, ...]:
        return sort_variables(self.num.used_variables() + self.den.used_variables())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self, var: str | None = None) -> bool:
        if var is None:
            return self.num.is_constant() and self.den.is_constant()
        return self.num.degree(var) <= 0 and self.den.degree(var) <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise AlgebraError("rational function is not constant")
        return self.num.constant_value() / self.den.constant_value()

    def degree(self, var: str) -> int:
        return max(self.num.degree(var), self.den.degree(var))

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        da = self.den.exact_div(g)
        db = other.den.exact_div(g)
        return RatFunc(self.num * db + other.num * da, da * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFunc(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDenominatorError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise AlgebraError("exponent must be an integer")
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def differentiate(self, var: str) -> "RatFunc":
        return differentiate(self, var)

    def substitute(self, bindings) -> "RatFunc":
        return substitute(self, bindings)

    def evaluate(self, values: Mapping[str, Scalar]) -> "RatFunc":
        num = self.num.evaluate(values)
        den = self.den.evaluate(values)
        if den.is_zero():
            raise ZeroDenominatorError("denominator vanishes at the given values")
        return RatFunc(num, den)

    def __call__(self, **values) -> Fraction:
        return self.evaluate(values).constant_value()

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_ratfunc(self)


def _coerce_rf(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Poly) or _is_scalar(value):
        return RatFunc(Poly.coerce(value), reduced=True)
    return None


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return Poly.constant(0), Poly.constant(1)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    scale = den.canonical_scale()
    if scale != 1:
        num = num / scale
        den = den / scale
    return num, den


def format_ratfunc(f: RatFunc) -> str:
    num = format_poly(f.num)
    if f.den == 1:
        return num
    den = format_poly(f.den)
    if len(f.num) > 1:
        num = f"({num})"
    if len(f.den) > 1 or not f.den.is_constant():
        den = f"({den})"
    return f"{num}/{den}"


# ---------------------------------------------------------------------------
# Operations named in the module contract.


def canonical(p: Poly) -> Poly:
    return p.canonical()


def poly_arithmetic(a: Poly, b: Poly, kind: str) -> Poly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise AlgebraError(f"unknown arithmetic kind {kind!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    return Poly.coerce(a).gcd(b)


def differentiate(f: RatFunc, var: str) -> RatFunc:
    f = RatFunc.coerce(f)
    dn = f.num.derivative(var)
    if f.den.is_constant():
        return RatFunc(dn, f.den)
    dd = f.den.derivative(var)
    return RatFunc(dn * f.den - f.num * dd, f.den * f.den)


def substitute(f, bindings: Mapping[str, object]) -> RatFunc:
    """Simultaneously replace variables by rational functions."""
    f = RatFunc.coerce(f)
    used = set(f.variables)
    bindings = {n: RatFunc.coerce(v) for n, v in bindings.items() if n in used}
    if not bindings:
        return f
    num = _substitute_poly(f.num, bindings)
    den = _substitute_poly(f.den, bindings)
    if den.is_zero():
        raise ZeroDenominatorError("substitution makes the denominator vanish identically")
    return num / den


def _substitute_poly(p: Poly, bindings: Mapping[str, RatFunc]) -> RatFunc:
    bindings = {n: b for n, b in bindings.items() if p.degree(n) > 0}
    if all(b.den == 1 for b in bindings.values()):
        return RatFunc(p.substitute({n: b.num for n, b in bindings.items()}))
    # Homogenize each bound variable with its own denominator: a variable v of
    # degree d in p becomes num_v^k den_v^(d-k) over den_v^d.
    degs = {n: p.degree(n) for n in bindings}
    names = p.variables
    fresh = {n: f"_{n}_den" for n in bindings}
    hom_terms = {}
    for exps, c in p.terms().items():
        extra = tuple(degs[n] - exps[names.index(n)] for n in bindings)
        hom_terms[exps + extra] = c
    hom = Poly.from_terms(hom_terms, names + tuple(fresh[n] for n in bindings))
    mapping = {}
    den = Poly.constant(1)
    for n, b in bindings.items():
        mapping[n] = b.num
        mapping[fresh[n]] = b.den
        den = den * b.den ** degs[n]
    return RatFunc(hom.substitute(mapping), den)


# ---------------------------------------------------------------------------
# Expression parser.


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("num", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append(_Token("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Iterable[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = set(variables)

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.take()
        if tok.text != text or tok.kind != "op":
            raise ParseError(f"expected {text!r}", tok.pos)
        return tok

    def parse(self) -> RatFunc:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok.text == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDenominatorError(f"division by the zero polynomial at position {tok.pos}")
                value = value / rhs
        return value

    def unary(self) -> RatFunc:
        # Unary minus binds looser than '^', so -t^2 is -(t^2).
        if self.peek().kind == "op" and self.peek().text == "-":
            self.take()
            return -self.unary()
        return self.factor()

    def factor(self) -> RatFunc:
        base = self.base()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "num":
                raise ParseError("exponent must be a natural number", tok.pos)
            return base ** int(tok.text)
        return base

    def base(self) -> RatFunc:
        tok = self.take()
        if tok.kind == "num":
            return RatFunc(Poly.constant(int(tok.text)), reduced=True)
        if tok.kind == "name":
            if tok.text not in self.variables:
                raise UnknownSymbolError(f"unknown symbol {tok.text!r}", tok.pos)
            return RatFunc(Poly.var(tok.text), reduced=True)
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "op" and tok.text == "-":
            return -self.base()
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.pos)
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)


def parse_expression(text: str, variables: Iterable[str]) -> RatFunc:
    """Parse an arithmetic expression into a reduced rational function."""
    return _Parser(text, variables).parse()


def parse_poly(text: str, variables: Iterable[str]) -> Poly:
    f = parse_expression(text, variables)
    if not f.den.is_constant():
        raise AlgebraError("expression is not a polynomial")
    return f.num / f.den.constant_value()


def var(name: str) -> Poly:
    return Poly.var(name)


def rf(value) -> RatFunc:
    return RatFunc.coerce(value)


def coprime_basis(polys: Iterable[Poly]) -> list[Poly]:
    """Pairwise coprime canonical polynomials whose products give every input up to scalars."""
    basis: list[Poly] = []
    todo = [Poly.coerce(p) for p in polys]
    while todo:
        q = todo.pop()
        if q.is_zero():
            raise AlgebraError("zero polynomial in coprime basis")
        if q.is_constant():
            continue
        for i, b in enumerate(basis):
            g = q.gcd(b)
            if not g.is_constant():
                basis.pop(i)
                todo += [g, b.exact_div(g), q.exact_div(g)]
                break
        else:
            basis.append(q.canonical())
    return basis


def multiplicity(p: Poly, f: Poly) -> tuple[int, Poly]:
    """(k, p / f^k) with k maximal."""
    k = 0
    while True:
        q, r = p.divmod(f)
        if not r.is_zero():
            return k, p
        p = q
        k += 1


def power_product(scale, numer: Iterable[tuple[Poly, int]], denom: Iterable[tuple[Poly, int]]) -> RatFunc:
    """scale * prod(n^e) / prod(d^e) as a reduced RatFunc, cancelling via a coprime basis.

    Avoids gcds of the expanded powers, which matter for large symbolic families.
    """
    numer = [(Poly.coerce(p), e) for p, e in numer if e]
    denom = [(Poly.coerce(p), e) for p, e in denom if e]
    if any(p.is_zero() for p, _ in denom):
        raise ZeroDenominatorError("zero factor in denominator")
    if any(p.is_zero() for p, _ in numer):
        return RatFunc(Poly.constant(0))
    basis = coprime_basis([p for p, _ in numer] + [p for p, _ in denom])
    exps = [0] * len(basis)
    c = to_fraction(scale) if not isinstance(scale, Fraction) else scale
    for sign, items in ((1, numer), (-1, denom)):
        for p, e in items:
            rest = p
            for i, b in enumerate(basis):
                k, rest = multiplicity(rest, b)
                exps[i] += sign * k * e
            if not rest.is_constant():
                raise AlgebraError("coprime basis does not cover a factor")
            unit = rest.constant_value()
            c = c * unit ** e if sign > 0 else c / unit ** e
    num = Poly.constant(c)
    den = Poly.constant(1)
    for b, k in zip(basis, exps):
        if k > 0:
            num = num * b ** k
        elif k < 0:
            den = den * b ** (-k)
    return RatFunc(num, den, reduced=True)
