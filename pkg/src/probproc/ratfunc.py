"""Exact arithmetic for rational functions whose variables are action names.

A polynomial is a dict mapping monomials to Fraction coefficients; a monomial
is a tuple of (name, exponent) pairs, sorted by name, with strictly positive
exponents.  The empty tuple is the constant monomial.  Zero coefficients are
never stored, so plain dict equality is polynomial identity.

A RationalFn is a numerator/denominator pair of such polynomials.  Every
function built by this package takes only positive variable values, which
makes cross-multiplication a sound and complete equality test:

    f == g   iff   f.num * g.den  and  g.num * f.den  are identical dicts.

No polynomial GCD is computed.  Results stay unreduced except for cheap
normalizations (zero numerator, shared monomial factor, proportional
numerator/denominator, integer scaling) that keep printed output close to
the hand-reduced form without affecting correctness.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

Monomial = tuple[tuple[str, int], ...]
Poly = dict[Monomial, Fraction]

_ONE_MONO: Monomial = ()


def _pconst(value: Fraction) -> Poly:
    if value == 0:
        return {}
    return {_ONE_MONO: value}


def _pvar(name: str) -> Poly:
    return {((name, 1),): Fraction(1)}


def _padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for mono, coeff in b.items():
        acc = out.get(mono, Fraction(0)) + coeff
        if acc:
            out[mono] = acc
        else:
            out.pop(mono, None)
    return out


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps = dict(m1)
    for name, exp in m2:
        exps[name] = exps.get(name, 0) + exp
    return tuple(sorted(exps.items()))


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono = _mono_mul(m1, m2)
            acc = out.get(mono, Fraction(0)) + c1 * c2
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
    return out


def _pscale(a: Poly, factor: Fraction) -> Poly:
    if factor == 0:
        return {}
    return {mono: coeff * factor for mono, coeff in a.items()}


def _peval(a: Poly, values: Mapping[str, Fraction]) -> Fraction:
    total = Fraction(0)
    for mono, coeff in a.items():
        term = coeff
        for name, exp in mono:
            term *= values[name] ** exp
        total += term
    return total


def _pvars(a: Poly) -> set[str]:
    return {name for mono in a for name, _ in mono}


def _common_monomial(polys: Iterable[Poly]) -> Monomial:
    """Largest monomial dividing every term of every given polynomial."""
    shared: dict[str, int] | None = None
    for poly in polys:
        for mono in poly:
            exps = dict(mono)
            if shared is None:
                shared = exps
            else:
                shared = {
                    name: min(exp, exps[name])
                    for name, exp in shared.items()
                    if name in exps
                }
            if not shared:
                return _ONE_MONO
    if not shared:
        return _ONE_MONO
    return tuple(sorted(shared.items()))


def _mono_divide(mono: Monomial, divisor: Monomial) -> Monomial:
    exps = dict(mono)
    for name, exp in divisor:
        rest = exps[name] - exp
        if rest:
            exps[name] = rest
        else:
            del exps[name]
    return tuple(sorted(exps.items()))


class RationalFn:
    """A quotient of two exactly represented multivariate polynomials.

    Values are immutable; all operators return fresh normalized instances.
    Equality (==) is semantic equality as functions on positive arguments.
    """

    __slots__ = ("num", "den")
    __hash__ = None  # semantic == is coarser than any cheap structural hash

    def __init__(self, num: Poly, den: Poly):
        if not den:
            raise ZeroDivisionError("denominator is the zero polynomial")
        num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    @staticmethod
    def var(name: str) -> RationalFn:
        """The function of a single action-name variable."""
        return RationalFn(_pvar(name), _pconst(Fraction(1)))

    @staticmethod
    def scalar(value) -> RationalFn:
        """A constant function; the value must be a non-negative rational."""
        value = Fraction(value)
        if value < 0:
            raise ValueError(f"scalar must be non-negative, got {value}")
        return RationalFn(_pconst(value), _pconst(Fraction(1)))

    @staticmethod
    def zero() -> RationalFn:
        return RationalFn({}, _pconst(Fraction(1)))

    @staticmethod
    def one() -> RationalFn:
        return RationalFn(_pconst(Fraction(1)), _pconst(Fraction(1)))

    def __add__(self, other: RationalFn) -> RationalFn:
        if not self.num:
            return other
        if not other.num:
            return self
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return RationalFn(num, _pmul(self.den, other.den))

    def __mul__(self, other: RationalFn) -> RationalFn:
        if not self.num or not other.num:
            return RationalFn.zero()
        return RationalFn(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other: RationalFn) -> RationalFn:
        if not other.num:
            raise ZeroDivisionError("division by the zero function")
        return RationalFn(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return _pmul(self.num, other.den) == _pmul(other.num, self.den)

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return all(m == _ONE_MONO for m in self.num) and all(
            m == _ONE_MONO for m in self.den
        )

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant function")
        num = self.num.get(_ONE_MONO, Fraction(0))
        return num / self.den[_ONE_MONO]

    def variables(self) -> set[str]:
        return _pvars(self.num) | _pvars(self.den)

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        """Exact value at a point with positive rational coordinates."""
        values: dict[str, Fraction] = {}
        for name, raw in assignment.items():
            value = Fraction(raw)
            if value <= 0:
                raise ValueError(f"variable {name!r} must be positive, got {value}")
            values[name] = value
        missing = self.variables() - values.keys()
        if missing:
            raise ValueError(f"no value given for variable(s) {sorted(missing)}")
        den = _peval(self.den, values)
        if den == 0:
            raise ZeroDivisionError("denominator vanished at the given point")
        return _peval(self.num, values) / den

    def __str__(self) -> str:
        return format_ratfunc(self)

    def __repr__(self) -> str:
        return f"RationalFn({format_ratfunc(self)!r})"


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not num:
        return {}, _pconst(Fraction(1))
    shared = _common_monomial((num, den))
    if shared != _ONE_MONO:
        num = {_mono_divide(m, shared): c for m, c in num.items()}
        den = {_mono_divide(m, shared): c for m, c in den.items()}
    # Proportional pair: collapse c*q / q to the constant c.
    if num.keys() == den.keys():
        ratios = {num[m] / den[m] for m in num}
        if len(ratios) == 1:
            num = _pconst(ratios.pop())
            den = _pconst(Fraction(1))
    # Scale so all coefficients are integers with overall gcd 1.
    coeffs = list(num.values()) + list(den.values())
    scale = Fraction(
        lcm(*(c.denominator for c in coeffs)), gcd(*(c.numerator for c in coeffs))
    )
    if scale != 1:
        num = _pscale(num, scale)
        den = _pscale(den, scale)
    return num, den


def _mono_sort_key(mono: Monomial, var_order: list[str]):
    exps = dict(mono)
    return (-sum(exps.values()), tuple(-exps.get(v, 0) for v in var_order))


def _format_poly(poly: Poly) -> str:
    if not poly:
        return "0"
    var_order = sorted(_pvars(poly))
    parts = []
    for mono in sorted(poly, key=lambda m: _mono_sort_key(m, var_order)):
        coeff = poly[mono]
        body = "*".join(f"{n}^{e}" if e > 1 else n for n, e in mono)
        if not body:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append(body)
        else:
            parts.append(f"{coeff}*{body}")
    return " + ".join(parts)


def format_ratfunc(f: RationalFn) -> str:
    """Render as `num / den` with expanded polynomials in graded-lex order."""
    if f.is_constant():
        return str(f.constant_value())
    if f.den == _pconst(Fraction(1)):
        return _format_poly(f.num)

    def wrap(poly: Poly) -> str:
        text = _format_poly(poly)
        return f"({text})" if len(poly) > 1 else text

    return f"{wrap(f.num)} / {wrap(f.den)}"


class RatFuncSyntaxError(ValueError):
    pass


def _tokenize_ratfunc(text: str) -> list[tuple[str, str]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in "+*/^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise RatFuncSyntaxError(f"unexpected character {ch!r} at offset {i}")
    tokens.append(("end", ""))
    return tokens


def parse_ratfunc(text: str) -> RationalFn:
    """Parse the textual form produced by format_ratfunc (round-trip exact)."""
    tokens = _tokenize_ratfunc(text)
    pos = 0

    def peek() -> str:
        return tokens[pos][0]

    def take(kind: str) -> str:
        nonlocal pos
        if tokens[pos][0] != kind:
            raise RatFuncSyntaxError(
                f"expected {kind!r}, found {tokens[pos][1]!r} in {text!r}"
            )
        value = tokens[pos][1]
        pos += 1
        return value

    def parse_factor() -> Poly:
        if peek() == "int":
            return _pconst(Fraction(int(take("int"))))
        name = take("name")
        exp = 1
        if peek() == "^":
            take("^")
            exp = int(take("int"))
        return {((name, exp),): Fraction(1)}

    def parse_term() -> Poly:
        poly = parse_factor()
        while peek() == "*":
            take("*")
            poly = _pmul(poly, parse_factor())
        return poly

    def parse_poly() -> Poly:
        poly = parse_term()
        while peek() == "+":
            take("+")
            poly = _padd(poly, parse_term())
        return poly

    def parse_operand() -> Poly:
        if peek() == "(":
            take("(")
            poly = parse_poly()
            take(")")
            return poly
        return parse_poly()

    num = parse_operand()
    den = _pconst(Fraction(1))
    if peek() == "/":
        take("/")
        den = parse_operand()
    take("end")
    return RationalFn(num, den)
