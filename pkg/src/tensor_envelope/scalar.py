"""Exact scalars: the rationals and the rational function field Q(t).

A `Scalar` is a reduced fraction of integer polynomials in `t`.  Reduction
is over Z[t], so the representation is unique once the denominator has a
positive leading coefficient.  Constant scalars are ordinary rationals.

Two field contexts wrap the arithmetic used by the rest of the package:
`FunctionField` computes with `Scalar` values and keeps `t` generic, while
`RationalField` fixes `t` to a rational value and computes with flint
`fmpq` values, which is much faster.
"""

from __future__ import annotations

import re
from fractions import Fraction

from flint import fmpq, fmpz, fmpz_poly


class PoleError(ZeroDivisionError):
    """Specialization at a zero of the reduced denominator."""


class ScalarParseError(ValueError):
    pass


def _as_fmpq(v) -> fmpq:
    if isinstance(v, fmpq):
        return v
    if isinstance(v, Fraction):
        return fmpq(v.numerator, v.denominator)
    if isinstance(v, int):
        return fmpq(v)
    if isinstance(v, str):
        f = Fraction(v)
        return fmpq(f.numerator, f.denominator)
    raise TypeError(f"cannot read {v!r} as a rational")


class Scalar:
    """Element of Q(t) stored as num/den with num, den in Z[t]."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, _reduced=False):
        if not isinstance(num, fmpz_poly):
            num = fmpz_poly([num]) if num else fmpz_poly()
        if not isinstance(den, fmpz_poly):
            den = fmpz_poly([den])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = fmpz_poly([1])
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num // g
                    den = den // g
            if den.leading_coefficient() < 0:
                num = -num
                den = -den
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers
    @classmethod
    def t(cls) -> "Scalar":
        return cls(fmpz_poly([0, 1]), fmpz_poly([1]), True)

    @classmethod
    def from_rational(cls, v) -> "Scalar":
        q = _as_fmpq(v)
        return cls(fmpz_poly([q.p]), fmpz_poly([q.q]))

    @classmethod
    def coerce(cls, v) -> "Scalar":
        if isinstance(v, Scalar):
            return v
        return cls.from_rational(v)

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() <= 0

    def to_fmpq(self) -> fmpq:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        n = self.num.coeffs()
        return fmpq(n[0] if n else 0, self.den.coeffs()[0])

    def to_fraction(self) -> Fraction:
        q = self.to_fmpq()
        return Fraction(int(q.p), int(q.q))

    # arithmetic
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Scalar(self.num + o.num, self.den)
        return Scalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, True)

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return ZERO
        # cross-cancel keeps intermediate sizes down
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        num = (self.num // g1) * (o.num // g2)
        den = (self.den // g2) * (o.den // g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar(num, den, True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.num ** n, self.den ** n, True)

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def specialize(self, v) -> "Scalar":
        """Evaluate at t = v; raises PoleError at a pole of the reduced form."""
        q = _as_fmpq(v)
        d = self.den(q)
        if d == 0:
            raise PoleError(f"{self} has a pole at t={q}")
        return Scalar.from_rational(self.num(q) / d)

    def evaluate(self, v) -> fmpq:
        q = _as_fmpq(v)
        d = self.den(q)
        if d == 0:
            raise PoleError(f"{self} has a pole at t={q}")
        return self.num(q) / d

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _coerce_or_none(v):
    if isinstance(v, Scalar):
        return v
    if isinstance(v, (int, Fraction, fmpq, fmpz)):
        if isinstance(v, fmpz):
            v = int(v)
        return Scalar.from_rational(v)
    return None


ZERO = Scalar(0)
ONE = Scalar(1)


# ---------------------------------------------------------------- text format

def _format_poly(p: fmpz_poly, var: str = "t") -> str:
    coeffs = [int(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    parts = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if deg == 0:
            body = str(a)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _n_terms(p: fmpz_poly) -> int:
    return sum(1 for c in p.coeffs() if c != 0)


def format_scalar(s: Scalar) -> str:
    num = _format_poly(s.num)
    if s.den.is_one():
        return num
    den = _format_poly(s.den)
    if _n_terms(s.num) > 1 or (s.num.degree() > 0 and num.startswith("-")):
        num = f"({num})"
    if _n_terms(s.den) > 1 or s.den.degree() > 0 and int(s.den.coeffs()[-1]) != 1:
        den = f"({den})"
    return f"{num}/{den}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(.))")


def parse_scalar(text: str) -> Scalar:
    """Parse the grammar produced by `format_scalar` (plus implicit products)."""
    tokens = []
    for num, var, other in _TOKEN.findall(text.strip()):
        if num:
            tokens.append(("int", int(num)))
        elif var:
            tokens.append(("t", None))
        elif other.strip():
            tokens.append((other, None))
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(kind=None):
        nonlocal pos
        if pos >= len(tokens):
            raise ScalarParseError(f"unexpected end of {text!r}")
        tok = tokens[pos]
        if kind is not None and tok[0] != kind:
            raise ScalarParseError(f"expected {kind!r} in {text!r}")
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() in ("+", "-"):
            op = take()[0]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() in ("*", "/", "(", "t", "int"):
            op = peek()
            if op in ("*", "/"):
                take()
            rhs = factor()
            if op == "/":
                if rhs.is_zero():
                    raise ZeroDivisionError(f"division by zero in {text!r}")
                val = val / rhs
            else:
                val = val * rhs
        return val

    def factor():
        if peek() == "-":
            take()
            return -factor()
        if peek() == "+":
            take()
            return factor()
        base = atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            exp = take("int")[1]
            base = base ** (-exp if neg else exp)
        return base

    def atom():
        kind, val = take()
        if kind == "int":
            return Scalar(val)
        if kind == "t":
            return Scalar.t()
        if kind == "(":
            v = expr()
            take(")")
            return v
        raise ScalarParseError(f"unexpected token {kind!r} in {text!r}")

    if not tokens:
        raise ScalarParseError("empty scalar")
    value = expr()
    if pos != len(tokens):
        raise ScalarParseError(f"trailing input in {text!r}")
    return value


# ---------------------------------------------------------------- field contexts

class FunctionField:
    """Q(t) with t kept generic.  Elements are `Scalar`."""

    is_generic = True
    name = "generic"

    def __init__(self):
        self.param = Scalar.t()
        self._powers = [ONE]

    zero = ZERO
    one = ONE

    def __call__(self, v) -> Scalar:
        return Scalar.coerce(v)

    def param_power(self, k: int) -> Scalar:
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.param)
        return self._powers[k]

    def from_scalar(self, s: Scalar) -> Scalar:
        return s

    def to_scalar(self, x) -> Scalar:
        return Scalar.coerce(x)

    def format(self, x) -> str:
        return format_scalar(Scalar.coerce(x))

    def is_constant(self, x) -> bool:
        return Scalar.coerce(x).is_constant()

    def key(self):
        return ("generic",)

    def __eq__(self, other):
        return isinstance(other, FunctionField)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "FunctionField()"


class RationalField:
    """Q with the parameter t specialized to a rational value."""

    is_generic = False

    def __init__(self, value):
        self.value = _as_fmpq(value)
        self.param = self.value
        self.name = str(self.value)
        self._powers = [fmpq(1)]

    zero = fmpq(0)
    one = fmpq(1)

    def __call__(self, v) -> fmpq:
        if isinstance(v, Scalar):
            return v.evaluate(self.value)
        return _as_fmpq(v)

    def param_power(self, k: int) -> fmpq:
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.value)
        return self._powers[k]

    def from_scalar(self, s: Scalar) -> fmpq:
        return s.evaluate(self.value)

    def to_scalar(self, x) -> Scalar:
        return Scalar.from_rational(x)

    def format(self, x) -> str:
        return str(_as_fmpq(x))

    def is_constant(self, x) -> bool:
        return True

    def key(self):
        return ("rational", int(self.value.p), int(self.value.q))

    def __eq__(self, other):
        return isinstance(other, RationalField) and other.value == self.value

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"RationalField({self.value})"


def make_field(value) -> FunctionField | RationalField:
    """'generic' gives Q(t); anything rational-looking fixes t."""
    if isinstance(value, (FunctionField, RationalField)):
        return value
    if value is None or (isinstance(value, str) and value.strip().lower() == "generic"):
        return FunctionField()
    return RationalField(value)
