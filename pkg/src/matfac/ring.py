"""Exact arithmetic in k and in the local ring S = k[x] localized at (x).

Elements of S are stored as reduced fractions of polynomials whose
denominator has constant term 1.  Polynomials are FLINT ``fmpq_poly`` (over
the rationals) or ``nmod_poly`` (over F_p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from flint import fmpq, fmpq_poly, nmod, nmod_poly

from .errors import (
    DegreeOverflow,
    DenominatorNotUnit,
    FieldMismatch,
    NotDivisible,
    OmegaIsUnit,
    OmegaIsZero,
    ParseError,
    ZeroDenominator,
)

MAX_DEGREE = 4096
INF = math.inf


# ---------------------------------------------------------------------------
# fields


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: rationals when ``p == 0``, else F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not (_is_prime(self.p) and self.p < 2**31):
            raise ValueError(f"{self.p} is not a prime below 2^31")

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        if text in ("rational", "rationals", "q"):
            return cls(0)
        if text.startswith("fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError as exc:
                raise ParseError(f"bad field {text!r}: {exc}") from None
        raise ParseError(f"unknown field {text!r}")

    @property
    def is_prime(self):
        return self.p != 0

    def __call__(self, value):
        if isinstance(value, (fmpq, nmod)):
            if self.p:
                return nmod(int(value), self.p) if isinstance(value, nmod) else nmod(value.p, self.p) / nmod(value.q, self.p)
            return value
        if isinstance(value, Fraction):
            if self.p:
                return nmod(value.numerator, self.p) / nmod(value.denominator, self.p)
            return fmpq(value.numerator, value.denominator)
        return nmod(value, self.p) if self.p else fmpq(value)

    def poly(self, coeffs=()):
        coeffs = [self(c) for c in coeffs]
        return nmod_poly(coeffs, self.p) if self.p else fmpq_poly(coeffs)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def elements(self):
        """All field elements (prime fields only)."""
        if not self.p:
            raise ValueError("the rationals are infinite")
        return [nmod(v, self.p) for v in range(self.p)]

    def __str__(self):
        return f"fp:{self.p}" if self.p else "rational"


QQ = FieldSpec(0)


# ---------------------------------------------------------------------------
# polynomial helpers


def _guard(deg):
    if deg > MAX_DEGREE:
        raise DegreeOverflow(f"intermediate degree {deg} exceeds {MAX_DEGREE}")


def pxval(a):
    """Multiplicity of x as a factor of ``a`` (``INF`` for zero)."""
    for i, c in enumerate(a.coeffs()):
        if c:
            return i
    return INF


def pshift(a, k, field):
    """Multiply by x^k (k >= 0) or divide by x^-k (k < 0, must be exact)."""
    coeffs = a.coeffs()
    if not coeffs:
        return a
    if k >= 0:
        _guard(len(coeffs) - 1 + k)
        return field.poly([0] * k + coeffs)
    return field.poly(coeffs[-k:])


def _coeff_key(c):
    return (int(c.p), int(c.q)) if isinstance(c, fmpq) else int(c)


def _mul(a, b):
    if a and b:
        _guard(a.degree() + b.degree())
    return a * b


# ---------------------------------------------------------------------------
# elements of S


class LocalScalar:
    """An element num/den of S with den(0) = 1 and gcd(num, den) = 1."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den):
        # trusted constructor; use scalar_normalize for untrusted input
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, field, c):
        return cls(field, field.poly([c]), field.poly([1]))

    @classmethod
    def zero(cls, field):
        return cls(field, field.poly(), field.poly([1]))

    @classmethod
    def one(cls, field):
        return cls.const(field, 1)

    @classmethod
    def x_power(cls, field, k):
        _guard(k)
        return cls(field, field.poly([0] * k + [1]), field.poly([1]))

    @classmethod
    def poly(cls, field, coeffs):
        return cls(field, field.poly(coeffs), field.poly([1]))

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return not self.num

    def valuation(self):
        return pxval(self.num)

    def is_unit(self):
        return bool(self.num) and bool(self.num[0])

    def _den_is_one(self):
        return self.den.degree() == 0

    # -- arithmetic -------------------------------------------------------
    def _other(self, other):
        if isinstance(other, LocalScalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, fmpq, nmod)):
            return LocalScalar.const(self.field, other)
        return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        if not b.num:
            return self
        if not self.num:
            return b
        if self.den == b.den:
            if self._den_is_one():
                return LocalScalar(self.field, self.num + b.num, self.den)
            return _reduce(self.field, self.num + b.num, self.den)
        num = _mul(self.num, b.den) + _mul(b.num, self.den)
        return _reduce(self.field, num, _mul(self.den, b.den))

    __radd__ = __add__

    def __neg__(self):
        return LocalScalar(self.field, -self.num, self.den)

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        if not self.num or not b.num:
            return LocalScalar.zero(self.field)
        if self._den_is_one() and b._den_is_one():
            return LocalScalar(self.field, _mul(self.num, b.num), self.den)
        return _reduce(self.field, _mul(self.num, b.num), _mul(self.den, b.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Exact division inside S; raises NotDivisible if the quotient leaves S."""
        b = self._other(other)
        if b is None:
            return NotImplemented
        if not b.num:
            raise NotDivisible("division by zero")
        v = pxval(b.num)
        if pxval(self.num) < v:
            raise NotDivisible(f"{self} is not divisible by {b} in S")
        if not self.num:
            return self
        num = _mul(pshift(self.num, -v, self.field), b.den)
        den = _mul(self.den, pshift(b.num, -v, self.field))
        return _reduce(self.field, num, den)

    def inverse(self):
        return LocalScalar.one(self.field) / self

    def unit_part(self):
        """self / x^valuation(self); requires self != 0."""
        v = self.valuation()
        return LocalScalar(self.field, pshift(self.num, -v, self.field), self.den)

    def __pow__(self, k):
        out = LocalScalar.one(self.field)
        for _ in range(k):
            out = out * self
        return out

    # -- reduction mod x^n ------------------------------------------------
    def truncate(self, n):
        """The first n power-series coefficients (the image in k[x]/x^n)."""
        zero = self.field.zero
        num = self.num.coeffs()[:n]
        num = num + [zero] * (n - len(num))
        if self._den_is_one():
            return tuple(num)
        den = self.den.coeffs()
        out = []
        for i in range(n):
            c = num[i]
            for j in range(1, min(i, len(den) - 1) + 1):
                c = c - den[j] * out[i - j]
            out.append(c)
        return tuple(out)

    @classmethod
    def from_series(cls, field, coeffs):
        return cls(field, field.poly(list(coeffs)), field.poly([1]))

    # -- value semantics --------------------------------------------------
    def key(self):
        return (
            self.field.p,
            tuple(_coeff_key(c) for c in self.num.coeffs()),
            tuple(_coeff_key(c) for c in self.den.coeffs()),
        )

    def __eq__(self, other):
        if isinstance(other, LocalScalar):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, fmpq, nmod)):
            return self == LocalScalar.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __str__(self):
        if self._den_is_one():
            return format_poly(self.num, self.field)
        return f"({format_poly(self.num, self.field)})/({format_poly(self.den, self.field)})"

    def __repr__(self):
        return f"LocalScalar({self})"


def _reduce(field, num, den):
    if not num:
        return LocalScalar.zero(field)
    if den.degree() > 0:
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
    c = den[0]
    if c != 1:
        inv = 1 / c
        num = num * inv
        den = den * inv
    return LocalScalar(field, num, den)


def scalar_normalize(numer, denom, field=QQ):
    """Build the canonical element numer/denom of S.

    ``numer`` and ``denom`` are coefficient sequences (low degree first) or
    LocalScalar polynomials.
    """
    num = _as_poly(numer, field)
    den = _as_poly(denom, field)
    if not den:
        raise ZeroDenominator("zero denominator")
    if not den[0]:
        raise DenominatorNotUnit("denominator vanishes at x = 0")
    _guard(max(num.degree(), den.degree()))
    return _reduce(field, num, den)


def _as_poly(p, field):
    if isinstance(p, LocalScalar):
        if not p._den_is_one():
            raise TypeError("expected a polynomial")
        return p.num
    if isinstance(p, (fmpq_poly, nmod_poly)):
        return p
    return field.poly(list(p))


def valuation(a):
    return a.valuation()


def scalar_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# omega


@dataclass(frozen=True)
class OmegaSpec:
    omega: LocalScalar
    n: int
    unit_part: LocalScalar

    @property
    def field(self):
        return self.omega.field


def omega_make(omega):
    if omega.is_zero():
        raise OmegaIsZero("omega must be nonzero")
    n = omega.valuation()
    if n == 0:
        raise OmegaIsUnit(f"{omega} is a unit of S")
    return OmegaSpec(omega, n, omega.unit_part())


# ---------------------------------------------------------------------------
# text grammar


def _format_coeff(c, field):
    if field.is_prime:
        return str(int(c))
    if c.q == 1:
        return str(c.p)
    return f"{c.p}/{c.q}"


def format_poly(p, field):
    if not p:
        return "0"
    p = p.coeffs()
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        neg = (not field.is_prime) and c < 0
        mag = -c if neg else c
        cs = _format_coeff(mag, field)
        if k == 0:
            body = cs
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if mag == 1 else f"{cs}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class Cursor:
    """Character cursor with line/column tracking for error messages."""

    def __init__(self, text, offset_line=1, offset_col=1):
        self.text = text
        self.pos = 0
        self.base_line = offset_line
        self.base_col = offset_col

    def location(self, pos=None):
        pos = self.pos if pos is None else pos
        before = self.text[:pos]
        line = before.count("\n")
        if line:
            col = pos - before.rfind("\n")
            return self.base_line + line, col
        return self.base_line, self.base_col + pos

    def error(self, message, pos=None):
        line, col = self.location(pos)
        return ParseError(message, line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.accept(ch):
            got = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, got {got!r}")

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_term(cur, field):
    ch = cur.peek()
    if ch == "x":
        cur.pos += 1
        coeff = field.one
    elif ch.isdigit():
        num = cur.integer()
        coeff = field(num)
        save = cur.pos
        if cur.accept("/"):
            if cur.peek() == "(":
                # "(p)/(q)" belongs to the scalar level, never to a coefficient
                cur.pos = save
                return coeff, 0
            if field.is_prime:
                raise cur.error("fractional coefficients need the rational field")
            den = cur.integer()
            if den == 0:
                raise cur.error("zero denominator in coefficient")
            coeff = field(Fraction(num, den))
        if not cur.accept("*"):
            return coeff, 0
        if cur.peek() != "x":
            raise cur.error("expected 'x' after '*'")
        cur.pos += 1
    else:
        raise cur.error(f"unexpected {ch or 'end of input'!r}")
    exp = 1
    if cur.accept("^"):
        exp = cur.integer()
    return coeff, exp


def parse_poly(cur, field):
    terms = {}
    sign = 1
    if cur.accept("-"):
        sign = -1
    else:
        cur.accept("+")
    while True:
        coeff, exp = _parse_term(cur, field)
        _guard(exp)
        terms[exp] = terms.get(exp, field.zero) + (coeff if sign > 0 else -coeff)
        if cur.accept("+"):
            sign = 1
        elif cur.accept("-"):
            sign = -1
        else:
            break
    deg = max(terms)
    coeffs = [field.zero] * (deg + 1)
    for e, c in terms.items():
        coeffs[e] = c
    return field.poly(coeffs)


def parse_scalar_at(cur, field):
    if cur.peek() == "(":
        start = cur.pos
        cur.expect("(")
        num = parse_poly(cur, field)
        cur.expect(")")
        cur.expect("/")
        cur.expect("(")
        den = parse_poly(cur, field)
        cur.expect(")")
        try:
            return scalar_normalize(num, den, field)
        except (ZeroDenominator, DenominatorNotUnit) as exc:
            line, col = cur.location(start)
            raise type(exc)(f"{exc} (line {line}, column {col})") from None
    return LocalScalar(field, parse_poly(cur, field), field.poly([1]))


def parse_scalar(text, field=QQ):
    cur = Cursor(text)
    value = parse_scalar_at(cur, field)
    if not cur.at_end():
        raise cur.error(f"trailing input {cur.text[cur.pos:]!r}")
    return value
