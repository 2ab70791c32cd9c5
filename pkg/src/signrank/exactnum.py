"""Exact scalar arithmetic: rationals and real quadratic extensions Q(sqrt d).

Rationals are ``fractions.Fraction`` (always reduced, arbitrary precision).
A :class:`QuadElem` represents ``r + s*sqrt(d)`` with rational r, s and a
fixed square-free positive integer d shared by every element combined in one
expression; d = 1 degenerates to a plain rational (s is folded into r).

Sign determination never touches floating point: the sign of ``r + s*sqrt(d)``
is decided by comparing ``r*r`` against ``d*s*s`` with case analysis on the
signs of r and s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral

from .errors import DomainError

Rational = Fraction


def _is_square_free(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        # numpy integers survive inside Fraction and poison comparisons
        if type(value.numerator) is int and type(value.denominator) is int:
            return value
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite value {value!r} has no exact representation")
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError(f"cannot convert {value!r} to an exact rational")


@dataclass(frozen=True, eq=False)
class QuadElem:
    """Exact element r + s*sqrt(d) of the real quadratic field Q(sqrt d)."""

    r: Fraction
    s: Fraction = Fraction(0)
    d: int = 1

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            if self.s == 0 and other.s == 0:
                return self.r == other.r
            return self.d == other.d and self.r == other.r and self.s == other.s
        if isinstance(other, (Integral, Fraction, float)):
            try:
                return self == QuadElem.lift(other, self.d)
            except DomainError:
                return NotImplemented
        return NotImplemented

    def __hash__(self):
        if self.s == 0:
            return hash(self.r)
        return hash((self.r, self.s, self.d))

    def __post_init__(self):
        object.__setattr__(self, "r", _as_fraction(self.r))
        object.__setattr__(self, "s", _as_fraction(self.s))
        if not isinstance(self.d, Integral) or not _is_square_free(int(self.d)):
            raise DomainError(f"field index must be a square-free positive integer, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))
        if self.d == 1 and self.s != 0:
            # sqrt(1) = 1: fold the radical part so representation stays unique
            object.__setattr__(self, "r", self.r + self.s)
            object.__setattr__(self, "s", Fraction(0))

    @classmethod
    def lift(cls, value, d: int = 1) -> "QuadElem":
        """Embed a rational-like value (or re-context a rational QuadElem)."""
        if isinstance(value, QuadElem):
            if value.d == d or value.s == 0:
                return cls(value.r, value.s, d if value.s == 0 else value.d)
            raise DomainError(f"cannot mix sqrt({value.d}) element into sqrt({d}) context")
        return cls(_as_fraction(value), Fraction(0), d)

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.d == self.d:
                return other
            if other.s == 0:
                return QuadElem(other.r, 0, self.d)
            if self.s == 0:
                return other  # self will be lifted by the caller via reflection
            raise DomainError(f"cannot combine sqrt({self.d}) and sqrt({other.d}) elements")
        return QuadElem(_as_fraction(other), Fraction(0), self.d)

    def _pair(self, other) -> tuple["QuadElem", "QuadElem"]:
        b = self._coerce(other)
        a = self if b.d == self.d else QuadElem(self.r, 0, b.d)
        return a, b

    def __add__(self, other):
        a, b = self._pair(other)
        return QuadElem(a.r + b.r, a.s + b.s, b.d)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        return QuadElem(a.r - b.r, a.s - b.s, b.d)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadElem(-self.r, -self.s, self.d)

    def __mul__(self, other):
        a, b = self._pair(other)
        return QuadElem(a.r * b.r + a.s * b.s * b.d, a.r * b.s + a.s * b.r, b.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._pair(other)
        if b.is_zero():
            raise DomainError("division by zero quadratic element")
        norm = b.r * b.r - b.d * b.s * b.s
        # 1/(r + s*sqrt(d)) = (r - s*sqrt(d)) / (r^2 - d s^2)
        inv = QuadElem(b.r / norm, -b.s / norm, b.d)
        return a * inv

    def __rtruediv__(self, other):
        return QuadElem.lift(other, self.d) / self

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.r, -self.s, self.d)

    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0

    def sign(self) -> int:
        return quad_sign(self)

    def __lt__(self, other):
        a, b = self._pair(other)
        return (a - b).sign() < 0

    def __le__(self, other):
        a, b = self._pair(other)
        return (a - b).sign() <= 0

    def __gt__(self, other):
        a, b = self._pair(other)
        return (a - b).sign() > 0

    def __ge__(self, other):
        a, b = self._pair(other)
        return (a - b).sign() >= 0

    def __float__(self):
        return float(self.r) + float(self.s) * math.sqrt(self.d)

    def __repr__(self):
        if self.s == 0:
            return f"QuadElem({self.r})"
        return f"QuadElem({self.r} + {self.s}*sqrt({self.d}))"


def _sgn(value) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def quad_sign(x) -> int:
    """Exact sign of a rational or quadratic element: one of -1, 0, +1."""
    if not isinstance(x, QuadElem):
        return _sgn(_as_fraction(x))
    r, s, d = x.r, x.s, x.d
    if s == 0:
        return _sgn(r)
    if r == 0:
        return _sgn(s)
    if r > 0 and s > 0:
        return 1
    if r < 0 and s < 0:
        return -1
    # r and s have opposite signs: |r| vs |s|*sqrt(d) via squares
    lhs = r * r
    rhs = d * s * s
    if lhs == rhs:
        return 0
    if lhs > rhs:
        return 1 if r > 0 else -1
    return 1 if s > 0 else -1


def rational_round(x: float, max_denominator: int) -> Fraction:
    """Best rational approximation of ``x`` with denominator <= max_denominator.

    Continued-fraction convergent; among equally good approximations the one
    with the smaller denominator is returned.
    """
    if max_denominator < 1:
        raise DomainError(f"max_denominator must be >= 1, got {max_denominator}")
    if isinstance(x, float) and not math.isfinite(x):
        raise DomainError(f"cannot round non-finite value {x!r}")
    exact = _as_fraction(x)
    if exact.denominator <= max_denominator:
        return exact
    return exact.limit_denominator(max_denominator)


# Textual scalar syntax shared by every file format: "p/q" for rationals
# (plain integers mean p/1) and {"r": "p/q", "s": "p/q"} for quadratic
# elements.


def parse_rational(text) -> Fraction:
    if isinstance(text, Integral):
        return Fraction(int(text))
    if not isinstance(text, str):
        raise DomainError(f"expected rational text, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed rational {text!r}: {exc}") from None


def format_rational(value: Fraction):
    value = _as_fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def parse_scalar(obj, d: int = 1) -> QuadElem:
    """Parse the JSON form of a scalar into a QuadElem in context d."""
    if isinstance(obj, dict):
        unknown = set(obj) - {"r", "s"}
        if unknown:
            raise DomainError(f"unknown scalar fields {sorted(unknown)}")
        r = parse_rational(obj.get("r", 0))
        s = parse_rational(obj.get("s", 0))
        return QuadElem(r, s, d)
    return QuadElem(parse_rational(obj), Fraction(0), d)


def format_scalar(value: QuadElem):
    if not isinstance(value, QuadElem):
        return format_rational(value)
    if value.s == 0:
        return format_rational(value.r)
    return {"r": format_rational(value.r), "s": format_rational(value.s)}
