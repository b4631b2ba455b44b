"""Exact arithmetic in the commutative algebra C of pairs (x, t).

Multiplication is ``(x, t)(y, s) = (xy, xs + ty)``, i.e. C is the algebra of
2x2 upper-triangular matrices with equal diagonal entries.  Both components
are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import DomainError, NotInvertibleError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

Scalar = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals and floats are rejected."""
    if isinstance(text, bool) or not isinstance(text, (str, int, Fraction)):
        raise DomainError(f"cannot parse rational from {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise DomainError(f"not an exact rational 'p/q': {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q: Fraction) -> str:
    """Inverse of :func:`parse_rational`; integers print without ``/1``."""
    return str(q)


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True, slots=True)
class DualScalar:
    x: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce(self.x))
        object.__setattr__(self, "t", _coerce(self.t))

    @classmethod
    def _make(cls, x: Fraction, t: Fraction) -> "DualScalar":
        # arithmetic results are already Fractions; skip coercion
        obj = object.__new__(cls)
        object.__setattr__(obj, "x", x)
        object.__setattr__(obj, "t", t)
        return obj

    @classmethod
    def scalar(cls, value: Scalar) -> "DualScalar":
        return cls(value, 0)

    @classmethod
    def zero(cls) -> "DualScalar":
        return cls(0, 0)

    @classmethod
    def one(cls) -> "DualScalar":
        return cls(1, 0)

    @classmethod
    def from_json(cls, pair) -> "DualScalar":
        if isinstance(pair, DualScalar):
            return pair
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise DomainError(f"expected a pair of rationals, got {pair!r}")
        return cls(parse_rational(pair[0]), parse_rational(pair[1]))

    def to_json(self) -> list[str]:
        return [format_rational(self.x), format_rational(self.t)]

    def is_zero(self) -> bool:
        return self.x == 0 and self.t == 0

    def is_invertible(self) -> bool:
        return self.x != 0

    def as_matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.x, self.t), (Fraction(0), self.x))

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return _make(self.x + other.x, self.t + other.t)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return _make(self.x - other.x, self.t - other.t)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return _make(-self.x, -self.t)

    def __mul__(self, other):
        if isinstance(other, DualScalar):
            return _make(self.x * other.x, self.x * other.t + self.t * other.x)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return _make(self.x * other, self.t * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int):
                return self.inverse() ** (-n)
            return NotImplemented
        if n == 0:
            return DualScalar.one()
        return _make(self.x**n, n * self.x ** (n - 1) * self.t)

    def inverse(self) -> "DualScalar":
        if self.x == 0:
            raise NotInvertibleError(f"{self} has zero x-component")
        return _make(1 / self.x, -self.t / (self.x * self.x))

    def __truediv__(self, other):
        if isinstance(other, DualScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise NotInvertibleError("division by zero scalar")
            return _make(self.x / other, self.t / other)
        return NotImplemented

    def __str__(self) -> str:
        return f"({self.x}, {self.t})"


_make = DualScalar._make


def _lift(value):
    if isinstance(value, DualScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return DualScalar(value, 0)
    return NotImplemented


ZERO = DualScalar(0, 0)
ONE = DualScalar(1, 0)
EPS = DualScalar(0, 1)


def add(a: DualScalar, b: DualScalar) -> DualScalar:
    return a + b


def sub(a: DualScalar, b: DualScalar) -> DualScalar:
    return a - b


def scalar_mul(c: Scalar, a: DualScalar) -> DualScalar:
    return a * _coerce(c)


def mul(a: DualScalar, b: DualScalar) -> DualScalar:
    return a * b


def power(a: DualScalar, n: int) -> DualScalar:
    """``a**n`` for ``n >= 0`` via the closed form ``(x**n, n x**(n-1) t)``."""
    if n < 0:
        raise DomainError("exponent must be non-negative")
    return a**n


def inverse(a: DualScalar) -> DualScalar:
    return a.inverse()


def product(factors) -> DualScalar:
    acc = ONE
    for f in factors:
        acc = acc * f
    return acc
