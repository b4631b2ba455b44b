"""Truncated formal power series with coefficients in C.

:class:`CSeries` has no constant term (``coeffs[0]`` is the coefficient of
``z``); :class:`UnitSeries` starts at ``z**0``.  Every result is valid up to
the stated truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .dual import ONE, ZERO, DualScalar, product
from .errors import DimensionError, DomainError, NotInvertibleError, TruncationError
from .nc_lattice import SetPartition, kreweras_type_counts


def _as_duals(values) -> tuple[DualScalar, ...]:
    out = []
    for v in values:
        if isinstance(v, DualScalar):
            out.append(v)
        elif isinstance(v, (list, tuple)):
            out.append(DualScalar.from_json(v))
        else:
            out.append(DualScalar.scalar(v))
    return tuple(out)


@dataclass(frozen=True)
class CSeries:
    coeffs: tuple[DualScalar, ...]

    def __post_init__(self):
        coeffs = _as_duals(self.coeffs)
        if not coeffs:
            raise DomainError("a series needs order >= 1")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coeff(self, n: int) -> DualScalar:
        """Coefficient of ``z**n`` (``1 <= n <= order``)."""
        if n < 1:
            raise DomainError("CSeries has no coefficients below z^1")
        if n > self.order:
            raise TruncationError(f"z^{n} lies beyond the truncation order {self.order}")
        return self.coeffs[n - 1]

    @classmethod
    def identity(cls, order: int) -> "CSeries":
        return cls((ONE,) + (ZERO,) * (order - 1))

    @classmethod
    def from_json(cls, data) -> "CSeries":
        if isinstance(data, dict):
            series = cls(tuple(DualScalar.from_json(p) for p in data["coeffs"]))
            if "order" in data and int(data["order"]) != series.order:
                raise DimensionError("'order' does not match the number of coefficients")
            return series
        return cls(tuple(DualScalar.from_json(p) for p in data))

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}

    def __add__(self, other: "CSeries") -> "CSeries":
        _same_order(self, other)
        return CSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "CSeries":
        return CSeries(tuple(c * a for a in self.coeffs))

    def truncate(self, order: int) -> "CSeries":
        return CSeries(self.coeffs[:order])

    def dense(self) -> list[DualScalar]:
        return [ZERO, *self.coeffs]


@dataclass(frozen=True)
class UnitSeries:
    coeffs: tuple[DualScalar, ...]

    def __post_init__(self):
        coeffs = _as_duals(self.coeffs)
        if not coeffs:
            raise DomainError("a unit series needs at least the constant term")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> DualScalar:
        if not 0 <= n <= self.order:
            raise TruncationError(f"z^{n} lies outside 0..{self.order}")
        return self.coeffs[n]

    @classmethod
    def one(cls, order: int) -> "UnitSeries":
        return cls((ONE,) + (ZERO,) * order)

    @classmethod
    def from_json(cls, data) -> "UnitSeries":
        coeffs = data["coeffs"] if isinstance(data, dict) else data
        return cls(tuple(DualScalar.from_json(p) for p in coeffs))

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}

    def dense(self) -> list[DualScalar]:
        return list(self.coeffs)


def _same_order(f, g) -> None:
    if f.order != g.order:
        raise DimensionError(f"orders differ: {f.order} vs {g.order}")


def _trunc_mul(a: Sequence[DualScalar], b: Sequence[DualScalar], top: int) -> list[DualScalar]:
    """Cauchy product of dense lists (index = exponent), cut above ``z**top``."""
    out = [ZERO] * (top + 1)
    for i, ai in enumerate(a[: top + 1]):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b[: top + 1 - i]):
            out[i + j] = out[i + j] + ai * bj
    return out


def zeta_prime(order: int) -> CSeries:
    """The series with coefficient (1, 0) at every power of ``z``."""
    if order < 1:
        raise DomainError("order must be >= 1")
    return CSeries((ONE,) * order)


def cf_product(f: CSeries, p: SetPartition) -> DualScalar:
    """Product over the blocks of ``p`` of the coefficient indexed by block size."""
    top = max(len(b) for b in p.blocks)
    if top > f.order:
        raise TruncationError(f"block of size {top} exceeds series order {f.order}")
    return product(f.coeffs[len(b) - 1] for b in p.blocks)


def _nc_coefficient(f: CSeries, g: CSeries, n: int, only_first_singleton: bool) -> DualScalar:
    # sum over p in NC(n) of Cf_p(f) Cf_Kr(p)(g), grouped by the block-size types of p and Kr(p)
    total = ZERO
    for sizes_p, sizes_k, count in kreweras_type_counts(n, only_first_singleton):
        term = product(f.coeffs[s - 1] for s in sizes_p) * product(g.coeffs[s - 1] for s in sizes_k)
        total = total + term * count
    return total


def box_conv(f: CSeries, g: CSeries) -> CSeries:
    """Boxed convolution: coefficient n is the NC(n)-sum of Cf_p(f) Cf_Kr(p)(g)."""
    _same_order(f, g)
    return CSeries(tuple(_nc_coefficient(f, g, n, False) for n in range(1, f.order + 1)))


def check_box_conv(f: CSeries, g: CSeries) -> CSeries:
    """The restricted boxed convolution: only partitions having ``{1}`` as a block."""
    _same_order(f, g)
    return CSeries(tuple(_nc_coefficient(f, g, n, True) for n in range(1, f.order + 1)))


Series = Union[CSeries, UnitSeries]


def compose(f: Series, g: Series) -> Series:
    """Substitution ``f(g(z))`` truncated at the common order."""
    if isinstance(g, UnitSeries):
        if not g.coeffs[0].is_zero():
            raise DomainError("inner series must not have a constant term")
        g = CSeries(g.coeffs[1:]) if g.order >= 1 else None
        if g is None:
            raise DomainError("inner series has order 0")
    _same_order(f, g)
    top = f.order
    inner = g.dense()
    out = [ZERO] * (top + 1)
    power = [ONE] + [ZERO] * top
    dense_f = f.dense()
    for k in range(0, top + 1):
        if k > 0:
            power = _trunc_mul(power, inner, top)
        ck = dense_f[k]
        if ck.is_zero():
            continue
        for i in range(k, top + 1):
            out[i] = out[i] + ck * power[i]
    if isinstance(f, UnitSeries):
        return UnitSeries(tuple(out))
    return CSeries(tuple(out[1:]))


def invert_compositional(f: CSeries) -> CSeries:
    """Compositional inverse, solved coefficient by coefficient.

    ``[z^n] f(g)`` depends on ``g_n`` only through ``alpha_1 g_n``, so each new
    coefficient follows from the ones already found.
    """
    a1 = f.coeffs[0]
    if not a1.is_invertible():
        raise NotInvertibleError(f"leading coefficient {a1} is not invertible in C")
    a1_inv = a1.inverse()
    g = [a1_inv] + [ZERO] * (f.order - 1)
    for n in range(2, f.order + 1):
        partial = compose(f.truncate(n), CSeries(tuple(g[:n])))
        g[n - 1] = -(partial.coeffs[n - 1] * a1_inv)
    return CSeries(tuple(g))


def s_transform(r: CSeries) -> UnitSeries:
    """``(1/z) R^{<-1>}(z)``; one order shorter than ``r``."""
    return UnitSeries(invert_compositional(r).coeffs)


def series_pointwise_mul(a: UnitSeries, b: UnitSeries) -> UnitSeries:
    _same_order(a, b)
    return UnitSeries(tuple(_trunc_mul(a.coeffs, b.coeffs, a.order)))
