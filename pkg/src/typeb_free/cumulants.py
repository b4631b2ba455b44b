"""Moment/cumulant machinery over C and a concrete matrix model.

Single-variable conversions work on :class:`MomentSequence` and
:class:`CumulantSequence`.  Multivariate cumulants are computed from a
mixed-moment oracle: any callable taking a tuple of :class:`Letter` objects
and returning a :class:`DualScalar`.  Restriction of a word to a block is
plain subsequence extraction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, NamedTuple, Sequence

import numpy as np

from .dual import ONE, ZERO, DualScalar, parse_rational, product
from .errors import DimensionError, DomainError
from .nc_lattice import SetPartition, moebius_to_top, moebius_type_weights, nc_tuple
from .series import CSeries


@dataclass(frozen=True)
class _Sequence:
    values: tuple[DualScalar, ...]

    def __post_init__(self):
        vals = []
        for v in self.values:
            if isinstance(v, DualScalar):
                vals.append(v)
            elif isinstance(v, (list, tuple)):
                vals.append(DualScalar.from_json(v))
            else:
                vals.append(DualScalar.scalar(v))
        object.__setattr__(self, "values", tuple(vals))

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> DualScalar:
        """1-based access: ``seq[n]`` is the n-th moment or cumulant."""
        if not 1 <= n <= self.order:
            raise IndexError(f"index {n} outside 1..{self.order}")
        return self.values[n - 1]

    def to_json(self) -> list[list[str]]:
        return [v.to_json() for v in self.values]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(DualScalar.from_json(p) for p in data))

    def to_series(self) -> CSeries:
        return CSeries(self.values)

    @classmethod
    def from_series(cls, s: CSeries):
        return cls(s.coeffs)


class MomentSequence(_Sequence):
    """Moments ``M_1..M_N`` of one element."""


class CumulantSequence(_Sequence):
    """Cumulants ``kappa_1..kappa_N`` of one element."""


def nc_moment_sum(k: CumulantSequence, n: int) -> DualScalar:
    """``sum over gamma in NC(n)`` of the product of ``kappa_|B|`` (direct enumeration)."""
    return sum((product(k[len(b)] for b in g.blocks) for g in nc_tuple(n)), ZERO)


def cumulants_to_moments(k: CumulantSequence) -> MomentSequence:
    """Moments from cumulants by decomposing NC(n) along the block of 1.

    If that block is ``1 = v_1 < ... < v_s`` the gaps between consecutive
    elements (and after ``v_s``) carry independent non-crossing partitions,
    so ``M_n = sum_s kappa_s * [z^(n-s)] (1 + M(z))^s``.  Agrees with
    :func:`nc_moment_sum` term for term.
    """
    N = k.order
    moments = [ONE] + [ZERO] * N
    for n in range(1, N + 1):
        base = moments[:n] + [ZERO] * (N + 1 - n)
        power = [ONE] + [ZERO] * N
        total = ZERO
        for s in range(1, n + 1):
            power = _poly_mul(power, base, n - s)
            total = total + k[s] * power[n - s]
        moments[n] = total
    return MomentSequence(tuple(moments[1:]))


def _poly_mul(a, b, top):
    out = [ZERO] * len(a)
    for i in range(top + 1):
        if a[i].is_zero():
            continue
        for j in range(top + 1 - i):
            out[i + j] = out[i + j] + a[i] * b[j]
    return out


def partition_moment(m: MomentSequence, p: SetPartition) -> DualScalar:
    return product(m[len(b)] for b in p.blocks)


def moments_to_cumulants(m: MomentSequence) -> CumulantSequence:
    """Moebius inversion ``kappa_n = sum_pi M_pi mu(pi, 1_n)`` over NC(n)."""
    out = []
    for n in range(1, m.order + 1):
        total = ZERO
        # M_pi depends on pi only through its block sizes
        for sizes, weight in moebius_type_weights(n):
            total = total + product(m[s] for s in sizes) * weight
        out.append(total)
    return CumulantSequence(tuple(out))


# --- multivariate cumulants --------------------------------------------------


class Letter(NamedTuple):
    label: Hashable
    handle: Any


Oracle = Callable[[tuple], DualScalar]


def multilinear_cumulant(oracle: Oracle, word: Sequence) -> DualScalar:
    word = tuple(word)
    total = ZERO
    for p in nc_tuple(len(word)):
        weight = product(oracle(tuple(word[i - 1] for i in b)) for b in p.blocks)
        total = total + weight * moebius_to_top(p)
    return total


def freeness_test(oracle: Oracle, word: Sequence[Letter]) -> bool:
    """True iff the mixed cumulant of ``word`` vanishes."""
    if len({letter.label for letter in word}) < 2:
        raise DomainError("freeness test needs letters from at least two families")
    return multilinear_cumulant(oracle, word).is_zero()


class FreeProductOracle:
    """Mixed moments of families that are free by construction.

    ``family_cumulants[label]`` maps a tuple of handles of that family to its
    pure cumulant.  Mixed cumulants are declared zero and moments are
    assembled from the NC(n) moment-cumulant sum.
    """

    def __init__(self, family_cumulants: dict[Hashable, Callable[[tuple], DualScalar]]):
        self.family_cumulants = dict(family_cumulants)
        self._cache: dict[tuple, DualScalar] = {}

    def cumulant(self, word: tuple) -> DualScalar:
        labels = {letter.label for letter in word}
        if len(labels) != 1:
            return ZERO
        (label,) = labels
        return self.family_cumulants[label](tuple(letter.handle for letter in word))

    def __call__(self, word: tuple) -> DualScalar:
        word = tuple(word)
        if not word:
            return ONE
        if word not in self._cache:
            self._cache[word] = sum(
                (
                    product(self.cumulant(tuple(word[i - 1] for i in b)) for b in p.blocks)
                    for p in nc_tuple(len(word))
                ),
                ZERO,
            )
        return self._cache[word]


def power_sum_moments(oracle: Oracle, letters: Sequence[Letter], order: int) -> MomentSequence:
    """Moments of ``sum(letters)`` by multilinear expansion of ``(sum)^n``."""
    from itertools import product as cartesian

    out = []
    for n in range(1, order + 1):
        out.append(sum((oracle(w) for w in cartesian(letters, repeat=n)), ZERO))
    return MomentSequence(tuple(out))


# --- matrix desk model ---------------------------------------------------------


def as_matrix(rows) -> np.ndarray:
    """Object-dtype array of Fractions; accepts ints, Fractions and "p/q" strings."""
    m = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            m[i, j] = parse_rational(v) if isinstance(v, str) else Fraction(v)
    return m


def matrix_to_json(m: np.ndarray) -> list[list[str]]:
    return [[str(v) for v in row] for row in m]


@dataclass
class MatrixModel:
    """Type B probability space on d x d rational matrices.

    Both the algebra and the vector space are ``M_d(Q)``, acting on each
    other by matrix multiplication.  ``phi`` is the normalised trace and
    ``f(X) = sum_ij w_ij X_ij``.
    """

    dim: int
    f_weights: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("dimension must be positive")
        if self.f_weights is None:
            d = self.dim
            self.f_weights = as_matrix(
                [[Fraction(i + 2 * j + 1, d + j + 1) for j in range(d)] for i in range(d)]
            )
        else:
            self.f_weights = as_matrix(self.f_weights)
        if self.f_weights.shape != (self.dim, self.dim):
            raise DimensionError("f-weights must be a dim x dim matrix")

    def phi(self, a: np.ndarray) -> Fraction:
        return Fraction(sum(a[i, i] for i in range(self.dim)), self.dim)

    def f(self, xi: np.ndarray) -> Fraction:
        return sum((w * v for w, v in zip(self.f_weights.flat, xi.flat)), Fraction(0))

    def identity(self) -> np.ndarray:
        return as_matrix([[int(i == j) for j in range(self.dim)] for i in range(self.dim)])

    def zero(self) -> np.ndarray:
        return as_matrix([[0] * self.dim for _ in range(self.dim)])

    def random_matrix(self, rng, pool: Sequence[Fraction] | None = None) -> np.ndarray:
        pool = pool or [Fraction(v, d) for v in range(-3, 4) for d in (1, 2, 3)]
        return as_matrix([[rng.choice(pool) for _ in range(self.dim)] for _ in range(self.dim)])

    def expectation(self, e: "ModelElement") -> DualScalar:
        """``E(a, xi) = (phi(a), f(xi))``."""
        return DualScalar(self.phi(e.a), self.f(e.xi))

    def oracle(self) -> Oracle:
        def evaluate(word: tuple) -> DualScalar:
            if not word:
                return ONE
            acc = word[0].handle
            for letter in word[1:]:
                acc = acc * letter.handle
            return self.expectation(acc)

        return evaluate

    def to_json(self) -> dict:
        return {"dim": self.dim, "f_weights": matrix_to_json(self.f_weights)}

    @classmethod
    def from_json(cls, data) -> "MatrixModel":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["dim"]), data.get("f_weights"))


class ModelElement:
    """Element ``(a, xi)`` of A x X with ``(a,xi)(b,eta) = (ab, a eta + xi b)``."""

    __slots__ = ("a", "xi")

    def __init__(self, a: np.ndarray, xi: np.ndarray):
        self.a = a
        self.xi = xi

    def __mul__(self, other: "ModelElement") -> "ModelElement":
        return ModelElement(self.a @ other.a, self.a @ other.xi + self.xi @ other.a)

    def __add__(self, other: "ModelElement") -> "ModelElement":
        return ModelElement(self.a + other.a, self.xi + other.xi)


def _ordered_product(mats: Sequence[np.ndarray]) -> np.ndarray:
    acc = mats[0]
    for m in mats[1:]:
        acc = acc @ m
    return acc


def free_cumulant(model: MatrixModel, a_list: Sequence[np.ndarray]) -> Fraction:
    """Type A free cumulant ``k_n(a_1..a_n)`` with respect to ``phi``."""
    total = Fraction(0)
    for p in nc_tuple(len(a_list)):
        w = Fraction(1)
        for b in p.blocks:
            w *= model.phi(_ordered_product([a_list[i - 1] for i in b]))
        total += w * moebius_to_top(p)
    return total


def kprime(model: MatrixModel, a_list: Sequence[np.ndarray], p: int, xi: np.ndarray) -> Fraction:
    """``k'_{n,p}``: the free cumulant with ``xi`` in slot ``p`` and ``f`` on its block.

    ``a_list`` holds all n algebra arguments; the entry at position ``p``
    (1-based) is ignored and replaced by ``xi``.
    """
    n = len(a_list)
    if not 1 <= p <= n:
        raise IndexError(f"position {p} outside 1..{n}")
    args = list(a_list)
    args[p - 1] = xi
    total = Fraction(0)
    for part in nc_tuple(n):
        w = Fraction(1)
        for b in part.blocks:
            prod_b = _ordered_product([args[i - 1] for i in b])
            w *= model.f(prod_b) if p in b else model.phi(prod_b)
        total += w * moebius_to_top(part)
    return total


def component_identity_check(
    model: MatrixModel, pairs: Sequence[tuple[np.ndarray, np.ndarray]], n: int | None = None
) -> bool:
    """``kappa_n((a_i, xi_i)) == (k_n(a), sum_p k'_{n,p})`` on the first n pairs."""
    n = len(pairs) if n is None else n
    if n > len(pairs):
        raise DimensionError(f"need {n} pairs, got {len(pairs)}")
    pairs = list(pairs)[:n]
    word = tuple(Letter(0, ModelElement(a, xi)) for a, xi in pairs)
    lhs = multilinear_cumulant(model.oracle(), word)
    a_list = [a for a, _ in pairs]
    rhs = DualScalar(
        free_cumulant(model, a_list),
        sum((kprime(model, a_list, p, pairs[p - 1][1]) for p in range(1, n + 1)), Fraction(0)),
    )
    return lhs == rhs


# --- the bimodule A x (X + A) ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class BimoduleElement:
    """``(a, xi + b)`` with ``xi`` in X and ``b`` in A (the second summand)."""

    a: np.ndarray
    xi: np.ndarray
    b: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, BimoduleElement):
            return NotImplemented
        return bool(
            np.array_equal(self.a, other.a)
            and np.array_equal(self.xi, other.xi)
            and np.array_equal(self.b, other.b)
        )


def conditional_expectation(model: MatrixModel, e: BimoduleElement) -> DualScalar:
    return DualScalar(model.phi(e.a), model.f(e.xi) + model.phi(e.b))


def c_action(c: DualScalar, e: BimoduleElement) -> BimoduleElement:
    """``(x,t)(a, xi+b) = (xa, x xi + (ta + xb))``; left and right actions agree."""
    x, t = c.x, c.t
    return BimoduleElement(e.a * x, e.xi * x, e.a * t + e.b * x)
