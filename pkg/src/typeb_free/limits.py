"""Central and Poisson limit computations in exact arithmetic."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt, prod
from typing import Sequence

from .cumulants import CumulantSequence, MomentSequence, cumulants_to_moments, moments_to_cumulants
from .dual import ONE, ZERO, DualScalar
from .errors import DimensionError, DomainError, ExactnessError
from .nc_lattice import NC_CAP, catalan, nc_tuple
from .series import CSeries


@dataclass(frozen=True)
class CltSpec:
    order: int
    variance: DualScalar = field(default_factory=lambda: DualScalar(1, 1))

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("order must be >= 1")


@dataclass(frozen=True)
class BernoulliSpec:
    rate: DualScalar
    jump: DualScalar

    def __post_init__(self):
        for name in ("rate", "jump"):
            v = getattr(self, name)
            if not isinstance(v, DualScalar):
                object.__setattr__(self, name, DualScalar(*v))


@dataclass(frozen=True)
class LimitReport:
    """Finite-N values next to their limit with exact deviations."""

    kind: str
    Ns: tuple[int, ...]
    values: tuple[tuple[DualScalar, ...], ...]
    limit: tuple[DualScalar, ...]

    @property
    def deviations(self) -> tuple[tuple[DualScalar, ...], ...]:
        return tuple(tuple(v - l for v, l in zip(row, self.limit)) for row in self.values)

    def to_json(self) -> dict:
        return {
            "N": list(self.Ns),
            self.kind: [[v.to_json() for v in row] for row in self.values],
            "limit": [v.to_json() for v in self.limit],
            "deviation": [[v.to_json() for v in row] for row in self.deviations],
        }


# --- central limit ------------------------------------------------------------


def clt_limit_r_transform(spec: CltSpec) -> CSeries:
    coeffs = [ZERO] * spec.order
    if spec.order >= 2:
        coeffs[1] = spec.variance
    return CSeries(tuple(coeffs))


def clt_limit_moments(spec: CltSpec) -> MomentSequence:
    return cumulants_to_moments(CumulantSequence.from_series(clt_limit_r_transform(spec)))


def clt_finite_n_moments(spec: CltSpec, base: CumulantSequence, N: int) -> MomentSequence:
    """Moments of ``(x_1 + ... + x_N) / sqrt(N)`` for free copies with cumulants ``base``.

    Free cumulants add and scale homogeneously, so the normalised sum has
    ``kappa_n N^(1 - n/2)`` and ``M_n = N^(-n/2) sum_pi N^|pi| prod kappa_|B|``.
    The prefactor is rational for even n; odd n needs a square N unless the
    partition sum vanishes.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if base.order < spec.order:
        raise DimensionError(f"base cumulants stop at {base.order} < {spec.order}")
    if not base[1].is_zero():
        raise DomainError("the summands must be centred (kappa_1 = 0)")
    if base.order >= 2 and base[2] != spec.variance:
        raise DomainError(f"base kappa_2 = {base[2]} differs from the variance {spec.variance}")
    root = isqrt(N)
    out = []
    for n in range(1, spec.order + 1):
        if n > NC_CAP:
            raise DimensionError(f"order {n} exceeds the NC enumeration cap")
        total = ZERO
        for p in nc_tuple(n):
            total = total + Fraction(N) ** len(p) * prod((base[len(b)] for b in p.blocks), start=ONE)
        if n % 2 == 0:
            out.append(total / N ** (n // 2))
        elif total.is_zero():
            out.append(ZERO)
        elif root * root == N:
            out.append(total / root**n)
        else:
            raise ExactnessError(f"odd moment {n} is irrational for non-square N = {N}")
    return MomentSequence(tuple(out))


def clt_report(spec: CltSpec, base: CumulantSequence, Ns: Sequence[int]) -> LimitReport:
    limit = clt_limit_moments(spec)
    rows = tuple(clt_finite_n_moments(spec, base, N).values for N in Ns)
    return LimitReport("moments", tuple(Ns), rows, limit.values)


def arcsine_check(order: int) -> bool:
    """Semicircle plus second-component moments give the arcsine law.

    Uses the CLT limit moments (variance (1,1)) and checks
    ``m_n + m'_n == binom(2k, k)`` at ``n = 2k`` and zero at odd ``n``.
    """
    moments = clt_limit_moments(CltSpec(order))
    for n in range(1, order + 1):
        m = moments[n]
        if n % 2:
            if not m.is_zero():
                return False
            continue
        k = n // 2
        if m.x != catalan(k) or m.t != k * catalan(k) or m.x + m.t != comb(2 * k, k):
            return False
    return True


# --- Bernoulli / Poisson --------------------------------------------------------


def bernoulli_moments(spec: BernoulliSpec, order: int) -> MomentSequence:
    return MomentSequence(tuple(spec.rate * spec.jump**n for n in range(1, order + 1)))


def poisson_sum_cumulants(spec: BernoulliSpec, N: int, order: int) -> CumulantSequence:
    """Cumulants of the free sum of N Bernoulli variables with rate ``rate / N``."""
    if N < 1:
        raise DomainError("N must be >= 1")
    single = BernoulliSpec(spec.rate / N, spec.jump)
    kappa = moments_to_cumulants(bernoulli_moments(single, order))
    return CumulantSequence(tuple(N * k for k in kappa.values))


def poisson_limit_cumulants(spec: BernoulliSpec, order: int) -> CumulantSequence:
    return CumulantSequence(tuple(spec.rate * spec.jump**n for n in range(1, order + 1)))


def poisson_report(spec: BernoulliSpec, Ns: Sequence[int], order: int) -> LimitReport:
    limit = poisson_limit_cumulants(spec, order)
    rows = tuple(poisson_sum_cumulants(spec, N, order).values for N in Ns)
    return LimitReport("cumulants", tuple(Ns), rows, limit.values)


def semicircle_square_cumulants(sigma: DualScalar, order: int) -> CumulantSequence:
    """Cumulants of ``s**2`` where ``s`` is the CLT limit with ``kappa_2 = sigma``."""
    if 2 * order > NC_CAP:
        raise DimensionError(f"order {order} needs NC({2 * order}) beyond the cap")
    moments = clt_limit_moments(CltSpec(2 * order, sigma))
    square = MomentSequence(tuple(moments[2 * n] for n in range(1, order + 1)))
    return moments_to_cumulants(square)


def semicircle_square_check(sigma: DualScalar, order: int) -> bool:
    """True iff every cumulant of the square equals ``sigma * (1,0)**n = sigma``."""
    kappa = semicircle_square_cumulants(sigma, order)
    return all(k == sigma * ONE**n for n, k in enumerate(kappa.values, start=1))


def hankel_necessary_check(m: MomentSequence) -> bool:
    """``m'_2 m'_4 >= m'_3**2`` on the second components (exact)."""
    if m.order < 4:
        raise DimensionError("need moments up to order 4")
    return m[2].t * m[4].t >= m[3].t ** 2


def poisson_moments(lam: Fraction, alpha: Fraction, order: int) -> MomentSequence:
    """Moments of the free Poisson limit with rate ``(lam, 0)`` and jump ``(alpha, alpha)``."""
    spec = BernoulliSpec(DualScalar(lam, 0), DualScalar(alpha, alpha))
    return cumulants_to_moments(poisson_limit_cumulants(spec, order))


def interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """Coefficients (constant first) of the polynomial through ``points``, exactly."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    return coeffs


def ratio_test(deviations: Sequence[Fraction]) -> bool:
    """Deviations at N, 2N, 4N, ... shrink like 1/N.

    Successive ratios must approach 2 monotonically: ``|r_i - 2|`` is
    non-increasing and at least halves over the whole sweep.  A sequence of
    exact zeros passes.
    """
    if all(d == 0 for d in deviations):
        return True
    if any(d == 0 for d in deviations):
        return False
    gaps = [abs(a / b - 2) for a, b in zip(deviations, deviations[1:])]
    monotone = all(later <= earlier for earlier, later in zip(gaps, gaps[1:]))
    return monotone and (gaps[-1] == 0 or gaps[-1] <= gaps[0] / 2)
