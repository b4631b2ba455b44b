"""Exact verification of the theorem suite; backs ``typeb-free verify-paper``.

Each ``check_*`` function returns a :class:`CheckResult`.  Randomised checks
draw rationals from a seeded :class:`random.Random`, so runs are repeatable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import comb
from typing import Callable

from .cumulants import (
    BimoduleElement,
    CumulantSequence,
    FreeProductOracle,
    Letter,
    MatrixModel,
    MomentSequence,
    c_action,
    component_identity_check,
    conditional_expectation,
    cumulants_to_moments,
    moments_to_cumulants,
    multilinear_cumulant,
    power_sum_moments,
)
from .dual import ONE, ZERO, DualScalar
from .limits import (
    BernoulliSpec,
    CltSpec,
    arcsine_check,
    clt_finite_n_moments,
    clt_limit_moments,
    interpolate,
    poisson_limit_cumulants,
    poisson_moments,
    poisson_sum_cumulants,
    ratio_test,
    semicircle_square_cumulants,
    semicircle_square_check,
)
from .nc_lattice import (
    PartitionInterval,
    SetPartition,
    catalan,
    enumerate_nc,
    enumerate_ncb,
    kreweras,
    moebius,
)
from .series import (
    CSeries,
    box_conv,
    check_box_conv,
    compose,
    invert_compositional,
    s_transform,
    series_pointwise_mul,
    zeta_prime,
)

SEED = 20240531
_POOL = [Fraction(p, q) for p in range(-6, 7) for q in (1, 2, 3, 5)]


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2}. {self.name}: {self.detail}"


def random_rational(rng: random.Random) -> Fraction:
    return rng.choice(_POOL)


def random_dual(rng: random.Random, invertible: bool = False) -> DualScalar:
    while True:
        d = DualScalar(random_rational(rng), random_rational(rng))
        if not invertible or d.is_invertible():
            return d


def random_series(rng: random.Random, order: int, invertible: bool = True) -> CSeries:
    coeffs = [random_dual(rng) for _ in range(order)]
    if invertible:
        coeffs[0] = random_dual(rng, invertible=True)
    return CSeries(tuple(coeffs))


def random_family(rng: random.Random) -> Callable[[tuple], DualScalar]:
    """Pure cumulants of one family: a fixed random value per handle word."""
    table: dict[tuple, DualScalar] = {}

    def cumulant(handles: tuple) -> DualScalar:
        if handles not in table:
            table[handles] = random_dual(rng)
        return table[handles]

    return cumulant


def _order_edges(p: SetPartition) -> list[tuple[int, int]]:
    return [(b[i], b[i + 1]) for b in p.blocks for i in range(len(b) - 1)]


def check_lattice_counts() -> CheckResult:
    bad = [n for n in range(1, 13) if len(enumerate_nc(n)) != catalan(n)]
    bad_b = [n for n in range(1, 7) if len(enumerate_ncb(n)) != comb(2 * n, n)]
    ok = not bad and not bad_b
    detail = "NC(1..12) = Catalan, NC^B(1..6) = binom(2n,n)" if ok else f"mismatch at A{bad} B{bad_b}"
    return CheckResult(1, "lattice counts", ok, detail)


def check_kreweras_laws(max_n: int = 8) -> CheckResult:
    for n in range(1, max_n + 1):
        parts = enumerate_nc(n)
        images = [kreweras(p) for p in parts]
        if len(set(images)) != len(parts) or set(images) != set(parts):
            return CheckResult(2, "Kreweras laws", False, f"not a bijection on NC({n})")
        if any(len(p) + len(k) != n + 1 for p, k in zip(parts, images)):
            return CheckResult(2, "Kreweras laws", False, f"|p|+|Kr p| != n+1 at n={n}")
        labels = [p.rgs() for p in parts]
        edges = [_order_edges(p) for p in parts]
        kr_index = {p: i for i, p in enumerate(parts)}
        kr_of = [kr_index[k] for k in images]

        def leq(i: int, j: int) -> bool:
            lab = labels[j]
            return all(lab[a - 1] == lab[b - 1] for a, b in edges[i])

        for i in range(len(parts)):
            for j in range(len(parts)):
                if leq(i, j) and not leq(kr_of[j], kr_of[i]):
                    return CheckResult(2, "Kreweras laws", False, f"order not reversed at n={n}")
    return CheckResult(2, "Kreweras laws", True, f"bijective, rank-complementary, order-reversing for n <= {max_n}")


def check_moebius(rng: random.Random | None = None, samples: int = 100, order: int = 8) -> CheckResult:
    rng = rng or random.Random(SEED + 3)
    for n in range(1, 9):
        mu = moebius(PartitionInterval(SetPartition.singletons(n), SetPartition.one_block(n)))
        if mu != (-1) ** (n - 1) * catalan(n - 1):
            return CheckResult(3, "Moebius", False, f"mu(0,1) = {mu} at n={n}")
    for _ in range(samples):
        m = MomentSequence(tuple(random_dual(rng) for _ in range(order)))
        k = CumulantSequence(tuple(random_dual(rng) for _ in range(order)))
        if cumulants_to_moments(moments_to_cumulants(m)) != m:
            return CheckResult(3, "Moebius", False, "moments -> cumulants -> moments roundtrip failed")
        if moments_to_cumulants(cumulants_to_moments(k)) != k:
            return CheckResult(3, "Moebius", False, "cumulants -> moments -> cumulants roundtrip failed")
    return CheckResult(3, "Moebius", True, f"mu(0,1) = (-1)^(n-1) Cat(n-1) for n <= 8; {samples} roundtrips at order {order}")


def check_moment_series(rng: random.Random | None = None, samples: int = 50, order: int = 8) -> CheckResult:
    rng = rng or random.Random(SEED + 4)
    zeta = zeta_prime(order)
    for _ in range(samples):
        r = random_series(rng, order, invertible=False)
        via_box = box_conv(r, zeta)
        via_engine = cumulants_to_moments(CumulantSequence.from_series(r)).to_series()
        if via_box != via_engine:
            return CheckResult(4, "M = R boxconv zeta'", False, f"mismatch for R = {r.to_json()}")
    return CheckResult(4, "M = R boxconv zeta'", True, f"{samples} random R at order {order}")


def check_inverse_identity(rng: random.Random | None = None, samples: int = 20, order: int = 7) -> CheckResult:
    rng = rng or random.Random(SEED + 5)
    for _ in range(samples):
        f, g = random_series(rng, order), random_series(rng, order)
        lhs = compose(invert_compositional(f), box_conv(f, g))
        rhs = check_box_conv(f, g).scale(f.coeffs[0].inverse())
        if lhs != rhs:
            return CheckResult(5, "f^<-1> o (f boxconv g) = a1^-1 (f checkboxconv g)", False, "mismatch")
    return CheckResult(5, "f^<-1> o (f boxconv g) = a1^-1 (f checkboxconv g)", True, f"{samples} random pairs at order {order}")


def check_s_multiplicativity(rng: random.Random | None = None, samples: int = 20, order: int = 7) -> CheckResult:
    rng = rng or random.Random(SEED + 6)
    for _ in range(samples):
        r1, r2 = random_series(rng, order), random_series(rng, order)
        if s_transform(box_conv(r1, r2)) != series_pointwise_mul(s_transform(r1), s_transform(r2)):
            return CheckResult(6, "S-transform multiplicativity", False, "mismatch")
    return CheckResult(6, "S-transform multiplicativity", True, f"{samples} random pairs at order {order}")


def check_clt() -> CheckResult:
    moments = clt_limit_moments(CltSpec(12))
    for k in range(1, 7):
        if moments[2 * k] != DualScalar(catalan(k), comb(2 * k, k + 1)) or not moments[2 * k - 1].is_zero():
            return CheckResult(7, "CLT", False, f"limit moment mismatch at n={2 * k}")
    spec = CltSpec(4)
    base = CumulantSequence((ZERO, DualScalar(1, 1), ZERO, DualScalar(1, 0)))
    limit = clt_limit_moments(spec)[4]
    devs = [clt_finite_n_moments(spec, base, N)[4] - limit for N in (1, 2, 4, 8, 16)]
    exact = all(d == DualScalar(Fraction(1, N), 0) for d, N in zip(devs, (1, 2, 4, 8, 16)))
    halving = all(a == 2 * b for a, b in zip(devs, devs[1:]))
    ok = exact and halving
    return CheckResult(7, "CLT", ok, "limit (Cat(k), binom(2k,k+1)) for k <= 6; M_4 deviation = (1/N, 0)" if ok else "finite-N deviation is not exactly 1/N")


def check_arcsine() -> CheckResult:
    ok = arcsine_check(20) and all(catalan(k) + k * catalan(k) == comb(2 * k, k) for k in range(1, 11))
    return CheckResult(8, "arcsine decomposition", ok, "Cat(k) + k Cat(k) = binom(2k,k) for k <= 10")


PAPER_POISSON = {
    2: lambda lam: lam + lam**2,
    3: lambda lam: lam + 3 * lam**2 + lam**3,
    4: lambda lam: lam + 6 * lam**2 + 6 * lam**3 + lam**4,
}


def check_poisson(order: int = 5) -> CheckResult:
    name = "Poisson limit"
    spec = BernoulliSpec(DualScalar(Fraction(1, 3), Fraction(1, 2)), DualScalar(2, Fraction(1, 5)))
    Ns = (2, 4, 8, 16, 32)
    limit = poisson_limit_cumulants(spec, order)
    if any(limit[n] != spec.rate * spec.jump**n for n in range(1, order + 1)):
        return CheckResult(9, name, False, "limit cumulants differ from rate * jump^n")
    rows = [poisson_sum_cumulants(spec, N, order) for N in Ns]
    for n in range(1, order + 1):
        for comp in ("x", "t"):
            devs = [getattr(row[n] - limit[n], comp) for row in rows]
            if not ratio_test(devs):
                return CheckResult(9, name, False, f"ratio test failed at n={n} ({comp})")
            # N * deviation is a polynomial of degree <= n-2 in 1/N: fit on all
            # but one point, predict the last one exactly.
            pts = [(Fraction(1, N), N * d) for N, d in zip(Ns, devs)]
            fit = interpolate(pts[: max(n - 1, 1)])
            u, y = pts[-1]
            if sum(c * u**i for i, c in enumerate(fit)) != y:
                return CheckResult(9, name, False, f"N * deviation not polynomial in 1/N at n={n}")
    for lam in (Fraction(1, 100), Fraction(1, 7), Fraction(1, 2), Fraction(3), Fraction(-5, 4)):
        alpha = Fraction(3, 2)
        moments = poisson_moments(lam, alpha, 4)
        jump = DualScalar(alpha, alpha)
        for n, poly in PAPER_POISSON.items():
            if moments[n] != DualScalar(poly(lam), 0) * jump**n:
                return CheckResult(9, name, False, f"M_{n} polynomial mismatch at lambda={lam}")
    return CheckResult(9, name, True, f"deviation O(1/N) over N in {Ns}; M_2..M_4 polynomials at 5 lambdas")


def check_semicircle_square(order: int = 5) -> CheckResult:
    failures = []
    for sigma in (DualScalar(1, 0), DualScalar(1, 1), DualScalar(2, 3)):
        if not semicircle_square_check(sigma, order):
            got = semicircle_square_cumulants(sigma, order)
            failures.append(f"sigma={sigma}: cumulants {', '.join(map(str, got.values))}")
    ok = not failures
    return CheckResult(
        10, "semicircle square cumulants = sigma", ok, "all equal sigma for n <= 5" if ok else "; ".join(failures)
    )


def check_hankel() -> CheckResult:
    name = "Hankel failure"
    lam = Fraction(1, 100)
    m = poisson_moments(lam, Fraction(1), 4)
    fails = m[2].t * m[4].t < m[3].t ** 2
    lams = [Fraction(1, d) for d in (50, 100, 200, 400, 800)]
    lhs_pts, rhs_pts = [], []
    for l in lams:
        mm = poisson_moments(l, Fraction(1), 4)
        lhs_pts.append((l, mm[2].t * mm[4].t / l**2))
        rhs_pts.append((l, mm[3].t ** 2 / l**2))
    lead_l, lead_r = interpolate(lhs_pts)[0], interpolate(rhs_pts)[0]
    ok = fails and lead_l == 8 and lead_r == 9
    return CheckResult(11, name, ok, f"m2*m4 < m3^2 at lambda=1/100; leading terms {lead_l} vs {lead_r}")


def check_bimodule(rng: random.Random | None = None, samples: int = 200) -> CheckResult:
    rng = rng or random.Random(SEED + 12)
    name = "conditional expectation and component identity"
    for dim in (2, 3):
        model = MatrixModel(dim)
        for _ in range(samples // 2):
            c = random_dual(rng)
            e = BimoduleElement(model.random_matrix(rng), model.random_matrix(rng), model.random_matrix(rng))
            if conditional_expectation(model, c_action(c, e)) != c * conditional_expectation(model, e):
                return CheckResult(12, name, False, "E(c m) != c E(m)")
        for n in range(1, 5):
            for _ in range(2):
                pairs = [(model.random_matrix(rng), model.random_matrix(rng)) for _ in range(n)]
                if not component_identity_check(model, pairs):
                    return CheckResult(12, name, False, f"component identity fails (dim={dim}, n={n})")
    return CheckResult(12, name, True, f"{samples} bimodule pairs; component identity for n <= 4 at dims 2, 3")


def check_freeness(rng: random.Random | None = None, order: int = 4) -> CheckResult:
    rng = rng or random.Random(SEED + 13)
    name = "freeness"
    oracle = FreeProductOracle({"A": random_family(rng), "B": random_family(rng)})
    letters = [Letter("A", "a1"), Letter("A", "a2"), Letter("B", "b1"), Letter("B", "b2")]
    for n in range(2, order + 1):
        for word in cartesian(letters, repeat=n):
            if len({w.label for w in word}) > 1 and not multilinear_cumulant(oracle, word).is_zero():
                return CheckResult(13, name, False, f"mixed cumulant nonzero for {word}")
    a, b = letters[0], letters[2]
    add_order = 5
    sum_k = moments_to_cumulants(power_sum_moments(oracle, [a, b], add_order))
    single_a = moments_to_cumulants(power_sum_moments(oracle, [a], add_order))
    single_b = moments_to_cumulants(power_sum_moments(oracle, [b], add_order))
    additive = all(sum_k[n] == single_a[n] + single_b[n] for n in range(1, add_order + 1))
    return CheckResult(
        13, name, additive, f"mixed cumulants vanish up to order {order}; additivity up to {add_order}" if additive else "cumulants of the sum are not additive"
    )


ALL_CHECKS = (
    check_lattice_counts,
    check_kreweras_laws,
    check_moebius,
    check_moment_series,
    check_inverse_identity,
    check_s_multiplicativity,
    check_clt,
    check_arcsine,
    check_poisson,
    check_semicircle_square,
    check_hankel,
    check_bimodule,
    check_freeness,
)


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
