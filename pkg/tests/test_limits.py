from fractions import Fraction
from math import comb

import pytest

from typeb_free.cumulants import CumulantSequence, MomentSequence
from typeb_free.dual import ONE, ZERO, DualScalar
from typeb_free.errors import DimensionError, DomainError, ExactnessError
from typeb_free.limits import (
    BernoulliSpec,
    CltSpec,
    LimitReport,
    arcsine_check,
    bernoulli_moments,
    clt_finite_n_moments,
    clt_limit_moments,
    clt_limit_r_transform,
    clt_report,
    hankel_necessary_check,
    interpolate,
    poisson_limit_cumulants,
    poisson_moments,
    poisson_report,
    poisson_sum_cumulants,
    ratio_test,
    semicircle_square_check,
    semicircle_square_cumulants,
)
from typeb_free.nc_lattice import catalan

F = Fraction


def test_clt_r_transform():
    assert clt_limit_r_transform(CltSpec(2)).coeffs == (ZERO, DualScalar(1, 1))
    r = clt_limit_r_transform(CltSpec(5, DualScalar(2, 3)))
    assert r.coeffs == (ZERO, DualScalar(2, 3), ZERO, ZERO, ZERO)
    assert clt_limit_r_transform(CltSpec(1)).coeffs == (ZERO,)


def test_clt_limit_moments():
    m = clt_limit_moments(CltSpec(6))
    assert (m[2], m[4], m[6]) == (DualScalar(1, 1), DualScalar(2, 4), DualScalar(5, 15))
    assert m[1] == m[3] == m[5] == ZERO


def test_clt_limit_moments_scale_with_variance():
    sigma = DualScalar(2, 3)
    m = clt_limit_moments(CltSpec(8, sigma))
    for k in range(1, 5):
        assert m[2 * k] == catalan(k) * sigma**k


BASE = CumulantSequence(tuple(DualScalar(*p) for p in [(0, 0), (1, 1), (0, 0), (1, 0)]))


def test_finite_n_single_summand_is_base():
    m = clt_finite_n_moments(CltSpec(4), BASE, 1)
    from typeb_free.cumulants import cumulants_to_moments

    assert m == cumulants_to_moments(BASE)


def test_finite_n_fourth_moment():
    m = clt_finite_n_moments(CltSpec(4), BASE, 4)
    assert m[4] == DualScalar(2, 4) + DualScalar(F(1, 4), 0)
    assert m[2] == DualScalar(1, 1)


def test_finite_n_deviation_halves():
    report = clt_report(CltSpec(4), BASE, [1, 2, 4, 8, 16])
    devs = [row[3].x for row in report.deviations]
    assert devs == [F(1, n) for n in (1, 2, 4, 8, 16)]
    assert all(a / b == 2 for a, b in zip(devs, devs[1:]))
    assert ratio_test(devs)


def test_finite_n_errors():
    skewed = CumulantSequence(tuple(DualScalar(*p) for p in [(0, 0), (1, 1), (1, 0)]))
    with pytest.raises(ExactnessError):
        clt_finite_n_moments(CltSpec(3), skewed, 2)
    assert clt_finite_n_moments(CltSpec(3), skewed, 4)[3] == DualScalar(F(1, 2), 0)
    shifted = CumulantSequence(tuple(DualScalar(*p) for p in [(1, 0), (1, 1)]))
    with pytest.raises(DomainError):
        clt_finite_n_moments(CltSpec(2), shifted, 2)
    with pytest.raises(DomainError):
        clt_finite_n_moments(CltSpec(2), CumulantSequence((ZERO, ONE)), 2)
    with pytest.raises(DimensionError):
        clt_finite_n_moments(CltSpec(5), BASE, 2)


def test_arcsine_small_orders():
    m = clt_limit_moments(CltSpec(6))
    for k in range(1, 4):
        assert m[2 * k].x + m[2 * k].t == comb(2 * k, k)
    assert arcsine_check(20)


def test_bernoulli_moments():
    spec = BernoulliSpec(DualScalar(F(1, 3), 0), DualScalar(2, 1))
    m = bernoulli_moments(spec, 3)
    assert m.values == (DualScalar(F(2, 3), F(1, 3)), DualScalar(F(4, 3), F(4, 3)), DualScalar(F(8, 3), 4))


def test_poisson_sum_single_summand_exact():
    spec = BernoulliSpec(DualScalar(F(1, 2), F(1, 5)), DualScalar(3, -1))
    from typeb_free.cumulants import moments_to_cumulants

    assert poisson_sum_cumulants(spec, 1, 5) == moments_to_cumulants(bernoulli_moments(spec, 5))


def test_poisson_sum_two_summands():
    spec = BernoulliSpec(ONE, ONE)
    k = poisson_sum_cumulants(spec, 2, 3)
    assert k[1] == ONE
    assert k[2] == DualScalar(F(1, 2), 0)


def test_poisson_limit():
    spec = BernoulliSpec(DualScalar(2, 1), DualScalar(1, 1))
    assert poisson_limit_cumulants(spec, 3).values == (DualScalar(2, 3), DualScalar(2, 5), DualScalar(2, 7))
    report = poisson_report(spec, [8, 16, 32, 64], 4)
    assert report.deviations[0][0] == ZERO
    assert ratio_test([row[1].x for row in report.deviations])
    assert ratio_test([row[3].t for row in report.deviations])


def test_semicircle_square():
    assert semicircle_square_check(ONE, 5)
    assert semicircle_square_check(ZERO, 5)
    for sigma in (DualScalar(1, 1), DualScalar(2, 3)):
        kappa = semicircle_square_cumulants(sigma, 5)
        assert kappa.values == tuple(sigma**n for n in range(1, 6))
        assert not semicircle_square_check(sigma, 5)
    with pytest.raises(DimensionError):
        semicircle_square_cumulants(ONE, 8)


def test_hankel():
    assert not hankel_necessary_check(poisson_moments(F(1, 100), F(3, 2), 4))
    m = poisson_moments(F(1, 100), F(3, 2), 4)
    firsts = MomentSequence(tuple(DualScalar(v.x, v.x) for v in m.values))
    assert hankel_necessary_check(firsts)
    assert hankel_necessary_check(clt_limit_moments(CltSpec(4)))
    with pytest.raises(DimensionError):
        hankel_necessary_check(MomentSequence((ONE, ONE, ONE)))


def test_poisson_moments_closed_form():
    lam, alpha = F(1, 7), F(3, 2)
    m = poisson_moments(lam, alpha, 4)
    assert m[2] == DualScalar(lam + lam**2, 0) * DualScalar(alpha, alpha) ** 2


def test_limit_report_json():
    report = LimitReport("moments", (1, 2), ((ONE,), (DualScalar(F(1, 2), 0),)), (ZERO,))
    assert report.to_json() == {
        "N": [1, 2],
        "moments": [[["1", "0"]], [["1/2", "0"]]],
        "limit": [["0", "0"]],
        "deviation": [[["1", "0"]], [["1/2", "0"]]],
    }


def test_interpolate_and_ratio_test():
    pts = [(F(x), F(3) - F(x) + F(1, 2) * x**2) for x in range(4)]
    assert interpolate(pts) == [3, -1, F(1, 2), 0]
    assert ratio_test([0, 0, 0])
    assert not ratio_test([1, 0, 0])
    assert not ratio_test([1, 1, 1])
    assert ratio_test([F(1), F(1, 3), F(1, 7), F(1, 15)])
