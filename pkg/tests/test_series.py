from fractions import Fraction
from math import comb

import pytest

from conftest import rand_dual
from typeb_free.dual import ONE, ZERO, DualScalar
from typeb_free.errors import DimensionError, DomainError, NotInvertibleError, TruncationError
from typeb_free.nc_lattice import SetPartition, catalan, enumerate_nc, kreweras
from typeb_free.series import (
    CSeries,
    UnitSeries,
    box_conv,
    cf_product,
    check_box_conv,
    compose,
    invert_compositional,
    s_transform,
    series_pointwise_mul,
    zeta_prime,
)


def scalars(*values):
    return tuple(DualScalar(v, 0) for v in values)


def random_series(rng, order, invertible=True):
    coeffs = [rand_dual(rng) for _ in range(order)]
    if invertible:
        coeffs[0] = rand_dual(rng, invertible=True)
    return CSeries(tuple(coeffs))


def direct_box_conv(f, g, first_singleton=False):
    """Unaggregated sum over NC(n), one partition at a time."""
    out = []
    for n in range(1, f.order + 1):
        total = ZERO
        for p in enumerate_nc(n):
            if first_singleton and (1,) not in p.blocks:
                continue
            total = total + cf_product(f, p) * cf_product(g, kreweras(p))
        out.append(total)
    return CSeries(tuple(out))


def test_zeta_prime():
    assert zeta_prime(1).coeffs == (ONE,)
    assert zeta_prime(3).coeffs == (ONE, ONE, ONE)
    assert zeta_prime(7).order == 7
    with pytest.raises(DomainError):
        zeta_prime(0)


def test_cf_product(rng):
    f = random_series(rng, 5)
    assert cf_product(f, SetPartition.singletons(4)) == f.coeff(1) ** 4
    assert cf_product(f, SetPartition.one_block(5)) == f.coeff(5)
    assert cf_product(zeta_prime(5), SetPartition.parse("1,3|2|4,5")) == ONE
    with pytest.raises(TruncationError):
        cf_product(f.truncate(2), SetPartition.one_block(3))


def test_box_conv_first_coefficient(rng):
    f, g = random_series(rng, 3), random_series(rng, 3)
    assert box_conv(f, g).coeff(1) == f.coeff(1) * g.coeff(1)


@pytest.mark.parametrize("order", range(1, 7))
def test_box_conv_unit(rng, order):
    delta = CSeries.identity(order)
    for _ in range(3):
        f = random_series(rng, order, invertible=False)
        assert box_conv(f, delta) == f
        assert box_conv(delta, f) == f


def test_box_conv_semicircle_moments():
    r = CSeries((ZERO, DualScalar(1, 1), ZERO, ZERO))
    assert box_conv(r, zeta_prime(4)).coeff(4) == DualScalar(2, 4)


def test_box_conv_matches_direct_sum(rng):
    for order in (4, 6):
        f, g = random_series(rng, order), random_series(rng, order)
        assert box_conv(f, g) == direct_box_conv(f, g)
        assert check_box_conv(f, g) == direct_box_conv(f, g, first_singleton=True)


def test_box_conv_commutative_and_associative(rng):
    # associativity is checked empirically only
    for _ in range(3):
        f, g, h = (random_series(rng, 6, invertible=False) for _ in range(3))
        assert box_conv(f, g) == box_conv(g, f)
        assert box_conv(box_conv(f, g), h) == box_conv(f, box_conv(g, h))


def test_box_conv_order_mismatch():
    with pytest.raises(DimensionError):
        box_conv(zeta_prime(3), zeta_prime(4))
    with pytest.raises(DimensionError):
        check_box_conv(zeta_prime(3), zeta_prime(4))


def test_check_box_conv_low_coefficients(rng):
    f, g = random_series(rng, 4), random_series(rng, 4)
    lam = check_box_conv(f, g)
    assert lam.coeff(1) == f.coeff(1) * g.coeff(1)
    # sigma = {1}{2}: Cf_sigma(f) = alpha_1^2, Kr(sigma) = {1,2}
    assert lam.coeff(2) == f.coeff(1) ** 2 * g.coeff(2)


def test_check_box_conv_of_zeta_counts_partitions():
    lam = check_box_conv(zeta_prime(8), zeta_prime(8))
    for n in range(1, 9):
        count = sum(1 for p in enumerate_nc(n) if p.blocks[0] == (1,))
        assert count == catalan(n - 1)
        assert lam.coeff(n) == DualScalar(count, 0)


def test_compose_examples(rng):
    f = random_series(rng, 5)
    assert compose(f, CSeries.identity(5)) == f
    assert compose(CSeries(scalars(0, 1)), CSeries(scalars(2, 0))) == CSeries(scalars(0, 4))
    zz = CSeries(scalars(1, 1, 0, 0))
    assert compose(zz, zz) == CSeries(scalars(1, 2, 2, 1))


def test_compose_unit_series_outer():
    outer = UnitSeries(scalars(1, 1, 0))
    assert compose(outer, CSeries(scalars(1, 1))) == UnitSeries(scalars(1, 1, 1))


def test_compose_rejects_constant_term():
    with pytest.raises(DomainError):
        compose(CSeries(scalars(1, 1)), UnitSeries(scalars(1, 1, 0)))


def lagrange_inverse_of_z_plus_z2(order):
    # [z^n] g = (1/n) [w^(n-1)] (1 + w)^(-n) = (-1)^(n-1) binom(2n-2, n-1) / n
    return [Fraction((-1) ** (n - 1) * comb(2 * n - 2, n - 1), n) for n in range(1, order + 1)]


def test_invert_examples():
    assert invert_compositional(CSeries.identity(4)) == CSeries.identity(4)
    c = DualScalar(3, 0)
    assert invert_compositional(CSeries((c, ZERO, ZERO))) == CSeries((c.inverse(), ZERO, ZERO))
    got = invert_compositional(CSeries(scalars(1, 1, 0, 0, 0, 0)))
    assert got == CSeries(scalars(*lagrange_inverse_of_z_plus_z2(6)))
    assert [c.x for c in got.coeffs[:4]] == [1, -1, 2, -5]


def test_invert_roundtrip(rng):
    for order in range(1, 8):
        f = random_series(rng, order)
        g = invert_compositional(f)
        assert compose(f, g) == CSeries.identity(order)
        assert compose(g, f) == CSeries.identity(order)


def test_invert_not_invertible():
    with pytest.raises(NotInvertibleError):
        invert_compositional(CSeries((DualScalar(0, 1), ONE)))


def test_s_transform_examples(rng):
    c = DualScalar(2, 5)
    s = s_transform(CSeries((c, ZERO, ZERO)))
    assert s == UnitSeries((c.inverse(), ZERO, ZERO))
    assert s_transform(CSeries(scalars(1, 1, 0, 0))) == UnitSeries(scalars(1, -1, 2, -5))
    for _ in range(5):
        r = random_series(rng, 5)
        assert s_transform(r).coeff(0) == r.coeff(1).inverse()
    with pytest.raises(NotInvertibleError):
        s_transform(CSeries((ZERO, ONE)))


def test_pointwise_mul_examples():
    one = UnitSeries.one(3)
    a = UnitSeries(scalars(2, 3, 5, 7))
    assert series_pointwise_mul(one, a) == a
    assert series_pointwise_mul(UnitSeries(scalars(1, 1, 0)), UnitSeries(scalars(1, -1, 0))) == UnitSeries(
        scalars(1, 0, -1)
    )
    c1, c2 = DualScalar(1, 2), DualScalar(3, 4)
    assert series_pointwise_mul(UnitSeries((c1,)), UnitSeries((c2,))) == UnitSeries((c1 * c2,))
    with pytest.raises(DimensionError):
        series_pointwise_mul(UnitSeries.one(2), UnitSeries.one(3))


def test_s_transform_multiplicative(rng):
    for _ in range(4):
        r1, r2 = random_series(rng, 6), random_series(rng, 6)
        assert s_transform(box_conv(r1, r2)) == series_pointwise_mul(s_transform(r1), s_transform(r2))


def test_json_roundtrip(rng):
    f = random_series(rng, 4)
    doc = f.to_json()
    assert doc["order"] == 4
    assert CSeries.from_json(doc) == f
    assert CSeries.from_json(doc["coeffs"]) == f
    with pytest.raises(DimensionError):
        CSeries.from_json({"order": 3, "coeffs": doc["coeffs"]})
    u = UnitSeries(scalars(1, 2))
    assert UnitSeries.from_json(u.to_json()) == u
