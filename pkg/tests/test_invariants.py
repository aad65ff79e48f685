from fractions import Fraction

import pytest

from k3vw.cyclotomic import CyclotomicValue
from k3vw.invariants import (
    InvariantFamily,
    alpha,
    alpha1,
    alpha2,
    alpha2_prime,
    alpha3,
    alpha3_prime,
    combine_classes,
    expand_partition_function,
    is_prime,
)


def test_alpha1_examples(table):
    assert alpha1(1, 0, table) == 1
    assert alpha1(2, 2, table) == 30
    assert alpha1(2, 3, table) == table[2]


def test_alpha1_can_be_fractional(table):
    # s = 3 divides gcd(0, 3): a(0) + a(0)/9
    assert alpha1(3, 3, table) == Fraction(80, 3)
    assert alpha1(2, 0, table) == Fraction(1, 4)


def test_alpha2_examples(table):
    assert alpha2(2, True, 0, 1, table).is_zero()
    assert alpha2(2, True, 0, 4, table) == CyclotomicValue.rational(4, table[4] + Fraction(table[1], 4))
    assert alpha2(3, True, 0, 0, table).to_rational() == Fraction(80, 3)


def test_alpha2_even_w_is_rational(table):
    for p in (2, 3, 5, 7):
        for w2 in (0, 2, 2 * p, 2 * p + 2, 4 * p):
            zero = w2 % (2 * p) == 0 and w2 == 0
            for n in range(-1, 40):
                assert alpha2(p, zero, w2, n, table).is_rational()


def test_alpha2_odd_w_real_part(table):
    # the real part of (1/p) sum_j zeta_2p^(j e) with e odd is a(n)/p
    for p in (3, 5):
        for n in range(1, 30):
            v = alpha2(p, False, 1, n, table)
            assert v.real_part().to_rational() == Fraction(table[n], p)


def test_alpha2_prime_examples(table):
    assert alpha2_prime(2, True, 0, 2, table) == table[4] + Fraction(table[1], 4)
    assert alpha2_prime(3, False, 6, 1, table) == table[3]


@pytest.mark.parametrize("w2", [1, 3, 2 * 3 + 2])
def test_alpha2_prime_hypothesis(w2, table):
    with pytest.raises(ValueError):
        alpha2_prime(3, False, w2, 1, table)


def test_alpha3_examples(table):
    assert alpha3(2, 1, 5, table) == (2**21 - 1) * table[1]
    assert alpha3(2, 1, 4, table) == 2**21 * 24 + 6 + 24
    assert alpha3(2, 22, 4, table) == 2**21 * 24 + 6 + 2**21 * 24


def test_alpha3_prime_examples(table):
    assert alpha3_prime(2, 2, table) == 2**22 * 24 + 6
    assert alpha3_prime(2, 3, table) == 2**22 * table[2]


def test_reindexing(table):
    for p in (2, 3, 5):
        for n in range(0, 60):
            assert alpha3_prime(p, n, table) == alpha3(p, 22, p * n, table)
            for w2, zero in ((0, True), (2 * p, False), (4 * p, False)):
                assert alpha2(p, zero, w2, p * n, table).to_rational() == alpha2_prime(p, zero, w2, n, table)


def test_expansion_examples(table):
    su1 = expand_partition_function(InvariantFamily.su_r(1), 50, table)
    for n in range(-5, 51):
        assert su1[n].to_rational() == table[n - 1]
    su2 = expand_partition_function(InvariantFamily.su_r(2), 10, table)
    assert su2[2].to_rational() == 30
    tw = expand_partition_function(InvariantFamily.twisted(2, 22), 200, table)
    assert all(n % 2 == 0 for n in tw.support())


@pytest.mark.parametrize(
    "family",
    [
        InvariantFamily.su_r(1),
        InvariantFamily.su_r(4),
        InvariantFamily.su_r(6),
        InvariantFamily.su_r(9),
        InvariantFamily.su_p(3, 0, zero_class=True),
        InvariantFamily.su_p(5, 1),
        InvariantFamily.su_p(7, 3),
        InvariantFamily.su_p(2, 8),
        InvariantFamily.twisted(3, 7),
        InvariantFamily.twisted(5, 22),
    ],
    ids=lambda f: f.label,
)
def test_closed_form_equals_expansion(family, table):
    series = expand_partition_function(family, 150, table)
    for n, coeff in series.items():
        value = alpha(family, n, table)
        if not isinstance(value, CyclotomicValue):
            value = CyclotomicValue.rational(series.order, value)
        assert value == coeff, n


def test_zero_pattern_even_w(table):
    for p in (2, 3, 5):
        m = p + 1
        for n in range(0, 80):
            zero = alpha2(p, False, 2 * m, n, table).is_zero()
            assert zero == ((n - m) % p != 0)


def test_combine_classes(table):
    classes = [(0, 0, True), (1, 6, False), (2, 6, False)]
    total = combine_classes(3, classes, 6, table)
    expected = alpha2(3, True, 0, 6, table) + CyclotomicValue.monomial(6, 2) * alpha2(3, False, 6, 6, table)
    expected = expected + CyclotomicValue.monomial(6, 4) * alpha2(3, False, 6, 6, table)
    assert total == expected


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="su_r", r=0),
        dict(kind="su_p", p=4, w_squared=0),
        dict(kind="su_p", p=3, w_squared=-2),
        dict(kind="su_p", p=3, w_squared=2, w_is_zero_class=True),
        dict(kind="twisted", p=2, rho=23),
        dict(kind="twisted", p=2, rho=0),
        dict(kind="sp"),
    ],
)
def test_family_validation(kwargs):
    with pytest.raises(ValueError):
        InvariantFamily(**kwargs)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
