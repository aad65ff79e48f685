from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from k3vw.polynomial import (
    RationalPolynomial,
    X,
    binomial_poly,
    distinct_real_roots,
    hermite,
    is_hyperbolic,
    poly_gcd,
    real_root_count,
    squarefree_decomposition,
    sturm_chain,
)

ONE = RationalPolynomial([1])


def test_hyperbolic_examples():
    assert is_hyperbolic(X**2 - ONE)
    assert not is_hyperbolic(X**2 + ONE)
    assert is_hyperbolic(binomial_poly(3))


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        is_hyperbolic(RationalPolynomial())
    with pytest.raises(ValueError):
        real_root_count(RationalPolynomial())


def test_constants_and_linear():
    assert is_hyperbolic(RationalPolynomial([5]))
    assert is_hyperbolic(RationalPolynomial([Fraction(-3, 7), 2]))
    assert real_root_count(RationalPolynomial([5])) == 0


@pytest.mark.parametrize(
    "d, coeffs",
    [(0, [1]), (1, [0, 1]), (2, [-2, 0, 1]), (3, [0, -6, 0, 1]), (4, [12, 0, -12, 0, 1])],
)
def test_hermite(d, coeffs):
    assert hermite(d) == RationalPolynomial(coeffs)


def test_hermite_recurrence():
    # H_{d+1} = X H_d - 2 d H_{d-1} for the exp(-t^2 + X t) convention
    for d in range(1, 12):
        assert hermite(d + 1) == X * hermite(d) - RationalPolynomial([2 * d]) * hermite(d - 1)
        assert is_hyperbolic(hermite(d))


def test_division_and_gcd():
    f = RationalPolynomial.from_roots([1, 2, 3])
    g = RationalPolynomial.from_roots([2, 5])
    q, r = divmod(f, g)
    assert q * g + r == f and r.degree < g.degree
    assert poly_gcd(f, g) == RationalPolynomial.from_roots([2])
    with pytest.raises(ZeroDivisionError):
        divmod(f, RationalPolynomial())


def test_squarefree_decomposition():
    f = RationalPolynomial.from_roots([1, 1, 1, 2, 2, 3], leading=Fraction(5, 2))
    parts = {m: a for a, m in squarefree_decomposition(f)}
    assert parts[1] == RationalPolynomial.from_roots([3])
    assert parts[2] == RationalPolynomial.from_roots([2])
    assert parts[3] == RationalPolynomial.from_roots([1])


def test_sturm_chain_is_integral():
    chain = sturm_chain(RationalPolynomial([Fraction(1, 3), Fraction(-5, 2), 0, Fraction(7, 4)]))
    assert all(isinstance(c, int) for p in chain for c in p)


roots = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=0, max_size=6)
quadratics = st.lists(
    st.tuples(st.fractions(min_value=-10, max_value=10, max_denominator=5), st.fractions(min_value=Fraction(1, 5), max_value=10, max_denominator=5)),
    min_size=0,
    max_size=3,
)


@settings(max_examples=150, deadline=None)
@given(roots, quadratics, st.fractions(min_value=-9, max_value=9, max_denominator=7).filter(bool))
def test_root_counts_on_constructed_polynomials(real_roots, complex_pairs, lead):
    f = RationalPolynomial.from_roots(real_roots, leading=lead)
    for a, b in complex_pairs:
        # (X - a)^2 + b has the non-real roots a +- i sqrt(b)
        f = f * ((X - RationalPolynomial([a])) ** 2 + RationalPolynomial([b]))
    assert real_root_count(f) == len(real_roots)
    assert real_root_count(f, multiplicity=False) == len(set(real_roots))
    assert distinct_real_roots(f) == len(set(real_roots))
    assert is_hyperbolic(f) == (not complex_pairs)
