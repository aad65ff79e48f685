import mpmath
import pytest

from k3vw.asymptotics import (
    a_relative_errors,
    asymptotic_report,
    main_term_a,
    main_term_family,
    twisted_constant,
)
from k3vw.invariants import InvariantFamily
from k3vw.rademacher import bessel_I13


def test_main_term_n1():
    with mpmath.workprec(200):
        assert abs(main_term_a(1, 200) / (2 * mpmath.pi * bessel_I13(4 * mpmath.pi, 200)) - 1) < mpmath.mpf(2) ** -180


def test_main_term_n100(table):
    (_, err), = a_relative_errors([100], table)
    assert err < mpmath.exp(-mpmath.pi * 10)


def test_errors_decrease_25_to_100(table):
    errs = dict(a_relative_errors([25, 100], table))
    assert errs[100] < errs[25]


def test_su_r_main_term():
    got = main_term_family(InvariantFamily.su_r(2), 50, 256).value
    assert got == main_term_a(100, 256)


def test_su_p_j_sum_case():
    fam = InvariantFamily.su_p(3, 6)
    mt = main_term_family(fam, 3, 256)
    assert mt.case == "j-sum"
    assert mt.value == main_term_a(3, 256)


def test_su_p_zero_case_flagged():
    mt = main_term_family(InvariantFamily.su_p(3, 6), 4, 256)
    assert mt.vanishing and mt.case == "zero"


def test_twisted_constant():
    assert twisted_constant(2, 22, 101) == 0
    assert twisted_constant(2, 1, 4) == 2**21 + 1
    assert twisted_constant(3, 5, 7) == 3**21 - 3**4


def test_twisted_vanishing_main_term_falls_back():
    mt = main_term_family(InvariantFamily.twisted(2, 22), 101, 256)
    assert mt.vanishing and mt.case == "c_p=0"
    with mpmath.workprec(256):
        expected = 2 * mpmath.pi * mpmath.mpf(2) ** mpmath.mpf(15.5) / mpmath.power(101, 6.5) * mpmath.besseli(13, 4 * mpmath.pi * mpmath.sqrt(202))
        assert abs(mt.fallback / expected - 1) < mpmath.mpf(2) ** -200


def test_fallback_tracks_supersingular_values(table):
    # alpha3(2 n) with rho = 22 against the fallback at n: relative error shrinks
    from k3vw.invariants import alpha3_prime

    errs = []
    for n in (21, 41, 81):
        mt = main_term_family(InvariantFamily.twisted(2, 22), n, 400)
        with mpmath.workprec(400):
            exact = alpha3_prime(2, n, table)
            errs.append(abs(mpmath.mpf(exact.numerator) / exact.denominator / mt.fallback - 1))
    assert errs[0] > errs[1] > errs[2]


@pytest.mark.parametrize(
    "family, ns",
    [
        (InvariantFamily.su_r(2), (40, 160, 640)),
        (InvariantFamily.su_p(3, 6), (60, 240, 960)),
        (InvariantFamily.twisted(3, 5), (40, 160, 640)),
    ],
    ids=lambda x: getattr(x, "label", ""),
)
def test_corrected_main_terms_converge(family, ns, table):
    reps = [asymptotic_report(family, n, table, corrected=True) for n in ns]
    errs = [r.relative_error for r in reps]
    assert errs[0] > errs[1] > errs[2]
    # inside the exp(-pi sqrt n) envelope with a modest constant
    for n, e in zip(ns, errs):
        assert e < mpmath.exp(-mpmath.pi * mpmath.sqrt(n))


def test_report_fields(table):
    rep = asymptotic_report(InvariantFamily.su_r(1), 50, table)
    assert rep.exact == table[49]
    assert rep.relative_error is not None and rep.observed_constant is not None
    assert rep.precision >= 128
