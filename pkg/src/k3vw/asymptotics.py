"""Leading Bessel terms of a(n) and of the three invariant families, with
observed relative errors against the exact values."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .cyclotomic import CyclotomicValue
from .invariants import InvariantFamily, alpha
from .qseries import CoefficientTable, shared_table
from .rademacher import bessel_I13, env_precision


def asymptotic_precision(n: int) -> int:
    """Bits needed to see relative errors of size exp(-2 pi sqrt(n)) with room to spare.

    VW_PRECISION_BITS overrides the default.
    """
    return env_precision() or max(128, math.ceil(4 * math.pi * math.sqrt(max(n, 1)) / math.log(2))) + 64


def _bessel_term(x_sq, power_base, precision: int, factor=1, divisor: int = 1) -> mpmath.mpf:
    # 2 pi factor power_base^(-13/2) I_13(4 pi sqrt(x_sq) / divisor)
    with mpmath.workprec(precision + 16):
        arg = 4 * mpmath.pi * mpmath.sqrt(x_sq) / divisor
        value = 2 * mpmath.pi * factor * bessel_I13(arg, precision + 16) / mpmath.power(power_base, mpmath.mpf(13) / 2)
    with mpmath.workprec(precision):
        return +value


def main_term_a(n: int, precision: int | None = None) -> mpmath.mpf:
    """2 pi n^(-13/2) I_13(4 pi sqrt(n)), the k = 1 term of the exact formula."""
    if n < 1:
        raise ValueError("main_term_a needs n >= 1")
    precision = precision or asymptotic_precision(n)
    return _bessel_term(n, n, precision)


@dataclass(frozen=True)
class MainTerm:
    value: mpmath.mpf
    precision: int
    case: str
    vanishing: bool = False
    # substitute main term when the stated one cancels to zero
    fallback: mpmath.mpf | None = None


def _alpha2_case(fam: InvariantFamily, n: int) -> str:
    p, w2 = fam.p, fam.w_squared
    if (2 * n - w2) % (2 * p) == 0:
        return "j-sum"
    if n % (p * p) == 0 and fam.w_is_zero_class:
        return "delta"
    return "zero"


def twisted_constant(p: int, rho: int, n: int) -> int:
    """c_p(n) = p^21 + p^(rho-1) (p-1) if p | n, else p^21 - p^(rho-1)."""
    if n % p == 0:
        return p**21 + p ** (rho - 1) * (p - 1)
    return p**21 - p ** (rho - 1)


def main_term_family(
    family: InvariantFamily, n: int, precision: int | None = None, corrected: bool = False
) -> MainTerm:
    """Leading term of the family's invariant at index n.

    With ``corrected=False`` this is the stated main term.  With
    ``corrected=True`` the Bessel argument follows the index actually fed
    to a(.) by the exact formula (e.g. a((n - r) r) for SU(r)), and the
    SU(p)/Z_p delta case uses the power p^11 that the exact formula implies.
    """
    if n < 1:
        raise ValueError("main terms need n >= 1")
    precision = precision or asymptotic_precision(max(n, 1) * (family.r or family.p or 1))
    if family.kind == "su_r":
        r = family.r
        if corrected:
            m = (n - r) * r
            if m < 1:
                return MainTerm(mpmath.mpf(0), precision, "below-range", vanishing=True)
            return MainTerm(_bessel_term(m, m, precision), precision, "s=1")
        return MainTerm(_bessel_term(r * n, r * n, precision), precision, "s=1")
    if family.kind == "su_p":
        case = _alpha2_case(family, n)
        p = family.p
        if case == "j-sum":
            return MainTerm(_bessel_term(n, n, precision), precision, case)
        if case == "delta":
            power = mpmath.mpf(p) ** 11 if corrected else mpmath.mpf(p) ** mpmath.mpf(4.5)
            return MainTerm(_bessel_term(n, n, precision, factor=power, divisor=p), precision, case)
        return MainTerm(mpmath.mpf(0), precision, case, vanishing=True)
    p, rho = family.p, family.rho
    c = twisted_constant(p, rho, n)
    if c == 0:
        # rho = 22, p does not divide n: use the supersingular main term for alpha3(p n)
        with mpmath.workprec(precision + 16):
            fallback = _bessel_term(p * n, n, precision, factor=mpmath.mpf(p) ** mpmath.mpf(15.5))
        return MainTerm(mpmath.mpf(0), precision, "c_p=0", vanishing=True, fallback=fallback)
    if corrected:
        m = n - p * p
        if m < 1:
            return MainTerm(mpmath.mpf(0), precision, "below-range", vanishing=True)
        return MainTerm(_bessel_term(m, m, precision, factor=c), precision, "c_p")
    return MainTerm(_bessel_term(n, n, precision, factor=c), precision, "c_p")


@dataclass(frozen=True)
class AsymptoticReport:
    n: int
    exact: Fraction | CyclotomicValue
    main_term: mpmath.mpf
    relative_error: mpmath.mpf | None
    bound_scale: mpmath.mpf
    observed_constant: mpmath.mpf | None
    precision: int
    case: str


def _bound_scale(family: InvariantFamily, n: int, case: str, precision: int) -> mpmath.mpf:
    with mpmath.workprec(precision):
        if family.kind == "su_r":
            return mpmath.exp(-2 * mpmath.pi * mpmath.sqrt(family.r * n))
        if family.kind == "su_p" and case == "delta":
            return mpmath.exp(-2 * mpmath.pi * mpmath.sqrt(n) / family.p)
        return mpmath.exp(-2 * mpmath.pi * mpmath.sqrt(n))


def relative_error(exact: Fraction | int, approx: mpmath.mpf, precision: int) -> mpmath.mpf:
    """|exact / approx - 1| evaluated at ``precision`` bits (at least 128)."""
    with mpmath.workprec(max(precision, 128)):
        exact = Fraction(exact)
        value = mpmath.mpf(exact.numerator) / exact.denominator
        return abs(value / approx - 1)


def asymptotic_report(
    family: InvariantFamily,
    n: int,
    table: CoefficientTable | None = None,
    precision: int | None = None,
    corrected: bool = False,
) -> AsymptoticReport:
    exact = alpha(family, n, table)
    main = main_term_family(family, n, precision, corrected)
    scale = _bound_scale(family, n, main.case, main.precision)
    rel = const = None
    if not main.vanishing:
        value = exact.real_part().to_rational() if isinstance(exact, CyclotomicValue) else exact
        rel = relative_error(value, main.value, main.precision)
        with mpmath.workprec(main.precision):
            const = rel / scale
    return AsymptoticReport(n, exact, main.value, rel, scale, const, main.precision, main.case)


def a_relative_errors(ns, table: CoefficientTable | None = None) -> list[tuple[int, mpmath.mpf]]:
    """(n, |a(n) / main_term_a(n) - 1|) for each n."""
    ns = list(ns)
    table = table if table is not None else shared_table(max(ns))
    out = []
    for n in ns:
        prec = asymptotic_precision(n)
        out.append((n, relative_error(table[n], main_term_a(n, prec), prec)))
    return out
