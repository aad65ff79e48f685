"""Vafa-Witten invariants of K3 surfaces: closed forms and direct expansions.

Three families, all built from a(n), the coefficients of eta(q)^-24:

* ``su_r``: SU(r), Z = q^r sum_{d|r} d/r^2 sum_{j<d} eta(zeta_d^j q^(r/d^2))^-24
* ``su_p``: SU(p)/Z_p for one class w, known through delta_{w,0} and w^2
* ``twisted``: twisted SU(p)/Z_p on a K3 of Picard number rho
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .cyclotomic import CyclotomicValue, FractionalSeries
from .qseries import CoefficientTable, shared_table

KINDS = ("su_r", "su_p", "twisted")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


@dataclass(frozen=True)
class InvariantFamily:
    kind: str
    r: int | None = None
    p: int | None = None
    w_is_zero_class: bool = False
    w_squared: int | None = None
    rho: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "su_r":
            if self.r is None or self.r < 1:
                raise ValueError("su_r needs r >= 1")
            return
        if self.p is None or not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.kind == "su_p":
            if self.w_squared is None or self.w_squared < 0:
                raise ValueError("su_p needs w_squared >= 0")
            if self.w_is_zero_class and self.w_squared % (2 * self.p):
                raise ValueError("the zero class has w^2 divisible by 2p")
        else:
            if self.rho is None or not 1 <= self.rho <= 22:
                raise ValueError("twisted needs 1 <= rho <= 22")

    @classmethod
    def su_r(cls, r: int) -> "InvariantFamily":
        return cls("su_r", r=r)

    @classmethod
    def su_p(cls, p: int, w_squared: int = 0, zero_class: bool = False) -> "InvariantFamily":
        return cls("su_p", p=p, w_is_zero_class=zero_class, w_squared=w_squared)

    @classmethod
    def twisted(cls, p: int, rho: int) -> "InvariantFamily":
        return cls("twisted", p=p, rho=rho)

    @property
    def label(self) -> str:
        if self.kind == "su_r":
            return f"su_r(r={self.r})"
        if self.kind == "su_p":
            w = "0" if self.w_is_zero_class else f"w2={self.w_squared}"
            return f"su_p(p={self.p},{w})"
        return f"twisted(p={self.p},rho={self.rho})"

    @property
    def series_denominator(self) -> int:
        return 1 if self.kind == "su_r" else self.p


def _table(table: CoefficientTable | None, needed: int) -> CoefficientTable:
    return table if table is not None else shared_table(max(needed, 0))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


# -- closed forms -------------------------------------------------------------

def alpha1(r: int, n: int, table: CoefficientTable | None = None) -> Fraction:
    """SU(r) invariant: sum over s | gcd(n - r, r) of a((n - r) r / s^2) / s^2."""
    if r < 1:
        raise ValueError("r must be >= 1")
    table = _table(table, (n - r) * r)
    m = (n - r) * r
    total = Fraction(0)
    for s in _divisors(gcd(n - r, r)):
        total += Fraction(table[m // (s * s)], s * s)
    return total


def _alpha2_rational(p: int, w_is_zero: bool, w_squared: int, n: int, table: CoefficientTable) -> Fraction:
    # even w^2 = 2m: the j-sum is p a(n) when p | n - m and 0 otherwise
    m = w_squared // 2
    value = Fraction(table[n]) if (n - m) % p == 0 else Fraction(0)
    if w_is_zero and n % (p * p) == 0:
        value += Fraction(table[n // (p * p)], p * p)
    return value


def alpha2(p: int, w_is_zero: bool, w_squared: int, n: int, table: CoefficientTable | None = None) -> CyclotomicValue:
    """SU(p)/Z_p invariant of class w as an exact element of Q(zeta_2p).

    (1/p) sum_j zeta_2p^(j (2n - w^2)) a(n) + [p^2 | n] delta_{w,0} a(n/p^2) / p^2
    """
    InvariantFamily.su_p(p, w_squared, w_is_zero)
    table = _table(table, n)
    order = 2 * p
    if w_squared % 2 == 0:
        return CyclotomicValue.rational(order, _alpha2_rational(p, w_is_zero, w_squared, n, table))
    vec = [Fraction(0)] * order
    a_n = Fraction(table[n], p)
    e = 2 * n - w_squared
    for j in range(p):
        vec[(j * e) % order] += a_n
    value = CyclotomicValue.from_exponents(order, vec)
    # odd w^2 never belongs to the zero class, so the delta term is absent
    return value


def alpha2_prime(p: int, w_is_zero: bool, w_squared: int, n: int, table: CoefficientTable | None = None) -> Fraction:
    """alpha2(w; p n) when w^2 = 2m with p | m: a(pn) + [p | n] delta_{w,0} a(n/p) / p^2."""
    InvariantFamily.su_p(p, w_squared, w_is_zero)
    if w_squared % 2 or (w_squared // 2) % p:
        raise ValueError(f"alpha2_prime needs w^2 = 2m with p | m; got w^2={w_squared}, p={p}")
    table = _table(table, p * n)
    value = Fraction(table[p * n])
    if w_is_zero and n % p == 0:
        value += Fraction(table[n // p], p * p)
    return value


def alpha3(p: int, rho: int, n: int, table: CoefficientTable | None = None) -> Fraction:
    """Twisted invariant for Picard number rho.

    p^21 a(n - p^2) + [p^2 | n] a(n/p^2 - 1) / p^2
      + (p^(rho-1) (p-1) if p | n else -p^(rho-1)) a(n - p^2)
    """
    InvariantFamily.twisted(p, rho)
    table = _table(table, n - p * p)
    shifted = table[n - p * p]
    value = Fraction(p**21 * shifted)
    if n % (p * p) == 0:
        value += Fraction(table[n // (p * p) - 1], p * p)
    third = p ** (rho - 1) * (p - 1) if n % p == 0 else -(p ** (rho - 1))
    return value + third * shifted


def alpha3_prime(p: int, n: int, table: CoefficientTable | None = None) -> Fraction:
    """Supersingular twisted invariant alpha3(p n), rho = 22: p^22 a(p(n - p)) + [p | n] a(n/p - 1) / p^2."""
    InvariantFamily.twisted(p, 22)
    table = _table(table, p * (n - p))
    value = Fraction(p**22 * table[p * (n - p)])
    if n % p == 0:
        value += Fraction(table[n // p - 1], p * p)
    return value


def alpha(family: InvariantFamily, n: int, table: CoefficientTable | None = None):
    """Closed-form invariant of ``family`` at index n (Fraction or CyclotomicValue)."""
    if family.kind == "su_r":
        return alpha1(family.r, n, table)
    if family.kind == "su_p":
        return alpha2(family.p, family.w_is_zero_class, family.w_squared, n, table)
    return alpha3(family.p, family.rho, n, table)


def combine_classes(p: int, classes, n: int, table: CoefficientTable | None = None) -> CyclotomicValue:
    """Coefficient of q^(n/p) in sum_w exp(2 pi i (w.c1)/p) Z_w(q).

    ``classes`` is an iterable of (w_dot_c1, w_squared, is_zero_class)
    triples supplied by the caller; the classes of H^2(S, mu_p) are not
    enumerated here.
    """
    order = 2 * p
    total = CyclotomicValue.zero(order)
    for w_dot_c1, w_squared, is_zero in classes:
        phase = CyclotomicValue.monomial(order, 2 * w_dot_c1)
        total = total + phase * alpha2(p, is_zero, w_squared, n, table)
    return total


# -- direct expansion of the generating functions ------------------------------

class _Accumulator:
    """Integer coefficient vectors over exponents mod ``order``, one per index."""

    def __init__(self, order: int, scale: int):
        self.order = order
        self.scale = scale  # every entry is implicitly divided by this
        self.slots: dict[int, list[int]] = {}

    def add(self, index: int, exponent: int, value: int) -> None:
        vec = self.slots.get(index)
        if vec is None:
            vec = self.slots[index] = [0] * self.order
        vec[exponent % self.order] += value

    def finish(self) -> dict[int, CyclotomicValue]:
        out = {}
        for index, vec in self.slots.items():
            out[index] = CyclotomicValue.from_exponents(self.order, [Fraction(v, self.scale) for v in vec])
        return out


def _expand_su_r(r: int, n_max: int, table: CoefficientTable | None) -> FractionalSeries:
    # Work in units q^(1/r): d | r makes every exponent r + k r / d^2 a multiple of 1/r.
    top = n_max * r
    table = _table(table, top)
    acc = _Accumulator(order=r, scale=r * r)
    for d in _divisors(r):
        step = (r // d) ** 2  # k r / d^2 in units 1/r is k (r/d)^2
        k = -1
        while r * r + k * step <= top:
            a_k = table[k]
            for j in range(d):
                # zeta_d^(j k) = zeta_r^(j k r/d); d / r^2 prefactor
                acc.add(r * r + k * step, j * k * (r // d), d * a_k)
            k += 1
    raw = acc.finish()
    coeffs = {}
    for index, value in raw.items():
        if index % r:
            if not value.is_zero():
                raise ArithmeticError(f"non-integral power q^({index}/{r}) survived in the SU({r}) expansion")
            continue
        coeffs[index // r] = value
    n_min = min(coeffs) if coeffs else 0
    return FractionalSeries(1, r, min(n_min, n_max), n_max, coeffs)


def _expand_su_p(fam: InvariantFamily, n_max: int, table: CoefficientTable | None) -> FractionalSeries:
    p, w2 = fam.p, fam.w_squared
    table = _table(table, n_max)
    order = 2 * p
    acc = _Accumulator(order=order, scale=p * p)
    if fam.w_is_zero_class:
        # (1/p^2) eta(q^p)^-24: a(m) sits at q^(p m) = q^(p^2 m / p)
        m = -1
        while p * p * m <= n_max:
            acc.add(p * p * m, 0, table[m])
            m += 1
    for j in range(p):
        # (1/p) e^(-pi i j w^2 / p) eta(zeta_p^j q^(1/p))^-24, a(k) at q^(k/p)
        for k in range(-1, n_max + 1):
            acc.add(k, j * (2 * k - w2), p * table[k])
    coeffs = acc.finish()
    return FractionalSeries(p, order, -p * p if fam.w_is_zero_class else -1, n_max, coeffs)


def _expand_twisted(fam: InvariantFamily, n_max: int, table: CoefficientTable | None) -> FractionalSeries:
    p, rho = fam.p, fam.rho
    table = _table(table, n_max - p * p)
    acc = _Accumulator(order=p, scale=p * p)
    # q^p / p^2 eta(q^p)^-24: a(m) at q^(p (m + 1)) = q^(p^2 (m + 1) / p)
    m = -1
    while p * p * (m + 1) <= n_max:
        acc.add(p * p * (m + 1), 0, table[m])
        m += 1
    # q^p p^21 eta(q^(1/p))^-24 and q^p p^(rho-1) sum_{j>=1} eta(zeta_p^j q^(1/p))^-24
    for k in range(-1, n_max - p * p + 1):
        a_k = table[k]
        acc.add(p * p + k, 0, p * p * p**21 * a_k)
        for j in range(1, p):
            acc.add(p * p + k, j * k, p * p * p ** (rho - 1) * a_k)
    coeffs = acc.finish()
    return FractionalSeries(p, p, 0, n_max, coeffs)


def expand_partition_function(
    family: InvariantFamily, n_max: int, table: CoefficientTable | None = None
) -> FractionalSeries:
    """Coefficients of q^(n/p) (p = 1 for SU(r)) up to n_max, by substituting
    roots of unity and fractional powers of q into the a(n) series term by term."""
    if family.kind == "su_r":
        return _expand_su_r(family.r, n_max, table)
    if family.kind == "su_p":
        return _expand_su_p(family, n_max, table)
    return _expand_twisted(family, n_max, table)
