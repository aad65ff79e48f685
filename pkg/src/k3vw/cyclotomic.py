"""Exact arithmetic in Q(zeta_N) and q-series with fractional exponents."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

import mpmath


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N, constant term first."""
    if N < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (N - 1) + [1]  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q = c // den[-1]
        quot[i - dn] = q
        for j, dj in enumerate(den):
            num[i - dn + j] -= q * dj
    assert not any(num[:dn]), "non-exact cyclotomic division"
    return quot


def _reduce(vec: Iterable, N: int) -> tuple[Fraction, ...]:
    """Reduce sum c_e zeta_N^e (exponents already mod N) into the power basis."""
    phi = cyclotomic_polynomial(N)
    deg = len(phi) - 1
    work = [Fraction(c) for c in vec]
    # Phi_N is monic: x^deg = -sum_{i<deg} phi_i x^i
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            work[i] = Fraction(0)
            for j in range(deg):
                if phi[j]:
                    work[i - deg + j] -= c * phi[j]
    return tuple(work[:deg]) if len(work) >= deg else tuple(work) + (Fraction(0),) * (deg - len(work))


@dataclass(frozen=True)
class CyclotomicValue:
    """Element of Q(zeta_N), zeta_N = exp(2 pi i / N), in the power basis 1, zeta, ..., zeta^(phi(N)-1)."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        deg = len(cyclotomic_polynomial(self.order)) - 1
        if len(self.coeffs) != deg:
            raise ValueError(f"Q(zeta_{self.order}) has degree {deg}, got {len(self.coeffs)} coefficients")

    @classmethod
    def from_exponents(cls, order: int, vec: Iterable) -> "CyclotomicValue":
        """Build from coefficients c_e of zeta^e for e = 0..order-1."""
        vec = list(vec)
        if len(vec) != order:
            raise ValueError("need exactly one coefficient per exponent mod order")
        return cls(order, _reduce(vec, order))

    @classmethod
    def monomial(cls, order: int, exponent: int, coeff=1) -> "CyclotomicValue":
        vec = [0] * order
        vec[exponent % order] = coeff
        return cls.from_exponents(order, vec)

    @classmethod
    def rational(cls, order: int, value) -> "CyclotomicValue":
        return cls.monomial(order, 0, Fraction(value))

    @classmethod
    def zero(cls, order: int) -> "CyclotomicValue":
        return cls.rational(order, 0)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def _check(self, other: "CyclotomicValue") -> None:
        if other.order != self.order:
            raise ValueError(f"mixed orders {self.order} and {other.order}")

    def __add__(self, other):
        if not isinstance(other, CyclotomicValue):
            other = CyclotomicValue.rational(self.order, other)
        self._check(other)
        return CyclotomicValue(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicValue(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CyclotomicValue):
            c = Fraction(other)
            return CyclotomicValue(self.order, tuple(a * c for a in self.coeffs))
        self._check(other)
        N = self.order
        vec = [Fraction(0)] * N
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        vec[(i + j) % N] += a * b
        return CyclotomicValue.from_exponents(N, vec)

    __rmul__ = __mul__

    def conjugate(self) -> "CyclotomicValue":
        """Complex conjugate: zeta -> zeta^-1."""
        N = self.order
        vec = [Fraction(0)] * N
        for i, a in enumerate(self.coeffs):
            vec[(-i) % N] += a
        return CyclotomicValue.from_exponents(N, vec)

    def real_part(self) -> "CyclotomicValue":
        return (self + self.conjugate()) * Fraction(1, 2)

    def imag_is_zero(self) -> bool:
        return self == self.conjugate()

    def to_complex(self, precision: int = 96) -> mpmath.mpc:
        """Complex embedding with zeta = exp(2 pi i / N), at ``precision`` bits."""
        with mpmath.workprec(precision + 16):
            total = mpmath.mpc(0)
            for i, a in enumerate(self.coeffs):
                if a:
                    t = mpmath.mpf(2 * i) / self.order
                    total += mpmath.mpf(a.numerator) / a.denominator * mpmath.mpc(mpmath.cospi(t), mpmath.sinpi(t))
        return total

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = [f"({a})*z^{i}" for i, a in enumerate(self.coeffs) if a]
        return " + ".join(terms) + f"  [z = zeta_{self.order}]"


@dataclass(frozen=True)
class FractionalSeries:
    """sum_n coeffs[n] q^(n / denominator); absent n mean zero."""

    denominator: int
    order: int
    n_min: int
    n_max: int
    coeffs: Mapping[int, CyclotomicValue] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", MappingProxyType(dict(self.coeffs)))

    def __getitem__(self, n: int) -> CyclotomicValue:
        if n > self.n_max:
            raise IndexError(f"series only expanded up to n={self.n_max}")
        return self.coeffs.get(n) or CyclotomicValue.zero(self.order)

    def support(self) -> list[int]:
        return sorted(n for n, c in self.coeffs.items() if not c.is_zero())

    def items(self):
        for n in range(self.n_min, self.n_max + 1):
            yield n, self[n]
