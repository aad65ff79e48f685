"""Dedekind sums s(h, k) and the phase of omega_{h,k}^24."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd

from . import _accel


@dataclass(frozen=True, order=True)
class UnitPhase:
    """The unit complex number exp(2 pi i * angle), angle reduced into [0, 1)."""

    angle: Fraction

    def __post_init__(self):
        a = Fraction(self.angle) % 1
        object.__setattr__(self, "angle", a)

    def __mul__(self, other: "UnitPhase") -> "UnitPhase":
        return UnitPhase(self.angle + other.angle)

    def conjugate(self) -> "UnitPhase":
        return UnitPhase(-self.angle)


def _check_pair(h: int, k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not 0 <= h < k:
        raise ValueError(f"need 0 <= h < k, got h={h}, k={k}")
    if gcd(h, k) != 1:
        raise ValueError(f"gcd({h}, {k}) != 1")


def sawtooth(x: Fraction) -> Fraction:
    """((x)): x - floor(x) - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - floor(x) - Fraction(1, 2)


def dedekind_sum_direct(h: int, k: int) -> Fraction:
    """s(h, k) straight from the sawtooth definition, O(k)."""
    _check_pair(h, k)
    return sum((sawtooth(Fraction(mu, k)) * sawtooth(Fraction(h * mu, k)) for mu in range(1, k)), Fraction(0))


@lru_cache(maxsize=65536)
def dedekind_sum(h: int, k: int) -> Fraction:
    """Exact s(h, k) by the reciprocity law, O(log k) rational steps.

    Uses s(h, k) = s(h mod k, k) and
    s(h, k) + s(k, h) = (h^2 + k^2 + 1) / (12 h k) - 1/4.
    """
    _check_pair(h, k)
    k0 = k
    total = Fraction(0)
    sign = 1
    while h > 1:
        total += sign * (Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4))
        h, k = k % h, h
        sign = -sign
    if h == 1:
        # s(1, k) = (k - 1)(k - 2) / (12 k); the only other end state is s(0, 1) = 0
        total += sign * Fraction((k - 1) * (k - 2), 12 * k)
    assert (6 * k0 * total).denominator == 1
    return total


def omega24_phase(h: int, k: int) -> UnitPhase:
    """omega_{h,k}^24 = exp(24 pi i s(h,k)), i.e. angle 12 s(h, k) mod 1."""
    return UnitPhase(12 * dedekind_sum(h, k))


def inverse_neg(h: int, k: int) -> int:
    """Least h' >= 0 with h h' = -1 (mod k)."""
    _check_pair(h, k)
    if k == 1:
        return 0
    return (-pow(h, -1, k)) % k


@lru_cache(maxsize=8)
def omega24_phase_table(K: int):
    """Batch phases of omega_{h,k}^24 for all coprime 0 <= h < k <= K.

    Returns int64 arrays (ks, hs, ts) with phase exp(2 pi i ts / ks), ordered
    by k then h.  Computed by the integer kernel in ``_accel`` from the
    congruence 12 k s(h, k) = h + h^-1 (mod k); agreement with
    :func:`omega24_phase` is part of the test-suite.
    """
    ks, hs, ts = _accel.phase_table(K)
    for arr in (ks, hs, ts):
        arr.setflags(write=False)
    return ks, hs, ts
