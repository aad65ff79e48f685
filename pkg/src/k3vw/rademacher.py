"""Convergent exact formula for a(n), n >= 1, evaluated in arbitrary precision.

    a(n) = 2 pi n^(-13/2) sum_{k>=1} (1/k) sum_h omega_{h,k}^24 e^{-2 pi i (n+1) h / k} I_13(4 pi sqrt(n) / k)

The inner h-sum is grouped by the residue r of the total phase numerator
mod k (an integer histogram from ``_accel``), so each k block costs one
Bessel evaluation plus a dot product with a cached cos/sin table.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from . import _accel
from .dedekind import omega24_phase_table

# fractional bits required before a rounded value counts as resolved
FRACTION_BITS = 16
GUARD_BITS = 32
# a partial sum this close to an integer is taken as identifying it
RESOLVE_TOLERANCE = 0.25
DOUBLING_TOLERANCE = 1e-3


def env_precision() -> int | None:
    """Bits from VW_PRECISION_BITS, or None when unset."""
    env = os.environ.get("VW_PRECISION_BITS")
    if not env:
        return None
    bits = int(env)
    if bits < 64:
        raise ValueError("VW_PRECISION_BITS must be >= 64")
    return bits


def default_precision(n: int) -> int:
    """ceil(4 pi sqrt(n) / ln 2) + 96 bits, unless VW_PRECISION_BITS is set."""
    return env_precision() or math.ceil(4 * math.pi * math.sqrt(max(n, 1)) / math.log(2)) + 96


def bessel_I13(x, precision: int) -> mpmath.mpf:
    """I_13(x) for x >= 0 from the ascending series, to ``precision`` bits.

    Stops once the geometric bound on the tail drops below
    2^-(precision+8) * min(1, partial sum).
    """
    if precision < 2:
        raise ValueError("precision must be positive")
    work = precision + GUARD_BITS
    with mpmath.workprec(work):
        x = mpmath.mpf(x)
        if x < 0:
            raise ValueError("bessel_I13 needs x >= 0")
        if x == 0:
            return mpmath.mpf(0)
        half = x / 2
        h2 = half * half
        term = half**13 / mpmath.factorial(13)
        total = term
        eps = mpmath.ldexp(1, -precision - 8)
        m = 0
        while True:
            m += 1
            term = term * h2 / (m * (m + 13))
            total += term
            ratio = h2 / ((m + 1) * (m + 14))
            if ratio < 0.5 and term * ratio / (1 - ratio) < eps * min(1, total):
                break
    with mpmath.workprec(precision):
        return +total


@lru_cache(maxsize=4096)
def _trig_row(k: int, bits: int) -> tuple[tuple[mpmath.mpf, mpmath.mpf], ...]:
    # cos, sin of 2 pi r / k for 0 <= r <= k // 2
    with mpmath.workprec(bits):
        return tuple(
            (mpmath.cospi(mpmath.mpf(2 * r) / k), mpmath.sinpi(mpmath.mpf(2 * r) / k)) for r in range(k // 2 + 1)
        )


@dataclass(frozen=True)
class RademacherResult:
    n: int
    terms_used: int
    precision: int
    approximation: mpmath.mpf
    rounded: int
    residual: mpmath.mpf
    imaginary: mpmath.mpf
    status: str  # "resolved" | "unresolved"

    @property
    def resolved(self) -> bool:
        return self.status == "resolved"


def _block_sums(block, k: int, bits: int):
    """Real and imaginary part of sum_r block[r] exp(2 pi i r / k)."""
    row = _trig_row(k, bits)
    re = mpmath.mpf(int(block[0]))
    im = mpmath.mpf(0)
    for r in range(1, (k + 1) // 2):
        c_plus, c_minus = int(block[r]), int(block[k - r])
        cos_r, sin_r = row[r]
        if c_plus + c_minus:
            re += (c_plus + c_minus) * cos_r
        if c_plus != c_minus:
            im += (c_plus - c_minus) * sin_r
    if k % 2 == 0 and k > 1:
        re -= int(block[k // 2])
    return re, im


def a_exact(n: int, K: int, precision: int | None = None) -> RademacherResult:
    """Partial sum over 1 <= k <= K of the exact formula for a(n).

    Blocks are accumulated in ascending k; the result is a deterministic
    function of (n, K, precision).
    """
    if n < 1:
        raise ValueError("a_exact needs n >= 1")
    if K < 1:
        raise ValueError("K must be >= 1")
    if precision is None:
        precision = default_precision(n)
    if precision < 64:
        raise ValueError("precision must be >= 64 bits")
    ks, hs, ts = omega24_phase_table(K)
    counts = _accel.residue_counts(n, ks, hs, ts, K)
    offsets = _accel.block_offsets(K)
    bits = precision + GUARD_BITS
    with mpmath.workprec(bits):
        arg = 4 * mpmath.pi * mpmath.sqrt(n)
        re_total = mpmath.mpf(0)
        im_total = mpmath.mpf(0)
        for k in range(1, K + 1):
            block = counts[offsets[k] : offsets[k] + k]
            if not block.any():
                continue
            re_k, im_k = _block_sums(block, k, bits)
            bessel = bessel_I13(arg / k, bits)
            re_total += re_k * bessel / k
            im_total += im_k * bessel / k
        scale = 2 * mpmath.pi / mpmath.power(n, mpmath.mpf(13) / 2)
        approx = scale * re_total
        imag = scale * im_total
    if abs(imag) >= mpmath.ldexp(1, -(precision // 2)):
        raise ArithmeticError(f"imaginary part {mpmath.nstr(imag, 5)} of the a({n}) sum did not cancel")
    with mpmath.workprec(precision):
        approx = +approx
        rounded = int(mpmath.nint(approx))
        residual = abs(approx - rounded)
    # with too few fractional bits the residual is meaningless (it reads 0)
    room = precision - int(mpmath.mag(approx)) if approx else precision
    status = "resolved" if residual < RESOLVE_TOLERANCE and room >= FRACTION_BITS else "unresolved"
    return RademacherResult(n, K, precision, approx, rounded, residual, +imag, status)


def a_resolved(n: int, K: int = 16, precision: int | None = None, max_terms: int = 4096) -> RademacherResult:
    """Doubling policy: accept the 2K result once K and 2K round to the same
    integer and the 2K residual is below 1e-3."""
    while K <= max_terms:
        first = a_exact(n, K, precision)
        second = a_exact(n, 2 * K, precision)
        if first.resolved and second.rounded == first.rounded and second.residual < DOUBLING_TOLERANCE:
            return second
        K *= 2
    raise ArithmeticError(f"a({n}) not resolved with up to {max_terms} terms; raise the precision")
