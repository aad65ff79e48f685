"""Exact Fourier coefficients a(n) of eta(q)^-24 = q^-1 prod_{m>=1} (1 - q^m)^-24."""
from __future__ import annotations

import operator
import threading
from dataclasses import dataclass
from math import isqrt

import gmpy2

from ._accel import sigma1_sieve


class TableUnderflow(IndexError):
    """Raised when a coefficient beyond the table's n_max is requested."""


@dataclass(frozen=True)
class CoefficientTable:
    """Immutable table of a(n) for -1 <= n <= n_max.

    Indices below -1 read as exact zero; indices above n_max raise
    :class:`TableUnderflow`.
    """

    n_max: int
    values: tuple[int, ...]  # values[i] == a(i - 1)

    def __post_init__(self):
        if len(self.values) != self.n_max + 2:
            raise ValueError("values must cover -1..n_max")

    def __getitem__(self, n: int) -> int:
        if n < -1:
            return 0
        if n > self.n_max:
            raise TableUnderflow(f"a({n}) requested but table stops at n_max={self.n_max}")
        return self.values[n + 1]

    def __len__(self) -> int:
        return len(self.values)

    def items(self):
        return zip(range(-1, self.n_max + 1), self.values)

    def truncate(self, n_max: int) -> "CoefficientTable":
        if n_max > self.n_max:
            raise TableUnderflow(f"cannot truncate table of n_max={self.n_max} to {n_max}")
        return CoefficientTable(n_max, self.values[: n_max + 2])


def sigma1(n: int) -> int:
    """Sum of the positive divisors of n."""
    if n <= 0:
        raise ValueError(f"sigma1 needs n >= 1, got {n}")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            e = n // d
            total += d if d == e else d + e
    return total


def _recurrence(n_max: int, coeffs: list[int] | None = None) -> list[int]:
    # c(m) = [q^m] prod (1-q^j)^-24 from m c(m) = 24 sum_{k=1}^m sigma1(k) c(m-k)
    top = n_max + 1
    sig = sigma1_sieve(top).tolist()
    c = [1] if coeffs is None else list(coeffs)
    for m in range(len(c), top + 1):
        acc = sum(map(operator.mul, sig[1 : m + 1], reversed(c)))
        q, r = divmod(24 * acc, m)
        assert r == 0
        c.append(q)
    return c


def partition_numbers(top: int) -> list[int]:
    """p(0..top) from Euler's pentagonal recurrence."""
    p = [1] + [0] * top
    pent = []
    k = 1
    while k * (3 * k - 1) // 2 <= top:
        sign = 1 if k % 2 else -1
        pent.append((k * (3 * k - 1) // 2, sign))
        pent.append((k * (3 * k + 1) // 2, sign))
        k += 1
    for m in range(1, top + 1):
        acc = 0
        for e, sign in pent:
            if e > m:
                break
            acc = acc + p[m - e] if sign > 0 else acc - p[m - e]
        p[m] = acc
    return p


def _pack(coeffs: list[int], slot: int):
    return gmpy2.mpz(int.from_bytes(b"".join(c.to_bytes(slot, "little") for c in coeffs), "little"))


def _kronecker_mul(a: list[int], b: list[int], top: int) -> list[int]:
    # truncated product of two series with nonnegative coefficients via one big multiplication
    bits = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length() + 1
    slot = (bits + 7) // 8
    prod = int(_pack(a[: top + 1], slot) * _pack(b[: top + 1], slot))
    raw = prod.to_bytes(slot * (top + 1) + slot * (top + 2), "little")
    return [int.from_bytes(raw[i * slot : (i + 1) * slot], "little") for i in range(top + 1)]


def _kronecker(n_max: int) -> list[int]:
    # prod (1-q^m)^-24 = P(q)^24 with P the partition generating function
    top = n_max + 1
    p = partition_numbers(top)
    p2 = _kronecker_mul(p, p, top)
    p4 = _kronecker_mul(p2, p2, top)
    p8 = _kronecker_mul(p4, p4, top)
    p16 = _kronecker_mul(p8, p8, top)
    return _kronecker_mul(p16, p8, top)


# below this size the recurrence is faster than packing
KRONECKER_THRESHOLD = 256


def eta_inv24_table(n_max: int, method: str = "auto") -> CoefficientTable:
    """a(n) for -1 <= n <= n_max.

    ``recurrence`` uses m c(m) = 24 sum sigma1(k) c(m-k); ``kronecker`` raises
    the partition series to the 24th power with packed big-integer products.
    ``auto`` picks by size.  All three return identical exact integers.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if method == "auto":
        method = "kronecker" if n_max >= KRONECKER_THRESHOLD else "recurrence"
    if method == "recurrence":
        return CoefficientTable(n_max, tuple(_recurrence(n_max)))
    if method == "kronecker":
        return CoefficientTable(n_max, tuple(_kronecker(n_max)))
    raise ValueError(f"unknown method {method!r}")


def _pentagonal_terms(limit: int) -> list[tuple[int, int]]:
    """(exponent, sign) pairs of prod (1 - q^m) up to q^limit."""
    terms = [(0, 1)]
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 > limit:
            break
        terms.append((e1, sign))
        if e2 <= limit:
            terms.append((e2, sign))
        k += 1
    return sorted(terms)


def eta_inv24_oracle(n_max: int) -> CoefficientTable:
    """Independent check on :func:`eta_inv24_table`.

    Builds prod (1 - q^m)^24 by multiplying the pentagonal series into itself
    24 times, then inverts that power series over the integers.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    top = n_max + 1
    pent = _pentagonal_terms(top)
    series = [1] + [0] * top
    for _ in range(24):
        nxt = [0] * (top + 1)
        for e, sign in pent:
            if sign > 0:
                for i in range(top + 1 - e):
                    nxt[i + e] += series[i]
            else:
                for i in range(top + 1 - e):
                    nxt[i + e] -= series[i]
        series = nxt
    inv = [1] + [0] * top
    for m in range(1, top + 1):
        inv[m] = -sum(series[k] * inv[m - k] for k in range(1, m + 1))
    return CoefficientTable(n_max, tuple(inv))


_lock = threading.Lock()
_shared = CoefficientTable(0, (1, 24))


def shared_table(n_max: int) -> CoefficientTable:
    """A process-wide table covering at least ``n_max`` (grown on demand)."""
    global _shared
    with _lock:
        if _shared.n_max < n_max:
            # grow geometrically so repeated small extensions stay cheap
            want = max(int(n_max), 2 * _shared.n_max, 64)
            if want >= KRONECKER_THRESHOLD:
                _shared = eta_inv24_table(want, "kronecker")
            else:
                _shared = CoefficientTable(want, tuple(_recurrence(want, list(_shared.values))))
        return _shared
