"""Integer kernels with a numba path and a pure-numpy fallback.

Set ``VW_DISABLE_NUMBA=1`` to force the numpy implementations (the numba
ones are also skipped when numba cannot be imported).  Both paths return
identical int64 arrays; the test-suite checks this.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("VW_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

_JIT_OPTIONS = dict(cache=True, nogil=True)


# -- loop kernels (compiled by numba when available) -------------------------

def _sigma1_sieve_loop(n):
    out = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        for m in range(d, n + 1, d):
            out[m] += d
    return out


def _phase_table_loop(K):
    total = K * (K + 1) // 2
    ks = np.empty(total, dtype=np.int64)
    hs = np.empty(total, dtype=np.int64)
    ts = np.empty(total, dtype=np.int64)
    m = 0
    for k in range(1, K + 1):
        for h in range(k):
            # extended Euclid: s0*h == r0 (mod k)
            r0, r1 = k, h
            s0, s1 = 0, 1
            while r1 != 0:
                q = r0 // r1
                r0, r1 = r1, r0 - q * r1
                s0, s1 = s1, s0 - q * s1
            if r0 != 1 and k != 1:
                continue
            ks[m] = k
            hs[m] = h
            ts[m] = (h + s0 % k) % k
            m += 1
    return ks[:m], hs[:m], ts[:m]


def _residue_counts_loop(n, ks, hs, ts, offsets, total):
    counts = np.zeros(total, dtype=np.int64)
    for i in range(ks.shape[0]):
        k = ks[i]
        shift = (n + 1) % k
        r = (ts[i] - shift * hs[i]) % k
        counts[offsets[k] + r] += 1
    return counts


# -- numpy fallbacks ---------------------------------------------------------

def _sigma1_sieve_numpy(n):
    out = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        out[d::d] += d
    return out


def _inverse_mod_numpy(h, k):
    r0, r1 = k.copy(), h.copy()
    s0, s1 = np.zeros_like(k), np.ones_like(k)
    live = r1 != 0
    while live.any():
        q = np.where(live, r0 // np.where(live, r1, 1), 0)
        r0, r1 = np.where(live, r1, r0), np.where(live, r0 - q * r1, r1)
        s0, s1 = np.where(live, s1, s0), np.where(live, s0 - q * s1, s1)
        live = r1 != 0
    return s0 % k, r0


def _phase_table_numpy(K):
    sizes = np.arange(1, K + 1, dtype=np.int64)
    ks = np.repeat(sizes, sizes)
    starts = np.repeat(np.cumsum(sizes) - sizes, sizes)
    hs = np.arange(ks.shape[0], dtype=np.int64) - starts
    inv, g = _inverse_mod_numpy(hs, ks)
    keep = (g == 1) | (ks == 1)
    ks, hs, inv = ks[keep], hs[keep], inv[keep]
    return ks, hs, (hs + inv) % ks


def _residue_counts_numpy(n, ks, hs, ts, offsets, total):
    shift = (n + 1) % ks
    idx = offsets[ks] + (ts - shift * hs) % ks
    return np.bincount(idx, minlength=total).astype(np.int64)


def _build(name):
    if name == "numpy":
        return SimpleNamespace(
            name="numpy",
            sigma1_sieve=_sigma1_sieve_numpy,
            phase_table=_phase_table_numpy,
            residue_counts=_residue_counts_numpy,
        )
    if name == "numba":
        if numba is None:
            raise RuntimeError("numba is not importable")
        return SimpleNamespace(
            name="numba",
            sigma1_sieve=numba.njit(**_JIT_OPTIONS)(_sigma1_sieve_loop),
            phase_table=numba.njit(**_JIT_OPTIONS)(_phase_table_loop),
            residue_counts=numba.njit(**_JIT_OPTIONS)(_residue_counts_loop),
        )
    raise ValueError(f"unknown backend {name!r}")


_BACKENDS: dict[str, SimpleNamespace] = {}


def backend(name: str | None = None) -> SimpleNamespace:
    """Return the kernel namespace for ``name`` (default: the active one)."""
    if name is None:
        name = BACKEND
    if name not in _BACKENDS:
        _BACKENDS[name] = _build(name)
    return _BACKENDS[name]


BACKEND = "numpy" if (_DISABLED or numba is None) else "numba"


def sigma1_sieve(n: int) -> np.ndarray:
    """sigma_1(m) for 0 <= m <= n as an int64 array (entry 0 is 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return backend().sigma1_sieve(int(n))


def phase_table(K: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All coprime pairs 0 <= h < k <= K with the numerator t of 12 s(h, k) mod 1.

    The phase of omega_{h,k}^24 is exp(2 pi i t / k).  Rows are ordered by
    k ascending, then h ascending.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    return backend().phase_table(int(K))


def block_offsets(K: int) -> np.ndarray:
    """offsets[k] = start of the length-k residue block for modulus k."""
    sizes = np.arange(0, K + 1, dtype=np.int64)
    return np.cumsum(sizes) - sizes


def residue_counts(n: int, ks, hs, ts, K: int) -> np.ndarray:
    """Histogram of (t - (n+1) h) mod k, one length-k block per modulus."""
    offsets = block_offsets(K)
    total = K * (K + 1) // 2
    return backend().residue_counts(int(n), ks, hs, ts, offsets, total)
