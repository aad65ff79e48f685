import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from k3vw import _accel
from k3vw.qseries import sigma1

numpy_be = _accel.backend("numpy")
numba_be = _accel.backend("numba")


def test_sigma_sieve_matches_trial_division():
    sieve = numba_be.sigma1_sieve(500)
    assert sieve[0] == 0
    assert [int(x) for x in sieve[1:]] == [sigma1(n) for n in range(1, 501)]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3000))
def test_sigma_backends_agree(n):
    assert np.array_equal(numpy_be.sigma1_sieve(n), numba_be.sigma1_sieve(n))


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 250))
def test_phase_table_backends_agree(K):
    for a, b in zip(numpy_be.phase_table(K), numba_be.phase_table(K)):
        assert a.dtype == b.dtype == np.int64
        assert np.array_equal(a, b)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 120), st.integers(1, 10**6))
def test_residue_counts_backends_agree(K, n):
    ks, hs, ts = numba_be.phase_table(K)
    offsets = _accel.block_offsets(K)
    total = K * (K + 1) // 2
    a = numpy_be.residue_counts(n, ks, hs, ts, offsets, total)
    b = numba_be.residue_counts(n, ks, hs, ts, offsets, total)
    assert np.array_equal(a, b)
    # each block holds phi(k) entries
    assert int(a.sum()) == ks.shape[0]


def test_block_offsets():
    assert _accel.block_offsets(4).tolist() == [0, 0, 1, 3, 6]


def test_unknown_backend():
    with pytest.raises(ValueError):
        _accel.backend("cuda")


def test_env_flag_selects_numpy():
    code = "from k3vw import _accel; print(_accel.BACKEND)"
    env = dict(os.environ, VW_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["VW_DISABLE_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numba"


def test_numpy_fallback_end_to_end():
    code = "from k3vw.rademacher import a_exact; print(a_exact(30, 40, 160).rounded)"
    env = dict(os.environ, VW_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    from k3vw.qseries import shared_table

    assert int(out.stdout) == shared_table(30)[30]
