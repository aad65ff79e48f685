import pytest

from k3vw.qseries import (
    CoefficientTable,
    TableUnderflow,
    eta_inv24_oracle,
    eta_inv24_table,
    partition_numbers,
    shared_table,
    sigma1,
)


@pytest.mark.parametrize("n, expected", [(1, 1), (6, 12), (12, 28), (97, 98)])
def test_sigma1(n, expected):
    assert sigma1(n) == expected


@pytest.mark.parametrize("n", [0, -3])
def test_sigma1_rejects_nonpositive(n):
    with pytest.raises(ValueError):
        sigma1(n)


def test_anchor_values():
    t = eta_inv24_table(0)
    assert t[-1] == 1
    assert t[0] == 24


def test_first_values_against_oracle():
    assert eta_inv24_table(1)[1] == eta_inv24_oracle(1)[1]


def test_table_matches_oracle_500():
    assert eta_inv24_table(500, "recurrence") == eta_inv24_oracle(500)


@pytest.mark.parametrize("n_max", [0, 1, 7, 255, 256, 1200])
def test_methods_agree(n_max):
    assert eta_inv24_table(n_max, "kronecker") == eta_inv24_table(n_max, "recurrence")


def test_unknown_method():
    with pytest.raises(ValueError):
        eta_inv24_table(5, "fft")


def test_negative_n_max_rejected():
    with pytest.raises(ValueError):
        eta_inv24_table(-1)
    with pytest.raises(ValueError):
        eta_inv24_oracle(-1)


def test_partition_numbers():
    p = partition_numbers(100)
    assert p[:8] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert p[100] == 190569292


def test_partition_numbers_against_part_counting():
    # count partitions by largest part, independent of the pentagonal recurrence
    top = 80
    ways = [1] + [0] * top
    for part in range(1, top + 1):
        for m in range(part, top + 1):
            ways[m] += ways[m - part]
    assert partition_numbers(top) == ways


def test_positive_and_increasing(table):
    vals = [table[n] for n in range(-1, table.n_max + 1)]
    assert all(v > 0 for v in vals)
    assert all(b > a for a, b in zip(vals[1:], vals[2:]))


def test_indexing_contract():
    t = eta_inv24_table(10)
    assert t[-2] == 0 and t[-100] == 0
    with pytest.raises(TableUnderflow):
        t[11]
    assert len(t) == 12
    assert list(t.items())[:2] == [(-1, 1), (0, 24)]
    assert t.truncate(3) == eta_inv24_table(3)
    with pytest.raises(TableUnderflow):
        t.truncate(20)


def test_table_is_immutable():
    t = eta_inv24_table(3)
    with pytest.raises(AttributeError):
        t.n_max = 5
    with pytest.raises(ValueError):
        CoefficientTable(3, (1, 24))


def test_shared_table_grows_and_keeps_values():
    small = shared_table(10)
    big = shared_table(small.n_max + 1)
    assert big.n_max > small.n_max
    assert big.values[: len(small)] == small.values
