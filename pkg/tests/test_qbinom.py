from math import comb

import pytest

from kohlab import qbinom
from kohlab.qbinom import classify_strict, even_strict_increase, gauss_box, qbin, strict_exceptions
from kohlab.qpoly import ONE, ZERO, range_poly
from oracles import box_partition_counts, gauss_by_product

NINE = {(5, 6), (5, 10), (5, 14), (6, 6), (6, 7), (6, 9), (6, 11), (6, 13), (7, 10)}


@pytest.mark.parametrize("n", [0, 1, 5])
def test_empty_box(n):
    assert gauss_box(0, n) == ONE


def test_two_by_two():
    assert list(gauss_box(2, 2).coeffs) == box_partition_counts(2, 2) == [1, 1, 2, 1, 1]


def test_three_by_four():
    p = gauss_box(3, 4)
    assert sum(p.coeffs) == comb(7, 3) == 35
    assert p.degree == 12
    assert p.coeffs == p.coeffs[::-1]
    assert list(p.coeffs) == box_partition_counts(3, 4)


def test_gauss_rejects_negative():
    with pytest.raises(ValueError):
        gauss_box(-1, 3)


@pytest.mark.parametrize("m", range(0, 9))
@pytest.mark.parametrize("n", range(0, 9))
def test_matches_box_enumeration(m, n):
    assert list(gauss_box(m, n).coeffs) == box_partition_counts(m, n)


@pytest.mark.parametrize("m,n", [(3, 5), (4, 4), (6, 7), (9, 9)])
def test_matches_product_formula(m, n):
    assert list(gauss_box(m, n).coeffs) == gauss_by_product(m, n)


def test_symmetry_in_box_dimensions():
    for m in range(13):
        for n in range(13):
            assert gauss_box(m, n) == gauss_box(n, m)


def test_pascal_recurrence():
    for m in range(1, 13):
        for n in range(1, 13):
            assert gauss_box(m, n) == gauss_box(m - 1, n) + gauss_box(m, n - 1).shift(m)


def test_value_at_one():
    for m in range(13):
        for n in range(13):
            assert gauss_box(m, n).evaluate(1) == comb(m + n, m)


def test_qbin_examples():
    d = 4
    assert qbin(3 * d + 1, 1) == range_poly(3 * d)
    assert len(qbin(13, 1).coeffs) == 13
    assert qbin(2, 5) == ZERO
    assert list(qbin(5, 2).coeffs) == box_partition_counts(2, 3) == [1, 1, 2, 2, 2, 1, 1]


@pytest.mark.parametrize("top,k", [(-1, 0), (-3, 2), (4, -1), (3, 4)])
def test_qbin_zero_convention(top, k):
    assert qbin(top, k) == ZERO


def test_qbin_k_zero_is_one():
    assert qbin(0, 0) == ONE
    assert qbin(7, 0) == ONE


def test_classify_examples():
    assert classify_strict(2, 2)
    assert not classify_strict(5, 6)
    p = gauss_box(5, 7)
    assert all(p[i - 1] < p[i] for i in range(2, 35 // 2 + 1))
    assert classify_strict(5, 7)


@pytest.mark.parametrize("b,c", [(1, 3), (3, 2), (0, 0)])
def test_classify_rejects_out_of_range(b, c):
    with pytest.raises(ValueError):
        classify_strict(b, c)


def test_classify_scan_to_twenty():
    assert set(strict_exceptions(20, 20)) == NINE


def test_even_strict_increase_examples():
    assert even_strict_increase(3, 4)
    for n in range(4, 10):
        assert not even_strict_increase(1, n)
    assert even_strict_increase(5, 6)


@pytest.mark.parametrize("b,c", sorted(NINE))
def test_exceptional_pairs_still_increase_in_even_degrees(b, c):
    assert not classify_strict(b, c)
    assert even_strict_increase(b, c)


def test_cache_cap_stops_growth_without_eviction():
    qbinom.clear_cache()
    qbinom.set_cache_cap(5)
    try:
        p = gauss_box(6, 9)
        assert len(qbinom._cache) == 5
        assert list(p.coeffs) == box_partition_counts(6, 9)
    finally:
        qbinom.set_cache_cap(qbinom.DEFAULT_CACHE_CAP)
        qbinom.clear_cache()


def test_concurrent_access_is_consistent():
    from concurrent.futures import ThreadPoolExecutor

    qbinom.clear_cache()
    params = [(m, n) for m in range(1, 10) for n in range(1, 25)] * 3
    with ThreadPoolExecutor(8) as pool:
        results = list(pool.map(lambda mn: gauss_box(*mn), params))
    for (m, n), p in zip(params, results):
        assert p.evaluate(1) == comb(m + n, m)
