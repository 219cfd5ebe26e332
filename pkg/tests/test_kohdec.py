import pytest

from kohlab.kohdec import (
    Partition,
    closed_form_lambda,
    closed_form_mu,
    enumerate_partitions,
    expand_d3,
    koh_sum,
    koh_term,
    koh_terms,
    lambda_family,
    lambda_indices,
    lambda_j_max,
    mu_family,
    mu_i_max,
    partial_sums,
    sum_polys,
)
from kohlab.qbinom import gauss_box, qbin
from kohlab.qpoly import ONE, block, range_poly, truncate, truncated_first_difference, unimodality_report
from oracles import all_partitions_bruteforce, box_partition_counts, partition_count


def parts(ps):
    return [p.parts for p in ps]


# -- partitions ------------------------------------------------------------------------


def test_partitions_of_one_and_three():
    assert parts(enumerate_partitions(1)) == [(1,)]
    assert parts(enumerate_partitions(3)) == [(3,), (2, 1), (1, 1, 1)]


def test_partition_count_ten():
    assert partition_count(10) == 42
    assert len(enumerate_partitions(10)) == 42


@pytest.mark.parametrize("m", range(1, 16))
def test_partitions_complete_unique_and_ordered(m):
    got = parts(enumerate_partitions(m))
    assert len(got) == len(set(got)) == partition_count(m)
    assert set(got) == all_partitions_bruteforce(m)
    assert got == sorted(got, reverse=True)


def test_partitions_reject_nonpositive():
    with pytest.raises(ValueError):
        enumerate_partitions(0)


def test_partition_validates_shape():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_partial_sums():
    assert partial_sums(Partition((2, 1)), 4) == [0, 2, 3, 3, 3]
    assert partial_sums(Partition((3,)), 3) == [0, 3, 3, 3]
    assert partial_sums(Partition((1, 1, 1)), 5) == [0, 1, 2, 3, 3, 3]


# -- KOH terms -------------------------------------------------------------------------


@pytest.mark.parametrize("d", [4, 5, 8, 11])
def test_koh_terms_for_three(d):
    t3, t21, t111 = koh_terms(3, d)
    assert t3.value == qbin(d - 1, 3).shift(6)
    assert t21.value == (qbin(d - 1, 1) * qbin(2 * d - 1, 1)).shift(2)
    assert t111.value == qbin(3 * d + 1, 1)
    assert t3.exponent == 6 and t21.exponent == 2 and t111.exponent == 0
    assert t111.factors == ((d, 0), (2 * d, 0), (3 * d + 1, 1))


def test_koh_sum_examples():
    assert koh_sum(3, 8) == gauss_box(3, 8)
    for n in range(0, 12):
        assert koh_sum(1, n) == range_poly(n)
    assert koh_sum(6, 4) == gauss_box(6, 4)
    assert list(koh_sum(6, 4).coeffs) == box_partition_counts(6, 4)


def test_koh_identity_grid():
    for m in range(1, 11):
        for n in range(0, 11):
            assert koh_sum(m, n) == gauss_box(m, n), (m, n)


def test_koh_sum_threaded_matches_serial():
    assert koh_sum(8, 7, jobs=4) == koh_sum(8, 7)


def test_each_koh_term_symmetric_nonnegative_unimodal():
    for m in range(1, 9):
        for n in range(0, 9):
            for t in koh_terms(m, n):
                if not t.value:
                    continue
                rep = unimodality_report(t.value, degree=m * n)
                assert rep.ok, (t.partition, n, rep)
                assert t.value.degree <= m * n


# -- lambda^{i,j} ----------------------------------------------------------------------


def test_lambda_family_examples():
    assert lambda_family(6, 4, 1, 1).parts == (3, 2, 1)
    assert lambda_family(9, 4, 1, 1).parts == (3, 2, 1, 1, 1, 1)
    assert lambda_j_max(9, 4, 2) == 1
    assert lambda_family(9, 4, 2, 1).parts == (3, 3, 2, 1)
    with pytest.raises(ValueError):
        lambda_family(9, 4, 2, 2)


@pytest.mark.parametrize("args", [(7, 4, 1, 1), (6, 3, 1, 1), (6, 4, 0, 1), (6, 4, 2, 1), (6, 4, 1, 0)])
def test_lambda_family_rejects(args):
    with pytest.raises(ValueError):
        lambda_family(*args)


def test_lambda_j_bound_is_exact_integer_floor():
    from fractions import Fraction
    from math import floor

    for b in range(6, 40, 3):
        for c in range(4, 12):
            for i in range(1, (b - 3) // 3 + 1):
                exact = floor(Fraction(b, 2) - Fraction(2 * i * (c - 1), c))
                assert lambda_j_max(b, c, i) == exact


def test_lambda_family_shape():
    for b in range(6, 25, 3):
        for c in range(4, 11):
            for i, j in lambda_indices(b, c):
                lam = lambda_family(b, c, i, j)
                assert lam.weight == b
                assert len(lam) == b - 2 * i - j
                assert (lam.multiplicity(3), lam.multiplicity(2)) == (i, j)


def test_lambda_family_has_all_three_part_sizes_for_c_above_four():
    for b in range(6, 31, 3):
        for c in range(5, 11):
            for i, j in lambda_indices(b, c):
                assert set(lambda_family(b, c, i, j).parts) == {1, 2, 3}


def test_lambda_family_without_ones_at_c_four():
    # j may reach (b - 3i)/2 when c = 4, leaving no part equal to 1
    found = [(b, i, j) for b in range(6, 25, 3) for i, j in lambda_indices(b, 4)
             if 1 not in lambda_family(b, 4, i, j).parts]
    assert found == [(b, i, (b - 3 * i) // 2) for b in range(6, 25, 3)
                     for i in range(1, (b - 3) // 3 + 1) if (b - 3 * i) % 2 == 0 and (b - 3 * i) // 2 >= 1]
    assert (9, 1, 3) in found


def test_closed_form_lambda_example():
    expected = (qbin(1, 1) * qbin(3, 1) * qbin(7, 1)).shift(8)
    assert closed_form_lambda(6, 4, 1, 1) == expected
    assert koh_term(Partition((3, 2, 1)), 4).value == expected


def test_closed_form_lambda_matches_generic_term_when_a_one_is_present():
    for b in range(6, 19, 3):
        for c in range(4, 9):
            for i, j in lambda_indices(b, c):
                lam = lambda_family(b, c, i, j)
                if 1 in lam.parts:
                    assert closed_form_lambda(b, c, i, j) == koh_term(lam, c).value, (b, c, i, j)


def test_closed_form_lambda_differs_when_no_one_is_present():
    # lambda = (3, 2, 2, 2) at b=9, c=4: the last factor is [8 choose 2]_q
    lam = lambda_family(9, 4, 1, 3)
    assert lam.parts == (3, 2, 2, 2)
    generic = koh_term(lam, 4).value
    assert generic == (qbin(1, 1) * qbin(8, 2)).shift(12)
    assert closed_form_lambda(9, 4, 1, 3) != generic


def test_closed_form_lambda_first_difference():
    for b in range(6, 25, 3):
        for c in range(4, 11):
            half = b * c // 2
            for i, j in lambda_indices(b, c):
                got = truncated_first_difference(closed_form_lambda(b, c, i, j), b * c)
                expected = range_poly(c * i - 4 * i) * block(6 * i + 2 * j, c * i + 2 * i + c * j)
                assert got == truncate(expected, half), (b, c, i, j)


# -- mu^i ------------------------------------------------------------------------------


def test_mu_family_examples():
    assert mu_family(6, 1).parts == (2, 1, 1, 1, 1)
    assert mu_family(6, 2).parts == (2, 2, 1, 1)
    assert mu_i_max(6) == 2
    with pytest.raises(ValueError):
        mu_family(6, 3)
    with pytest.raises(ValueError):
        mu_family(6, 0)


def test_mu_first_difference_example():
    assert truncated_first_difference(closed_form_mu(6, 4, 1), 24) == block(2, 4)


def test_mu_closed_form_and_first_difference_grid():
    for b in range(1, 25):
        for c in range(1, 11):
            for i in range(1, mu_i_max(b) + 1):
                cf = closed_form_mu(b, c, i)
                assert cf == koh_term(mu_family(b, i), c).value
                assert truncated_first_difference(cf, b * c) == block(2 * i, c * i)


# -- expansion of [d+3 choose 3]_q -----------------------------------------------------


def test_expand_d3_small():
    terms = expand_d3(3, 4)
    assert len(terms) == 3
    assert sum_polys(terms) == gauss_box(3, 4)
    assert terms == [qbin(3, 3).shift(6), (qbin(3, 1) * qbin(7, 1)).shift(2), qbin(13, 1)]


def test_expand_d3_six_four():
    terms = expand_d3(6, 4)
    assert len(terms) == 5
    assert terms[0] == ONE.shift(12)
    assert sum_polys(terms) == gauss_box(3, 8)


def test_expand_d3_rejects_b_not_multiple_of_three():
    with pytest.raises(ValueError):
        expand_d3(4, 4)


def test_expand_d3_identity_grid():
    for b in range(3, 25, 3):
        for c in range(4, 11):
            assert sum_polys(expand_d3(b, c)) == gauss_box(3, b * c // 3), (b, c)


def test_expand_d3_head_is_the_all_threes_term():
    for b in range(3, 25, 3):
        for c in range(4, 11):
            threes = Partition((3,) * (b // 3))
            assert expand_d3(b, c)[0] == koh_term(threes, c).value
