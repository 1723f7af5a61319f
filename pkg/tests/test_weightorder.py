import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fusionlab.errors import DomainError
from fusionlab.rootsys import build_root_system, pairing
from fusionlab.weightorder import (Order, WeightTuple, check_unique_maximum, compare,
                                   enumerate_tuples, expected_maximum, maximal_elements,
                                   r_beta_k, r_beta_k_bruteforce, sl2_expected_maximum, wtuple)

import oracles

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)


def test_r_examples():
    t = wtuple(3, 0)
    assert r_beta_k(t, (1,), 1, A1) == 0
    assert r_beta_k(t, (1,), 2, A1) == 3


@pytest.mark.parametrize("k,N,j", [(k, N, j) for k in range(3) for N in range(1, 5) for j in range(N)])
def test_r_closed_form(k, N, j):
    t = sl2_expected_maximum(k * N + j, N)
    for kk in range(1, N + 1):
        assert r_beta_k(t, (1,), kk, A1) == kk * k + max(0, kk - (N - j))


@settings(deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=5))
def test_r_matches_subsets(entries):
    t = WeightTuple(tuple(entries))
    for beta in A2.positive_roots:
        vals = [pairing(A2, e, beta) for e in t.entries]
        for k in range(1, t.N + 1):
            assert r_beta_k(t, beta, k, A2) == oracles.r_beta_k(vals, k)
            assert r_beta_k_bruteforce(t, beta, k, A2) == oracles.r_beta_k(vals, k)


def test_r_full_is_total():
    t = WeightTuple(((1, 2), (0, 3), (2, 0)))
    for beta in A2.positive_roots:
        assert r_beta_k(t, beta, 3, A2) == pairing(A2, t.sum, beta)


def test_compare_examples():
    assert compare(wtuple(3, 0), wtuple(2, 1), A1) == Order.LE
    t = WeightTuple(((1, 0), (0, 2), (1, 1)))
    for perm in itertools.permutations(t.entries):
        assert compare(t, WeightTuple(perm), A2) == Order.EQ
    # frozen verdict from subset minima: r = (0,2 | 0,2 | 2,4) vs (1,2 | 1,2 | 2,4)
    a = WeightTuple(((2, 0), (0, 2)))
    b = WeightTuple(((1, 1), (1, 1)))
    assert compare(a, b, A2) == Order.LE


def test_compare_rejects():
    with pytest.raises(DomainError):
        compare(wtuple(3, 0), wtuple(2, 0), A1)
    with pytest.raises(DomainError):
        compare(wtuple(3, 0), wtuple(1, 1, 1), A1)


def test_enumerate_partitions():
    # tuples of non-negative integers summing to m, up to order, are partitions of m into <= N parts
    assert len(enumerate_tuples((6,), 3)) == 7
    assert len(enumerate_tuples((8,), 4)) == 15


def test_enumerate_a2_bruteforce():
    lam, N = (2, 2), 3
    pts = [(a, b) for a in range(3) for b in range(3)]
    brute = {tuple(sorted(c)) for c in itertools.product(pts, repeat=N)
             if tuple(map(sum, zip(*c))) == lam}
    got = {tuple(e.coeffs for e in t.entries) for t in enumerate_tuples(lam, N)}
    assert got == brute


@pytest.mark.parametrize("m,N", [(m, N) for m in range(9) for N in range(1, 5)])
def test_sl2_unique_maximum(m, N):
    maxima = maximal_elements((m,), N, A1)
    assert len(maxima) == 1
    assert maxima[0] == sl2_expected_maximum(m, N).canonical()


def test_single_entry():
    assert maximal_elements((2, 1), 1, A2) == [WeightTuple(((2, 1),))]


def test_a2_unique_maximum():
    rep = check_unique_maximum((3, 3), 3, A2)
    assert rep.ok
    assert rep.expected.as_lists() == [[1, 1], [1, 1], [1, 1]]
    assert expected_maximum((1, 1), 2, A2) is None
