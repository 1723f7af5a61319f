from fractions import Fraction

from flint import fmpq
from hypothesis import given, settings, strategies as st

from fusionlab.linalg import (EchelonBasis, SparseMatrix, dense_from_vectors, rank_of_vectors,
                              rref)

import oracles

small = st.integers(-3, 3)


def _dense(rows, n):
    return [{j: fmpq(c) for j, c in enumerate(r) if c} for r in rows]


@settings(deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=0, max_size=7)))
def test_rank_matches_oracle(rows):
    n = len(rows[0]) if rows else 1
    want = oracles.rank([[Fraction(c) for c in r] for r in rows])
    assert rank_of_vectors(_dense(rows, n), n) == want


@settings(deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=1, max_size=7)))
def test_rref_pivots(rows):
    n = len(rows[0])
    R, piv = rref(dense_from_vectors(_dense(rows, n), n))
    assert R.nrows() == len(piv) == oracles.rank([[Fraction(c) for c in r] for r in rows])
    assert piv == sorted(piv)
    for a, p in enumerate(piv):
        assert R[a, p] == 1


@settings(deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=1, max_size=8)))
def test_echelon_incremental(rows):
    n = len(rows[0])
    B = EchelonBasis(n)
    for i, r in enumerate(rows):
        B.add_rows(_dense([r], n))
        assert B.dim == oracles.rank([[Fraction(c) for c in x] for x in rows[:i + 1]])
    for r in rows:
        assert B.contains(_dense([r], n)[0])


def test_extend_coefficients():
    B = EchelonBasis(3)
    B.add_rows([{0: fmpq(1)}])
    from fusionlab.linalg import dense_columns
    C = dense_columns([{0: fmpq(2), 1: fmpq(1)}, {1: fmpq(3)}, {2: fmpq(1)}], 3)
    sel, coeffs = B.extend(C)
    assert sel == [0, 2]
    assert coeffs[1] == {0: fmpq(3)}
    assert B.dim == 3


def test_sparse_algebra():
    A = SparseMatrix(2, 2, {0: {1: fmpq(1)}})
    I = SparseMatrix.identity(2)
    assert A @ I == A and I @ A == A
    assert (A @ A).is_zero()
    assert (A + A) == A.scale(fmpq(2))
    assert (A - A).is_zero()
    assert A.entry(1, 0) == 1 and A.entry(0, 1) == 0
    assert SparseMatrix.diagonal([1, 0]).nnz() == 1
    assert A.to_rows() == [[0, 0], [1, 0]]
