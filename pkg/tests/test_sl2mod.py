from fractions import Fraction

import pytest
from flint import fmpq
from hypothesis import given, settings, strategies as st

from fusionlab.errors import DomainError, ResourceCapError
from fusionlab.sl2mod import (evaluation, evaluation_tensor, fusion_graded_of, fusion_of,
                              garland_lhs, irrep, is_highest_weight_cyclic, local_weyl,
                              lowering_apply, lowering_operator, lowering_words,
                              parameter_independence, tensor, truncate, verify_cv13_relations)

import oracles


def test_irrep_small():
    V0 = irrep(0)
    assert V0.dim == 1 and V0.op("f", 0).is_zero()
    V1 = irrep(1)
    assert (V1.op("e", 0) @ V1.op("e", 0)).is_zero()
    assert (V1.op("f", 0) @ V1.op("f", 0)).is_zero()
    assert V1.weights == [1, -1]


@pytest.mark.parametrize("k", range(6))
def test_irrep_structure(k):
    V = irrep(k)
    assert V.check_structure() == []
    f = V.op("f", 0)
    v = {0: fmpq(1)}
    for _ in range(k):
        v = f.apply(v)
        assert v
    assert not f.apply(v)


def test_evaluation_scalars():
    V = irrep(1)
    E0 = evaluation(V, 0, 4)
    assert E0.op("f", 1).is_zero() and not E0.op("f", 0).is_zero()
    E1 = evaluation(V, 1, 2)
    assert E1.op("f", 1) == E1.op("f", 0)
    E2 = evaluation(V, 2, 4)
    assert E2.op("f", 3) == E2.op("f", 0).scale(fmpq(8))
    assert E2.op("f", 4).is_zero()


def test_tensor_weights():
    T = evaluation_tensor([1, 1], [0, 1])
    assert T.dim == 4 and sorted(T.weights) == [-2, 0, 0, 2]
    assert T.weight_failures() == []


def test_tensor_single_factor():
    V = evaluation(irrep(2), 3, 2)
    T = tensor([V])
    for x, r in V.generators():
        assert T.op(x, r) == V.op(x, r)


def test_tensor_leibniz():
    T = evaluation_tensor([1, 1, 1], [2, 3, 5])
    img = T.op("f", 1).apply(T.cyclic_vector())
    # f v at one position, v elsewhere; first factor most significant
    assert img == {4: fmpq(2), 2: fmpq(3), 1: fmpq(5)}


def test_repeated_params_rejected():
    with pytest.raises(DomainError):
        evaluation_tensor([1, 1], [1, 1])
    with pytest.raises(DomainError):
        evaluation_tensor([1, 1], [0])


def test_cap():
    with pytest.raises(ResourceCapError):
        evaluation_tensor([3, 3, 3], cap=16)
    with pytest.raises(ResourceCapError):
        local_weyl(5, cap=16)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("FUSIONLAB_DIMENSION_CAP", "8")
    with pytest.raises(ResourceCapError):
        local_weyl(4)


def test_fusion_examples():
    assert fusion_graded_of([1, 1], [0, 1]).graded_dims().to_list() == [3, 1]
    assert fusion_graded_of([3], [0]).graded_dims().to_list() == [4]
    # the brute-force filtration gives [4, 2, 2], not the [4, 2, 1, 1] one might guess
    assert fusion_graded_of([1, 1, 1], [0, 1, 2]).graded_dims().to_list() == [4, 2, 2]


FUSION_CASES = [([1, 1], [0, 1]), ([1, 1, 1], [0, 1, 2]), ([2, 2], [0, 1]), ([2, 1], [0, 3]),
                ([1, 2, 1], [1, -1, Fraction(1, 2)]), ([1, 1, 1, 1], [0, 1, 2, 3]),
                ([3, 2], [0, 1]), ([2, 2, 1], [0, 1, -1])]


@pytest.mark.parametrize("ks,params", FUSION_CASES)
def test_fusion_matches_oracle(ks, params):
    filt = fusion_graded_of(ks, params)
    assert filt.defect == 0
    assert filt.graded_dims().to_list() == oracles.fusion_graded_dims(ks, params)


@pytest.mark.parametrize("ks", [[1, 1], [1, 1, 1], [2, 1], [2, 2, 1]])
def test_fusion_module_structure(ks):
    F = fusion_of(ks)
    assert F.check_structure() == []
    assert is_highest_weight_cyclic(F)
    assert F.graded_dims().to_list() == oracles.fusion_graded_dims(ks, range(len(ks)))


@pytest.mark.parametrize("m", range(0, 7))
def test_local_weyl_q_binomial(m):
    W = local_weyl(m)
    assert W.graded_dims().to_list() == (oracles.local_weyl_graded_dims(m) or [1])
    assert W.dim == 2 ** m


def test_local_weyl_small():
    assert local_weyl(0).dim == 1
    W = local_weyl(2)
    assert W.dim == 4 and W.graded_dims().to_list() == [3, 1]


def test_truncate_examples():
    assert truncate(local_weyl(2), 1).dim == 3
    W = local_weyl(3)
    T = truncate(W, 5)
    assert T.dim == W.dim and T.kernel_dim == 0


@pytest.mark.parametrize("k,N,j", [(1, 2, 0), (1, 2, 1), (1, 3, 0), (2, 2, 0), (0, 3, 2), (1, 3, 1),
                                   (2, 3, 0), (1, 4, 0)])
def test_truncated_dims(k, N, j):
    T = truncate(local_weyl(k * N + j), N)
    assert T.dim == (k + 1) ** (N - j) * (k + 2) ** j
    assert T.check_structure() == []
    F = fusion_graded_of([k] * (N - j) + [k + 1] * j)
    assert T.weight_graded_dims() == F.weight_graded_dims()


def test_truncate_rejects():
    with pytest.raises(DomainError):
        truncate(irrep(2), 1)
    with pytest.raises(DomainError):
        truncate(local_weyl(2), 0)


def test_lowering_words():
    assert lowering_words(1, 3) == [(0, 0, 0, 1)]
    assert lowering_words(2, 1) == [(1, 1)]
    assert lowering_words(0, 0) == [(0,)]
    assert lowering_words(0, 2) == []


def test_lowering_identity_and_zero():
    M = fusion_of([1, 1])
    v = M.cyclic_vector()
    assert lowering_apply(M, 0, 0, v) == v
    assert lowering_operator(M, 0, 1).is_zero()


def test_top_power_kills():
    M = fusion_of([1, 1, 1])
    v = M.cyclic_vector()
    f = M.op("f", 0)
    for _ in range(4):
        v = f.apply(v)
    assert not v


def test_garland_v1v1():
    M = fusion_of([1, 1])
    v = M.cyclic_vector()
    assert garland_lhs(M, 1, 1, v) == {i: -c for i, c in lowering_apply(M, 1, 1, v).items()}


@pytest.mark.parametrize("k,N,j", [(1, 2, 0), (1, 3, 0), (2, 2, 1), (0, 4, 3)])
def test_relations_and_garland(k, N, j):
    rep = verify_cv13_relations(k, N, j)
    assert rep.ok and rep.checked and rep.garland_checked


def test_parameter_independence():
    rep = parameter_independence(1, 3, 0, [[0, 1, 2], [0, 1, -5]])
    assert rep.ok
    assert parameter_independence(3, 1, 0).ok
    assert parameter_independence(2, 2, 1, seed=7).ok


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=3),
       st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=7), min_size=3,
                max_size=3, unique=True))
def test_fusion_dimension_and_oracle(ks, params):
    params = params[:len(ks)]
    filt = fusion_graded_of(ks, params)
    total = 1
    for k in ks:
        total *= k + 1
    assert filt.graded_dims().total == total
    assert filt.graded_dims().to_list() == oracles.fusion_graded_dims(ks, params)
