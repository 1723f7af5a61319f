import pytest

from fusionlab.errors import DomainError
from fusionlab.sl2mod import fusion_of, local_weyl
from fusionlab.toroidal import (BiGradedDims, bigraded_fusion, demazure_left, relation_failures,
                                tN_filtration, ugraded_demazure, verify_theorem1_sl2)

# both sides are computed independently; these are the agreed values
TABLES = {
    (1, 1, 0, 2): {(0, 0): 3, (1, 0): 1},
    (1, 1, 1, 2): {(0, 0): 4, (0, 1): 2, (1, 0): 2},
    (1, 2, 0, 2): {(0, 0): 5, (0, 1): 3, (0, 2): 1, (1, 0): 3, (1, 1): 3, (2, 0): 1},
    (2, 1, 1, 2): {(0, 0): 6, (0, 1): 4, (1, 0): 4, (1, 1): 2, (2, 0): 2},
}


def test_bigraded_dims():
    d = BiGradedDims.from_dict({(0, 0): 3, (1, 0): 1, (2, 5): 0})
    assert d.total == 4 and d.support() == [(0, 0), (1, 0)]
    assert d.to_dict() == {"0,0": 3, "1,0": 1}
    assert d.table() == [[3, 1]]
    assert d.row(0) == [3, 1] and d.row(1) == []


def test_tN_local_weyl_n1():
    assert tN_filtration(local_weyl(2), 1).as_dict() == {(0, 0): 3, (0, 1): 1}


def test_tN_large_N_is_single_column():
    W = local_weyl(3)
    d = tN_filtration(W, 5)
    assert all(j == 0 for _, j in d.support())
    assert d.row(0) == W.graded_dims().to_list()


def test_tN_v1v1():
    assert tN_filtration(fusion_of([1, 1]), 2).as_dict() == {(0, 0): 3, (1, 0): 1}


def test_tN_rejects():
    with pytest.raises(DomainError):
        tN_filtration(fusion_of([1, 1]), 0)


def test_single_factor_keeps_u_grading():
    F = ugraded_demazure(1, 2)
    rf = bigraded_fusion([F], [0], 1, 3)
    assert rf.dims.row(0) == [] or all(s == 0 for s, _ in rf.dims.support())
    assert [rf.dims.as_dict().get((0, j), 0) for j in range(2)] == F.graded_dims().to_list()


def test_two_evaluation_factors():
    F = [ugraded_demazure(1, 1), ugraded_demazure(1, 1)]
    assert bigraded_fusion(F, [0, 1], 2, 2).dims.as_dict() == {(0, 0): 3, (1, 0): 1}


def test_demazure_relations_hold():
    for level, c, lam0, N in [(1, 1, 0, 2), (2, 1, 1, 2), (1, 1, 1, 3)]:
        M = demazure_left(level, c, lam0, N)
        assert relation_failures(M, level, level * N * c + lam0) == []


def test_wrong_weight_fails_relations():
    M = fusion_of([1, 1])
    assert relation_failures(M, 1, 3)


def test_ugraded_rejects():
    with pytest.raises(DomainError):
        ugraded_demazure(1, 1, 2)
    with pytest.raises(DomainError):
        ugraded_demazure(0, 1)
    assert ugraded_demazure(1, 0).dim == 1


@pytest.mark.parametrize("case", [(1, 1, 0, 2), (1, 1, 1, 2), (1, 1, 0, 3), (1, 2, 0, 2),
                                  (2, 1, 0, 2), (2, 1, 1, 2)])
def test_comparison_cases(case):
    rep = verify_theorem1_sl2(*case)
    assert rep.ok, rep.to_dict()
    if case in TABLES:
        assert rep.left.as_dict() == TABLES[case]
    level, c, lam0, N = case
    assert rep.left.total == (level + 1) ** (N * c) * (lam0 + 1)


def test_comparison_label_and_rejects():
    rep = verify_theorem1_sl2(2, 1, 0, 2)
    assert rep.left_dim == 9 and rep.to_dict()["label"] == "consistency check"
    with pytest.raises(DomainError):
        verify_theorem1_sl2(1, 1, 2, 2)
