import pytest

from fusionlab.errors import DomainError
from fusionlab.presentation import TruncatedWeyl
from fusionlab.sl2mod import is_highest_weight_cyclic, local_weyl, truncate


@pytest.mark.parametrize("m,N", [(0, 1), (2, 1), (2, 2), (3, 2), (4, 2), (4, 3), (5, 3), (6, 4)])
def test_matches_quotient(m, N):
    W = TruncatedWeyl(m, N)
    T = truncate(local_weyl(m), N)
    assert W.dim == T.dim
    assert W.character() == T.character()


@pytest.mark.parametrize("m,N", [(3, 2), (4, 3), (7, 3)])
def test_module_structure(m, N):
    M = TruncatedWeyl(m, N).to_module()
    assert M.check_structure() == []
    assert is_highest_weight_cyclic(M)


def test_dimension_formula():
    for m, N in [(8, 4), (9, 3), (11, 5)]:
        k, j = divmod(m, N)
        assert TruncatedWeyl(m, N).dim == (k + 1) ** (N - j) * (k + 2) ** j


def test_normal_form():
    W = TruncatedWeyl(2, 2)
    assert W.normal_form((0, 0)) == {(0, 0): 1}
    assert W.normal_form((3, 0)) == {}
    with pytest.raises(DomainError):
        W.normal_form((1,))


def test_rejects():
    with pytest.raises(DomainError):
        TruncatedWeyl(-1, 2)
    with pytest.raises(DomainError):
        TruncatedWeyl(2, 0)
