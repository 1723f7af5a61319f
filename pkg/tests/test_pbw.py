import pytest
from hypothesis import given, settings, strategies as st

from fusionlab.errors import DomainError, ResourceCapError
from fusionlab.pbw import (carry_profile, enumerate_S, expected_dim, in_S, recursive_basis,
                           sl2_weights, sweep_cases, verify_basis_property, verify_equivalence)

import oracles

B12 = {(0, 0), (0, 1), (1, 1), (1, 0), (2, 0), (3, 0)}


def test_carry_profile_examples():
    assert carry_profile((0, 3, 0, 0), 0) == (0,)
    assert carry_profile((1, 0, 0, 0), 0) == (1,)
    assert carry_profile((4, 1, 2), 1) == ()
    assert carry_profile((1, 2), 0) == ()


def test_carry_top_guard():
    with pytest.raises(DomainError):
        carry_profile((0,) * 5, 0, carry_top=4)
    assert carry_profile((1,) * 5, 0, carry_top=-1) == ()


def test_n1_is_interval():
    for k in range(6):
        assert enumerate_S(k, 0, 1) == [(i,) for i in range(k + 1)]


def test_n4_k2_against_inequality():
    S = enumerate_S(2, 0, 4)
    assert sorted(S) == oracles.s_set_n4_k2()
    assert len(S) == 81


def test_f1_cubed_witness():
    assert in_S((0, 3, 0, 0), 1, 0)
    assert (0, 3, 0, 0) in enumerate_S(1, 0, 4)
    assert (0, 3, 0, 0) in recursive_basis((1, 1, 1, 1))


def test_small_sets():
    assert set(enumerate_S(1, 0, 1)) == {(0,), (1,)}
    assert set(enumerate_S(1, 1, 2)) == B12
    assert len(enumerate_S(1, 0, 4)) == 16


def test_recursive_examples():
    assert recursive_basis((1, 2)) == B12
    assert recursive_basis((4,)) == {(a,) for a in range(5)}
    with pytest.raises(DomainError):
        recursive_basis((2, 1))


def test_sl2_weights():
    assert sl2_weights(2, 1, 3) == (2, 2, 3)


@pytest.mark.parametrize("k,j,N", [(2, 0, 4), (1, 1, 2), (1, 0, 1), (0, 2, 3), (1, 2, 5), (3, 0, 3)])
def test_equivalence(k, j, N):
    rep = verify_equivalence(k, j, N)
    assert rep.ok, rep.to_dict()


@pytest.mark.parametrize("k,j,N", [(1, 0, 2), (1, 1, 2), (1, 0, 3), (1, 0, 4), (2, 0, 3), (0, 3, 4)])
def test_basis_both_routes(k, j, N):
    for route in ("quotient", "presentation"):
        rep = verify_basis_property(k, j, N, route=route)
        assert rep.ok, rep.to_dict()
        assert rep.module_dim == expected_dim(k, j, N)


def test_basis_trivial():
    rep = verify_basis_property(0, 0, 1)
    assert rep.ok and rep.module_dim == 1 and rep.count == 1


def test_basis_m2():
    rep = verify_basis_property(1, 0, 2)
    assert (rep.count, rep.rank, rep.module_dim) == (4, 4, 4)


def test_dropping_carries_breaks_basis():
    # without the carry the set is too big for W(4, 4) and a dependency appears
    S = enumerate_S(1, 0, 4, carry_top=-1)
    assert len(S) == 17
    rep = verify_basis_property(1, 0, 4, route="presentation", carry_top=-1)
    assert not rep.ok and rep.witness and not rep.independent
    assert rep.to_dict()["bad_pieces"]


def test_wider_carry_range_is_harmless():
    # the extra carries only cut monomials that the inequality already excludes
    for k, j, N in [(1, 0, 4), (2, 0, 4), (1, 1, 5), (1, 0, 6)]:
        assert enumerate_S(k, j, N, carry_top=N - 2) == enumerate_S(k, j, N)


def test_bad_route_and_args():
    with pytest.raises(DomainError):
        verify_basis_property(1, 0, 2, route="magic")
    with pytest.raises(DomainError):
        enumerate_S(1, 2, 2)
    with pytest.raises(ResourceCapError):
        enumerate_S(3, 0, 6, cap=100)


def test_sweep_cases_bound():
    cases = sweep_cases(50, 3)
    assert all(expected_dim(*c) <= 50 for c in cases)
    assert (49, 0, 1) in cases and (50, 0, 1) not in cases


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(1, 5), st.data())
def test_cardinality_and_recursion(k, N, data):
    j = data.draw(st.integers(0, N - 1))
    if expected_dim(k, j, N) > 3000:
        return
    S = enumerate_S(k, j, N)
    assert len(S) == expected_dim(k, j, N)
    assert set(S) == recursive_basis(sl2_weights(k, j, N))
