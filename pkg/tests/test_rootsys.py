import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from fusionlab.errors import DomainError
from fusionlab.rootsys import (all_supported, build_root_system, check_lemma2, pairing,
                               weight)

from oracles import positive_roots_by_reflection

COUNTS = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n,
          "D": lambda n: n * (n - 1), "G": lambda n: 6}


@pytest.mark.parametrize("t,r", all_supported(4))
def test_roots_match_reflection_closure(t, r):
    rs = build_root_system(t, r)
    assert sorted(rs.positive_roots) == positive_roots_by_reflection(rs.cartan_matrix)
    assert len(rs.positive_roots) == COUNTS[t](r)


@pytest.mark.parametrize("t,r", all_supported(4))
def test_theta_dominates(t, r):
    rs = build_root_system(t, r)
    for b in rs.positive_roots:
        assert all(x >= y for x, y in zip(rs.theta, b))
    assert rs.is_long(rs.theta)
    assert rs.d(rs.theta) == 1


def test_a1():
    rs = build_root_system("A", 1)
    assert rs.positive_roots == ((1,),)
    assert rs.theta == (1,)


def test_g2_convention():
    rs = build_root_system("G", 2)
    assert len(rs.positive_roots) == 6
    assert rs.theta == (3, 2)
    assert rs.cartan_matrix == ((2, -1), (-3, 2)) or rs.cartan_matrix == ((2, -3), (-1, 2))
    assert sorted(rs.d(b) for b in rs.positive_roots) == [1, 1, 1, 3, 3, 3]


def test_c2_lengths():
    rs = build_root_system("C", 2)
    longs = [b for b in rs.positive_roots if rs.is_long(b)]
    assert len(longs) == 2 and rs.theta in longs
    assert len(rs.positive_roots) - len(longs) == 2


@pytest.mark.parametrize("t,r", [("A", 0), ("B", 1), ("D", 2), ("G", 3), ("E", 6), ("Q", 2)])
def test_bad_types(t, r):
    with pytest.raises(DomainError):
        build_root_system(t, r)


def test_pairing_examples():
    assert pairing(build_root_system("A", 1), weight(5), (1,)) == 5
    a2 = build_root_system("A", 2)
    assert pairing(a2, weight(1, 0), (1, 1)) == 1
    for t, r in all_supported(3):
        rs = build_root_system(t, r)
        for b in rs.positive_roots:
            assert pairing(rs, weight(*[0] * r), b) == 0


def test_pairing_rejects():
    rs = build_root_system("A", 2)
    with pytest.raises(DomainError):
        pairing(rs, weight(1, 0), (2, 1))
    with pytest.raises(DomainError):
        pairing(rs, weight(1), (1, 0))
    with pytest.raises(DomainError):
        weight(-1, 0)


def test_fundamental_pairings_on_simple_coroots():
    for t, r in all_supported(4):
        rs = build_root_system(t, r)
        for i in range(r):
            w = weight(*[int(i == j) for j in range(r)])
            for k in range(r):
                assert pairing(rs, w, rs.simple_root(k)) == int(i == k)


def test_root_length_a1_equality():
    rep = check_lemma2(build_root_system("A", 1), weight(3))
    assert rep.ok and all(r.equality for r in rep.rows)


def test_root_length_c2_strict_short():
    rs = build_root_system("C", 2)
    rep = check_lemma2(rs, weight(1, 0))
    assert rep.ok
    short = [r for r in rep.rows if not rs.is_long(r.beta) and pairing(rs, weight(1, 0), r.beta) == 1]
    assert short and all(r.lhs == Fraction(1) and r.lhs < r.rhs for r in short)


def test_root_length_zero_weight():
    for t, r in all_supported(3):
        rep = check_lemma2(build_root_system(t, r), weight(*[0] * r))
        assert rep.ok and all(row.equality and row.lhs == 0 for row in rep.rows)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(all_supported(4)), st.lists(st.integers(0, 5), min_size=4, max_size=4))
def test_root_length_random(tr, coeffs):
    t, r = tr
    rep = check_lemma2(build_root_system(t, r), weight(*coeffs[:r]))
    assert rep.inequality_holds
    assert rep.equality_criterion_holds
