from math import comb

import pytest
from hypothesis import given, strategies as st

from finitegpd.simplicial import (apply_operator, boundary_complex, check_kan,
                                  coskeleton, enumerate_hom, horn_complex,
                                  skeleton, standard_simplex,
                                  verify_n_groupoid, verify_simplicial)
from finitegpd.twogroupoid import groupoid_nerve, two_groupoid_to_simplicial


def test_standard_simplex_cell_counts():
    # number of weakly monotone (n+1)-tuples valued in {0..m}
    for m in range(4):
        S = standard_simplex(m, 3)
        for n in range(4):
            assert len(S.cells[n]) == comb(m + n + 1, n + 1)
        assert verify_simplicial(S).ok


def test_horn_and_boundary_complexes_verify():
    for m in (1, 2, 3):
        B, inc = boundary_complex(m, 3)
        assert verify_simplicial(B).ok
        assert len(B.nondegenerate(m)) == 0
        for j in range(m + 1):
            H, _ = horn_complex(m, j, 3)
            assert verify_simplicial(H).ok
            # the horn misses exactly one codimension-1 face of the boundary
            assert len(H.nondegenerate(m - 1)) == len(B.nondegenerate(m - 1)) - 1


@given(st.integers(min_value=0, max_value=2), st.data())
def test_apply_operator_matches_faces(n, data):
    S = standard_simplex(2, 3)
    cell = data.draw(st.sampled_from(S.cells[n + 1]))
    i = data.draw(st.integers(min_value=0, max_value=n + 1))
    w = tuple(v for v in range(n + 2) if v != i)
    assert apply_operator(S, cell, n + 1, w) == S.face[(n + 1, i)][cell]


@given(st.integers(min_value=0, max_value=2), st.data())
def test_apply_operator_matches_degeneracies(n, data):
    S = standard_simplex(2, 3)
    cell = data.draw(st.sampled_from(S.cells[n]))
    i = data.draw(st.integers(min_value=0, max_value=max(n, 0)))
    if i > n:
        return
    w = tuple(sorted(list(range(n + 1)) + [i]))
    assert apply_operator(S, cell, n, w) == S.degeneracy[(n, i)][cell]


def test_enumerate_hom_yoneda_counts(bz2):
    X = two_groupoid_to_simplicial(groupoid_nerve(bz2), level=2)
    # maps out of the standard n-simplex are exactly the n-cells
    for n in range(3):
        D = standard_simplex(n, 2)
        homs = enumerate_hom(D, X)
        assert len(homs) == len(X.cells[n])


def test_group_nerve_kan_conditions(bz2):
    X = two_groupoid_to_simplicial(groupoid_nerve(bz2), level=3)
    assert check_kan(X, 2, 1).status == "HOLDS_UNIQUELY"
    assert check_kan(X, 3, 0).status == "HOLDS_UNIQUELY"
    rep = verify_n_groupoid(X, 1, 3)
    assert rep.ok


def test_skeleton_coskeleton_adjunction_on_nerve(bz2):
    X = two_groupoid_to_simplicial(groupoid_nerve(bz2), level=3)
    C = coskeleton(X, 2, 3)
    # a 1-groupoid nerve is 2-coskeletal: same cell counts at level 3
    assert len(C.cells[3]) == len(X.cells[3])
    S = skeleton(X, 1, 3)
    assert verify_simplicial(S).ok
    assert [len(c) for c in S.cells[:2]] == [len(c) for c in X.cells[:2]]


def test_verify_simplicial_negative_control():
    S = standard_simplex(2, 2)
    bad = S.face[(1, 0)].copy()
    k = sorted(bad)[0]
    bad[k] = [c for c in S.cells[0] if c != bad[k]][0]
    S.face[(1, 0)] = bad
    rep = verify_simplicial(S)
    assert not rep.ok
    assert rep.first_failure() is not None


def test_enumerate_hom_rejects_level_mismatch():
    with pytest.raises(ValueError):
        enumerate_hom(standard_simplex(1, 1), standard_simplex(1, 2))
