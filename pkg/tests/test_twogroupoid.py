import copy

import pytest

from finitegpd.bibundle import verify_groupoid
from finitegpd.simplicial import verify_n_groupoid, verify_simplicial
from finitegpd.twogroupoid import (bigon_groupoid, commutative_tetrahedra,
                                   degenerate_tetrahedra, edge_horn_fillers,
                                   edge_horn_space, groupoid_nerve,
                                   solve_filler_tables, tilde_bigon_iso,
                                   triangle_horn_space, truncate_to_data,
                                   two_groupoid_to_simplicial,
                                   verify_two_groupoid)


def test_crossed_module_fixture_verifies(xmod):
    rep = verify_two_groupoid(xmod)
    assert rep.ok, rep.first_failure()


def test_crossed_module_fixture_counts(xmod):
    # one point, |G| arrows, |G|^2 * |H| triangles
    assert (len(xmod.X0), len(xmod.X1), len(xmod.X2)) == (1, 2, 8)
    assert len(edge_horn_space(xmod, 1)) == 4
    for j in range(4):
        assert len(triangle_horn_space(xmod, j)) == 64
    assert len(commutative_tetrahedra(xmod)) == 64


def test_crossed_module_rejects_broken_axioms(z2):
    from finitegpd.twogroupoid import crossed_module_fixture, trivial_boundary
    # a non-homomorphic "action" must be rejected with a report
    bad_action = {(g, h): "1" for g in z2.elements for h in z2.elements}
    with pytest.raises(ValueError):
        crossed_module_fixture(z2, z2, trivial_boundary(z2, z2), bad_action)


def test_edge_horn_fillers_nonempty(xmod):
    for j in range(3):
        for horn in edge_horn_space(xmod, j):
            assert edge_horn_fillers(xmod, j, horn)


def test_nerve_of_pair_groupoid_verifies(pair3):
    N = groupoid_nerve(pair3)
    rep = verify_two_groupoid(N)
    assert rep.ok, rep.first_failure()
    assert (len(N.X0), len(N.X1), len(N.X2)) == (3, 9, 27)


def test_nerve_of_cech_groupoid_verifies(cech_nerve):
    rep = verify_two_groupoid(cech_nerve)
    assert rep.ok, rep.first_failure()
    assert (len(cech_nerve.X0), len(cech_nerve.X1)) == (4, 6)


def test_degenerate_tetrahedra_are_commutative(xmod):
    comm = commutative_tetrahedra(xmod)
    for x in xmod.X2:
        for q in degenerate_tetrahedra(xmod, x):
            assert q in comm


def test_simplicial_round_trip(xmod):
    S = two_groupoid_to_simplicial(xmod, level=3)
    assert verify_simplicial(S).ok
    back = truncate_to_data(S)
    assert back.X2 == xmod.X2
    assert back.m == xmod.m


def test_level_four_nerve_counts_and_kan(xmod):
    S = two_groupoid_to_simplicial(xmod, level=4)
    assert [len(c) for c in S.cells] == [1, 2, 8, 64, 1024]
    rep = verify_n_groupoid(S, 2, 4)
    assert rep.ok, rep.first_failure()


def test_bigon_groupoid_and_tilde_iso(xmod):
    G = bigon_groupoid(xmod)
    assert (len(G.objects), len(G.arrows)) == (2, 4)
    assert verify_groupoid(G).ok
    Gt, fwd, rep = tilde_bigon_iso(xmod)
    assert rep.ok, rep.first_failure()
    assert verify_groupoid(Gt).ok
    assert sorted(fwd) == sorted(G.arrows)


def test_solve_filler_tables_requires_uniqueness(xmod):
    X = copy.deepcopy(xmod)
    # accepting every glued tetrahedron leaves two fillers per horn
    with pytest.raises(ValueError):
        solve_filler_tables(X, lambda q: True)


def test_perturbed_filler_table_fails_with_witness(xmod):
    X = copy.deepcopy(xmod)
    key = sorted(X.m[1])[3]
    X.m[1][key] = next(x for x in X.X2 if x != X.m[1][key])
    rep = verify_two_groupoid(X)
    assert not rep.ok
    fail = rep.first_failure()
    assert fail is not None and fail.witness is not None


def test_perturbed_face_map_fails(xmod):
    X = copy.deepcopy(xmod)
    k = X.X2[0]
    X.d2_0 = dict(X.d2_0)
    X.d2_0[k] = next(a for a in X.X1 if a != X.d2_0[k])
    assert not verify_two_groupoid(X).ok


def test_coherence_detects_corrupted_tetrahedron(xmod):
    from finitegpd.twogroupoid import _coherence_witness
    comm = commutative_tetrahedra(xmod)
    assert _coherence_witness(xmod, comm) is None
    bad = set(comm)
    bad.discard(sorted(comm)[5])
    wit = _coherence_witness(xmod, bad)
    assert wit is not None and "forced_face" in wit
