import copy

from hypothesis import given, strategies as st

from finitegpd.bibundle import (adjoin_strict_unit, Bibundle,
                                bibundle_morphism_search, chain_groupoid,
                                compose_bibundles, functor_bibundle,
                                group_groupoid, groupoid_isomorphism_search,
                                identity_bibundle, is_biprincipal,
                                naive_orbit_classes, opposite_groupoid,
                                pair_groupoid, pullback_groupoid, tid,
                                unit_groupoid, untid, verify_bibundle,
                                verify_bibundle_morphism, verify_groupoid)
from finitegpd.groups import cyclic_group, symmetric_group


@given(st.lists(st.text(alphabet="ab()", min_size=0, max_size=6)
                .filter(lambda s: s.count("(") == s.count(")")
                        and all(s[:i].count("(") >= s[:i].count(")")
                                for i in range(len(s) + 1))
                        and "," not in s),
                min_size=1, max_size=4))
def test_tid_untid_round_trip(parts):
    assert list(untid(tid(*parts))) == parts


@given(st.integers(min_value=1, max_value=8), st.data())
def test_cyclic_group_laws(n, data):
    G = cyclic_group(n)
    a = data.draw(st.sampled_from(G.elements))
    b = data.draw(st.sampled_from(G.elements))
    c = data.draw(st.sampled_from(G.elements))
    m = G.mul
    assert m[(m[(a, b)], c)] == m[(a, m[(b, c)])]
    assert m[(a, G.inverse(a))] == G.identity
    assert m[(G.identity, a)] == a


def test_symmetric_group_order():
    assert len(symmetric_group(3).elements) == 6


def test_basic_groupoids_verify(pair3, bz2):
    for G in (pair3, bz2, unit_groupoid("xyz")):
        rep = verify_groupoid(G)
        assert rep.ok, rep.first_failure()
        assert verify_groupoid(opposite_groupoid(G)).ok


def test_groupoid_negative_control(pair3):
    G = copy.deepcopy(pair3)
    G.compose = dict(G.compose)
    key = sorted(G.compose)[1]
    G.compose[key] = next(a for a in G.arrows if a != G.compose[key])
    rep = verify_groupoid(G)
    assert not rep.ok and rep.first_failure().witness is not None


def test_groupoid_isomorphism_search(pair3):
    assert groupoid_isomorphism_search(pair3, pair3) is not None
    assert groupoid_isomorphism_search(
        group_groupoid(cyclic_group(2)), group_groupoid(cyclic_group(3))) is None
    # same size, different structure: Z4 vs Z2 x Z2 built as a product
    z4 = group_groupoid(cyclic_group(4))
    b2 = group_groupoid(cyclic_group(2))
    one = {o: o for o in b2.objects}
    klein = chain_groupoid([b2, b2], [one, one], [one, one])
    assert len(klein.arrows) == len(z4.arrows)
    assert groupoid_isomorphism_search(z4, klein) is None


def test_identity_bibundle_is_biprincipal(pair3):
    E = identity_bibundle(pair3)
    assert verify_bibundle(E).ok
    assert is_biprincipal(E).ok


def test_functor_bibundle_of_iso_is_biprincipal(bz2):
    F = functor_bibundle({o: o for o in bz2.objects},
                         {a: a for a in bz2.arrows}, bz2, bz2)
    assert verify_bibundle(F).ok
    assert is_biprincipal(F).ok


def test_compose_with_identity_is_isomorphic(bz2):
    E = identity_bibundle(bz2)
    C = compose_bibundles(E, E)
    B = Bibundle(C.left, C.right, C.carrier, C.left_moment, C.right_moment,
                 C.left_action, C.right_action)
    assert verify_bibundle(B).ok
    phi = bibundle_morphism_search(B, E)
    assert phi is not None
    assert verify_bibundle_morphism(phi).ok


def test_union_find_quotient_matches_naive_closure(bz2, pair3):
    for G in (bz2, pair3):
        E = identity_bibundle(G)
        C = compose_bibundles(E, E)
        naive = {frozenset(cls) for cls in naive_orbit_classes(E, E)}
        ours = {frozenset(m) for m in C.members.values()}
        assert naive == ours


def test_compose_reverse_order_isomorphic(bz2):
    E = identity_bibundle(bz2)
    C1 = compose_bibundles(E, E)
    C2 = compose_bibundles(E, E, reverse_order=True)
    assert {frozenset(m) for m in C1.members.values()} == \
           {frozenset(m) for m in C2.members.values()}
    phi = bibundle_morphism_search(C1, C2)
    assert phi is not None and verify_bibundle_morphism(phi).ok


def test_bibundle_negative_control(bz2):
    E = identity_bibundle(bz2)
    bad = Bibundle(E.left, E.right, E.carrier, E.left_moment, E.right_moment,
                   E.left_action, dict(E.right_action))
    key = sorted(bad.right_action)[0]
    bad.right_action[key] = next(e for e in bad.carrier
                                 if e != bad.right_action[key])
    rep = verify_bibundle(bad)
    assert not rep.ok and rep.first_failure().witness is not None


def test_chain_groupoid_counts(pair3):
    s = dict(pair3.source)
    t = dict(pair3.target)
    # this fiber product is over the objects of the pair groupoid
    C = chain_groupoid([pair3, pair3], [{o: o for o in pair3.objects}] * 2,
                       [{o: o for o in pair3.objects}] * 2)
    # objects pair diagonally; arrows must agree on both endpoints
    assert len(C.objects) == len(pair3.objects)
    assert len(C.arrows) == len(pair3.arrows)
    assert verify_groupoid(C).ok
    del s, t


def test_pullback_groupoid_along_cover(pair3):
    chart = {"x0": "p0", "x1": "p0", "x2": "p1"}
    P, rep = pullback_groupoid(pair3, chart, chart)
    assert verify_groupoid(P).ok
    assert rep.ok
    assert len(P.objects) == 3 and len(P.arrows) == 9


def test_adjoin_strict_unit_produces_morita_bibundle():
    G = pair_groupoid(["a", "b"])
    M = unit_groupoid(["m"])
    carrier = ("a", "b")
    E = Bibundle(M, G, carrier,
                 {e: "m" for e in carrier}, {e: e for e in carrier},
                 {(m, e): e for m in M.arrows for e in carrier},
                 {(e, g): G.source[g] for e in carrier for g in G.arrows
                  if G.target[g] == e})
    assert verify_bibundle(E).ok
    G2, F = adjoin_strict_unit(G, E)
    assert verify_groupoid(G2).ok
    assert verify_bibundle(F).ok and is_biprincipal(F).ok
    assert any(o.startswith("u:") for o in G2.objects)
