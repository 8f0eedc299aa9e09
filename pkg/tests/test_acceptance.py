"""Acceptance gate: one test (and one printed verdict line) per criterion.

Each criterion is checked against independent oracles: closed-form or
brute-force counts computed here, hand-built comparison objects, and the
command-line exit codes.
"""
import copy
import itertools
import json

from finitegpd.bibundle import (Bibundle, bibundle_morphism_search,
                                compose_bibundles,
                                group_groupoid, identity_bibundle,
                                is_biprincipal, pair_groupoid, tid, untid,
                                verify_bibundle, verify_bibundle_morphism,
                                verify_groupoid)
from finitegpd.cli import main
from finitegpd.equivalence import (arrow_refinement, compose_strict_maps,
                                   fiber_product_two_groupoid,
                                   identity_strict_map, is_equivalence,
                                   is_one_equivalence, nerve_map,
                                   pullback_two_groupoid,
                                   strict_inverse_search,
                                   two_groupoid_isomorphism_search,
                                   verify_strict_map)
from finitegpd.groups import cyclic_group
from finitegpd.simplicial import check_kan, verify_n_groupoid
from finitegpd.stacky import (from_ordinary_groupoid, from_two_groupoid,
                              inverse_bibundle, to_two_groupoid,
                              verify_stacky)
from finitegpd.twogroupoid import (groupoid_nerve, truncate_to_data,
                                   two_groupoid_to_simplicial,
                                   verify_two_groupoid)


def _verdict(n: int, name: str, ok: bool, detail: str = "") -> None:
    print(f"\ncriterion {n} ({name}): {'PASS' if ok else 'FAIL'}"
          + (f" [{detail}]" if detail else ""))
    assert ok, f"criterion {n} ({name}) failed: {detail}"


def _chain_count(G, n: int) -> int:
    """Brute-force count of composable arrow strings, independent of the
    nerve construction."""
    if n == 0:
        return len(G.objects)
    total = 0
    for combo in itertools.product(G.arrows, repeat=n):
        if all(G.source[combo[i]] == G.target[combo[i + 1]]
               for i in range(n - 1)):
            total += 1
    return total


def test_criterion_1_nerve_laws(pair3):
    ok = True
    for G, closed_form in [
            (group_groupoid(cyclic_group(2)), lambda n: 2 ** n),
            (group_groupoid(cyclic_group(3)), lambda n: 3 ** n),
            (pair3, lambda n: 3 ** (n + 1))]:
        S = two_groupoid_to_simplicial(groupoid_nerve(G), level=4)
        for n in range(5):
            ok = ok and len(S.cells[n]) == closed_form(n) == _chain_count(G, n)
        ok = ok and verify_n_groupoid(S, 1, 4).ok
        for m in range(2, 5):
            for j in range(m + 1):
                ok = ok and check_kan(S, m, j).status == "HOLDS_UNIQUELY"
    _verdict(1, "nerve laws", ok)


def test_criterion_2_two_groupoid_axioms(xmod):
    ok = verify_two_groupoid(xmod).ok
    S = two_groupoid_to_simplicial(xmod, level=4)
    ok = ok and verify_n_groupoid(S, 2, 4).ok
    back = truncate_to_data(two_groupoid_to_simplicial(xmod, level=3))
    ok = ok and back.X0 == xmod.X0 and back.X1 == xmod.X1 \
        and back.X2 == xmod.X2 and back.m == xmod.m \
        and back.s1_0 == xmod.s1_0 and back.s1_1 == xmod.s1_1
    _verdict(2, "2-groupoid axioms and truncation round trip", ok)


def test_criterion_3_correspondence_round_trip(xmod, cech_nerve):
    ok = True
    point = groupoid_nerve(pair_groupoid(["*"]))
    for X in (xmod, cech_nerve, point):
        back = to_two_groupoid(from_two_groupoid(X))
        ok = ok and verify_two_groupoid(back).ok
        ok = ok and two_groupoid_isomorphism_search(back, X) is not None
    K = pair_groupoid(["p", "q"])
    X = to_two_groupoid(from_ordinary_groupoid(K))
    ok = ok and two_groupoid_isomorphism_search(X, groupoid_nerve(K)) is not None
    _verdict(3, "stacky correspondence round trip", ok)


def test_criterion_4_inverse_elimination(xmod, cech_nerve):
    ok = True
    fixtures = [from_ordinary_groupoid(pair_groupoid(["p", "q"])),
                from_two_groupoid(xmod), from_two_groupoid(cech_nerve)]
    for S in fixtures:
        ok = ok and verify_stacky(S).ok
        ok = ok and is_biprincipal(inverse_bibundle(S)).ok
    # a hand-supplied inversion bundle is isomorphic to the derived one
    S = fixtures[0]
    K = pair_groupoid(["p", "q"])
    derived = inverse_bibundle(S)
    G, Gop = derived.left, derived.right
    supplied = Bibundle(
        G, Gop, tuple(K.arrows),
        {a: a for a in K.arrows}, {a: K.inverse[a] for a in K.arrows},
        {(G.identity[a], a): a for a in K.arrows},
        {(a, Gop.identity[K.inverse[a]]): a for a in K.arrows})
    phi = bibundle_morphism_search(supplied, derived)
    ok = ok and phi is not None and verify_bibundle_morphism(phi).ok
    _verdict(4, "inversion bundles are biprincipal", ok)


def test_criterion_5_equivalence_machinery(cech, points_groupoid, xmod):
    C, om, am = cech
    p = nerve_map(C, points_groupoid, om, am)
    ok = is_equivalence(p, 1).ok
    ok = ok and strict_inverse_search(p) is None

    Z1 = [tid(x, k) for x in xmod.X1 for k in "01"]
    Z, proj = pullback_two_groupoid(
        xmod, xmod.X0, Z1,
        {h: xmod.d1_0[untid(h)[0]] for h in Z1},
        {h: xmod.d1_1[untid(h)[0]] for h in Z1},
        {q: tid(xmod.s0_0[q], "0") for q in xmod.X0},
        {q: q for q in xmod.X0},
        {h: untid(h)[0] for h in Z1})
    ok = ok and verify_two_groupoid(Z).ok and is_one_equivalence(proj).ok

    P, pZ, pW = fiber_product_two_groupoid(p, p)
    ok = ok and verify_two_groupoid(P).ok
    ok = ok and is_equivalence(pZ, 1).ok and is_equivalence(pW, 1).ok

    W, r = arrow_refinement(p.source, 2)
    ok = ok and is_equivalence(compose_strict_maps(r, p), 2).ok
    _verdict(5, "equivalence machinery", ok)


def test_criterion_6_representative_independence(xmod, cech_nerve, pair3):
    ok = True
    for X in (xmod, cech_nerve):
        S1 = from_two_groupoid(X)
        S2 = from_two_groupoid(X, reverse_choices=True)
        ok = ok and S1.a == S2.a and S1.b_l == S2.b_l and S1.b_r == S2.b_r
    for G in (pair3, group_groupoid(cyclic_group(2))):
        E = identity_bibundle(G)
        C1 = compose_bibundles(E, E)
        C2 = compose_bibundles(E, E, reverse_order=True)
        phi = bibundle_morphism_search(C1, C2)
        ok = ok and phi is not None and verify_bibundle_morphism(phi).ok
    _verdict(6, "representative independence", ok)


def test_criterion_7_negative_controls(xmod, pair3, tmp_path, capsys):
    from finitegpd.simplicial import standard_simplex, verify_simplicial
    ok = True

    S = standard_simplex(2, 2)
    S.face[(1, 0)] = dict(S.face[(1, 0)])
    k = sorted(S.face[(1, 0)])[0]
    S.face[(1, 0)][k] = next(c for c in S.cells[0] if c != S.face[(1, 0)][k])
    rep = verify_simplicial(S)
    ok = ok and not rep.ok and rep.first_failure().law != ""

    X = copy.deepcopy(xmod)
    key = sorted(X.m[1])[3]
    X.m[1][key] = next(x for x in X.X2 if x != X.m[1][key])
    rep = verify_two_groupoid(X)
    ok = ok and not rep.ok and rep.first_failure().witness is not None

    G = copy.deepcopy(pair3)
    G.compose = dict(G.compose)
    ck = sorted(G.compose)[1]
    G.compose[ck] = next(a for a in G.arrows if a != G.compose[ck])
    rep = verify_groupoid(G)
    ok = ok and not rep.ok and rep.first_failure().witness is not None

    E = identity_bibundle(pair3)
    bad = Bibundle(E.left, E.right, E.carrier, E.left_moment, E.right_moment,
                   E.left_action, dict(E.right_action))
    bk = sorted(bad.right_action)[0]
    bad.right_action[bk] = next(e for e in bad.carrier
                                if e != bad.right_action[bk])
    rep = verify_bibundle(bad)
    ok = ok and not rep.ok and rep.first_failure().witness is not None

    St = from_two_groupoid(xmod)
    St = copy.deepcopy(St)
    uk = sorted(St.b_r)[0]
    St.b_r[uk] = next(g for g in St.G.arrows if g != St.b_r[uk])
    rep = verify_stacky(St)
    ok = ok and not rep.ok and rep.first_failure() is not None

    f = identity_strict_map(xmod)
    f = copy.deepcopy(f)
    fk = sorted(f.f2)[0]
    f.f2[fk] = next(x for x in xmod.X2 if x != f.f2[fk])
    rep = verify_strict_map(f)
    ok = ok and not rep.ok and rep.first_failure().witness is not None

    # the command line reports the failure and exits with code 1
    path = tmp_path / "bad.json"
    assert main(["fixture", "xmod:Z2Z2", "-o", str(path)]) == 0
    doc = json.loads(path.read_text())
    mk = sorted(doc["payload"]["m"][1])[0]
    doc["payload"]["m"][1][mk] = next(
        v for v in doc["payload"]["triangles"]
        if v != doc["payload"]["m"][1][mk])
    path.write_text(json.dumps(doc))
    code = main(["check", str(path)])
    out = capsys.readouterr().out
    ok = ok and code == 1 and "FAIL" in out
    _verdict(7, "negative controls", ok)
