"""Stacky presentations of 2-groupoids: a groupoid of arrows over a point
set, a multiplication bibundle, an associator, strict units and inverses.

The multiplication is a right-principal bibundle E from the groupoid of
composable pairs to the arrow groupoid G.  The associator a identifies the
two three-fold composites (as composed bibundles over the chain of three
composable arrows) and must satisfy the pentagon over chains of four; units
are given by a section e of the objects together with trivializations b_l,
b_r of the restrictions of E along e, tied to a by the three unit triangles.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .report import Report
from .bibundle import (Bibundle, BibundleMorphism, ComposedBibundle,
                       FiniteGroupoid, chain_groupoid, chain_tensor,
                       compose_bibundles, identity_bibundle,
                       opposite_groupoid, tid, untid, verify_bibundle,
                       verify_bibundle_morphism, is_biprincipal,
                       unit_groupoid)
from .twogroupoid import TwoGroupoidData, bigon_groupoid, solve_filler_tables


@dataclass
class StackyGroupoidData:
    M: tuple[str, ...]
    G: FiniteGroupoid
    s_map: dict[str, str]          # G.objects -> M
    t_map: dict[str, str]          # G.objects -> M
    e: dict[str, str]              # M -> G.objects, strict unit section
    E: Bibundle                    # composable pairs -> G
    a: dict[str, str]              # associator on composed-bundle classes
    b_l: dict[str, str]            # left-unit slice of E -> G.arrows
    b_r: dict[str, str]            # right-unit slice of E -> G.arrows

    def __post_init__(self) -> None:
        self.M = tuple(sorted(self.M))


def arrow_chain(G: FiniteGroupoid, s_map: dict, t_map: dict,
                n: int) -> FiniteGroupoid:
    """The groupoid of chains of n composable objects of G."""
    return chain_groupoid([G] * n, [s_map] * n, [t_map] * n)


def pair_chain(S: StackyGroupoidData) -> FiniteGroupoid:
    return arrow_chain(S.G, S.s_map, S.t_map, 2)


def _pr(moment: str, i: int) -> str:
    return untid(moment)[i]


def associator_bundles(G: FiniteGroupoid, s_map: dict, t_map: dict,
                       E: Bibundle,
                       reverse_order: bool = False) -> tuple[ComposedBibundle, ComposedBibundle]:
    """The two three-fold composites over the chain of three composable
    objects: multiply the first two then the result, or the last two then
    the result."""
    I = identity_bibundle(G)
    C3 = arrow_chain(G, s_map, t_map, 3)
    C2 = arrow_chain(G, s_map, t_map, 2)
    EI = chain_tensor([E, I], [(2, 1), (1, 1)], C3, C2)
    IE = chain_tensor([I, E], [(1, 1), (2, 1)], C3, C2)
    return (compose_bibundles(EI, E, reverse_order=reverse_order),
            compose_bibundles(IE, E, reverse_order=reverse_order))


def left_unit_slice(S: StackyGroupoidData) -> Bibundle:
    """E restricted to pairs whose first object is a unit, as a bibundle
    from G to G via the second object."""
    G = S.E.right
    units = set(S.e.values())
    carrier = tuple(x for x in S.E.carrier
                    if _pr(S.E.left_moment[x], 0) in units)
    jl = {x: _pr(S.E.left_moment[x], 1) for x in carrier}
    jr = {x: S.E.right_moment[x] for x in carrier}
    left_action = {}
    for x in carrier:
        for g in G.arrows:
            if G.source[g] == jl[x]:
                u = G.identity[_pr(S.E.left_moment[x], 0)]
                left_action[(g, x)] = S.E.left_action[(tid(u, g), x)]
    right_action = {(x, g): S.E.right_action[(x, g)]
                    for x in carrier for g in G.arrows
                    if G.target[g] == jr[x]}
    return Bibundle(G, G, carrier, jl, jr, left_action, right_action)


def right_unit_slice(S: StackyGroupoidData) -> Bibundle:
    """E restricted to pairs whose second object is a unit, as a bibundle
    from G to G via the first object."""
    G = S.E.right
    units = set(S.e.values())
    carrier = tuple(x for x in S.E.carrier
                    if _pr(S.E.left_moment[x], 1) in units)
    jl = {x: _pr(S.E.left_moment[x], 0) for x in carrier}
    jr = {x: S.E.right_moment[x] for x in carrier}
    left_action = {}
    for x in carrier:
        for g in G.arrows:
            if G.source[g] == jl[x]:
                u = G.identity[_pr(S.E.left_moment[x], 1)]
                left_action[(g, x)] = S.E.left_action[(tid(g, u), x)]
    right_action = {(x, g): S.E.right_action[(x, g)]
                    for x in carrier for g in G.arrows
                    if G.target[g] == jr[x]}
    return Bibundle(G, G, carrier, jl, jr, left_action, right_action)


# ---------------------------------------------------------------------------
# pentagon
# ---------------------------------------------------------------------------

def _composite_morphism(src: ComposedBibundle, tgt: ComposedBibundle,
                        src_mid: ComposedBibundle, tgt_mid: ComposedBibundle,
                        inner: Callable, name: str) -> BibundleMorphism:
    """Morphism between twice-composed bundles defined member by member;
    checks constancy over every member of the outer and middle classes."""
    mapping: dict[str, str] = {}
    for cid in src.carrier:
        images = set()
        for mid_id, w in src.members[cid]:
            for u_id, v_id in src_mid.members[mid_id]:
                u2, v2, w2 = inner(untid(u_id), untid(v_id), w)
                mid2 = tgt_mid.class_of.get((tid(*u2), tid(*v2)))
                if mid2 is None:
                    raise ValueError(f"{name}: image pair not in the target")
                out = tgt.class_of.get((mid2, w2))
                if out is None:
                    raise ValueError(f"{name}: image not in the target")
                images.add(out)
        if len(images) != 1:
            raise ValueError(f"{name}: not constant on the class {cid!r}")
        mapping[cid] = images.pop()
    return BibundleMorphism(src, tgt, mapping)


def pentagon_report(S: StackyGroupoidData, B_left: ComposedBibundle,
                    B_right: ComposedBibundle,
                    rep: Report) -> None:
    """Check the associator coherence over chains of four composable
    objects: the three-step rebracketing path equals the two-step one."""
    G, E = S.G, S.E
    I = identity_bibundle(G)
    C4 = arrow_chain(S.G, S.s_map, S.t_map, 4)
    C3 = arrow_chain(S.G, S.s_map, S.t_map, 3)
    C2 = arrow_chain(S.G, S.s_map, S.t_map, 2)
    EII = chain_tensor([E, I, I], [(2, 1), (1, 1), (1, 1)], C4, C3)
    IEI = chain_tensor([I, E, I], [(1, 1), (2, 1), (1, 1)], C4, C3)
    IIE = chain_tensor([I, I, E], [(1, 1), (1, 1), (2, 1)], C4, C3)
    EI = chain_tensor([E, I], [(2, 1), (1, 1)], C3, C2)
    IE = chain_tensor([I, E], [(1, 1), (2, 1)], C3, C2)

    mids = {name: compose_bibundles(four, three)
            for name, four, three in [
                ("V1", EII, EI), ("V2", IEI, EI), ("V3", IEI, IE),
                ("V4", IIE, IE), ("V5", EII, IE)]}
    V = {name: compose_bibundles(mid, E) for name, mid in mids.items()}

    def kappa_member(u_id: str, e_id: str) -> tuple[tuple[str, ...], str]:
        key = (u_id, e_id)
        cls = B_left.class_of.get(key)
        if cls is None:
            raise ValueError("associator source pair is not composable")
        kappa = S.a.get(cls)
        if kappa is None:
            raise ValueError("associator is undefined on a class")
        v_id, em = B_right.members[kappa][0]
        return untid(v_id), em

    def inner_head(u, v, w):
        eta_xy, g3, g4 = u
        eta2, gp = v
        (gx, eta_yz), em = kappa_member(tid(eta_xy, g3), eta2)
        return (gx, eta_yz, g4), (em, gp), w

    def inner_tail(u, v, w):
        eta2, gp = v
        vm, em = kappa_member(tid(eta2, gp), w)
        return u, vm, em

    def inner_lift(u, v, w):
        g1, eta_yz, g4 = u
        gx, eta_pw = v
        (gy, eta_zw), em = kappa_member(tid(eta_yz, g4), eta_pw)
        return (g1, gy, eta_zw), (gx, em), w

    def inner_bottom(u, v, w):
        eta_xy, g3, g4 = u
        gp, eta_zw = v
        eta_zw0 = E.left_action[(tid(g3, g4), eta_zw)]
        eta_xyp = E.right_action[(eta_xy, gp)]
        idq = G.identity[E.right_moment[eta_zw0]]
        (gx, eta_yq), em = kappa_member(tid(eta_xyp, idq), w)
        idx = G.identity[_pr(E.left_moment[eta_xy], 0)]
        idy = G.identity[_pr(E.left_moment[eta_xy], 1)]
        return (idx, idy, eta_zw0), (gx, eta_yq), em

    try:
        e12 = _composite_morphism(V["V1"], V["V2"], mids["V1"], mids["V2"],
                                  inner_head, "rebracketing of the first three")
        e23 = _composite_morphism(V["V2"], V["V3"], mids["V2"], mids["V3"],
                                  inner_tail, "rebracketing around the composite pair")
        e34 = _composite_morphism(V["V3"], V["V4"], mids["V3"], mids["V4"],
                                  inner_lift, "rebracketing of the last three")
        e15 = _composite_morphism(V["V1"], V["V5"], mids["V1"], mids["V5"],
                                  inner_tail, "rebracketing with the front pair composed")
        e54 = _composite_morphism(V["V5"], V["V4"], mids["V5"], mids["V4"],
                                  inner_bottom, "rebracketing with the back pair composed")
    except ValueError as err:
        rep.add("pentagon morphisms are well defined", False, {"error": str(err)})
        return
    rep.add("pentagon morphisms are well defined", True, None)

    edge_rep = Report()
    for name, mor in [("first three", e12), ("around the pair", e23),
                      ("last three", e34), ("front pair", e15),
                      ("back pair", e54)]:
        edge_rep.extend(verify_bibundle_morphism(mor), f"rebracketing: {name}")
    rep.add("pentagon morphisms are bibundle isomorphisms",
            edge_rep.ok, edge_rep.first_failure())

    top = {cid: e34.mapping[e23.mapping[e12.mapping[cid]]]
           for cid in V["V1"].carrier}
    bottom = {cid: e54.mapping[e15.mapping[cid]] for cid in V["V1"].carrier}
    wit = None
    for cid in V["V1"].carrier:
        if top[cid] != bottom[cid]:
            wit = {"class": cid, "top": top[cid], "bottom": bottom[cid]}
            break
    rep.add("the two rebracketing paths over a chain of four agree",
            wit is None, wit)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_stacky(S: StackyGroupoidData, check_pentagon: bool = True) -> Report:
    rep = Report()
    G = S.G
    Mset = set(S.M)

    wit = None
    for x in G.objects:
        if S.s_map.get(x) not in Mset or S.t_map.get(x) not in Mset:
            wit = {"object": x}
            break
    rep.add("source and target points defined on every object", wit is None, wit)
    if wit:
        return rep
    wit = None
    for g in G.arrows:
        if (S.s_map[G.source[g]] != S.s_map[G.target[g]]
                or S.t_map[G.source[g]] != S.t_map[G.target[g]]):
            wit = {"arrow": g}
            break
    rep.add("arrows of the presenting groupoid preserve endpoints", wit is None, wit)
    wit = None
    for m in S.M:
        x = S.e.get(m)
        if x not in set(G.objects) or S.s_map[x] != m or S.t_map[x] != m:
            wit = {"point": m, "unit": x}
            break
    rep.add("unit section lands on loops", wit is None, wit)
    if not rep.ok:
        return rep

    C2 = pair_chain(S)
    rep.add("multiplication bundle acts for the groupoid of composable pairs",
            S.E.left == C2 and S.E.right == G, None)
    if not rep.ok:
        return rep
    rep.extend(verify_bibundle(S.E, principal=True), "multiplication")
    wit = None
    for x in S.E.carrier:
        pair = untid(S.E.left_moment[x])
        out = S.E.right_moment[x]
        if (S.s_map[out] != S.s_map[pair[1]] or S.t_map[out] != S.t_map[pair[0]]):
            wit = {"element": x}
            break
    rep.add("composite objects have the expected endpoints", wit is None, wit)
    if not rep.ok:
        return rep

    B_left, B_right = associator_bundles(G, S.s_map, S.t_map, S.E)
    assoc = BibundleMorphism(B_left, B_right, S.a)
    rep.extend(verify_bibundle_morphism(assoc), "associator")
    if not rep.ok:
        return rep

    El = left_unit_slice(S)
    Er = right_unit_slice(S)
    I = identity_bibundle(G)
    rep.extend(verify_bibundle_morphism(BibundleMorphism(El, I, S.b_l)),
               "left unit trivialization")
    rep.extend(verify_bibundle_morphism(BibundleMorphism(Er, I, S.b_r)),
               "right unit trivialization")
    if not rep.ok:
        return rep

    units = set(S.e.values())
    for label, strand in [("unit in front", 0), ("unit in the middle", 1),
                          ("unit at the back", 2)]:
        wit = None
        for cls in B_left.carrier:
            if untid(B_left.left_moment[cls])[strand] not in units:
                continue
            lhs_vals, rhs_vals = set(), set()
            for u_id, eta2 in B_left.members[cls]:
                eta1, g = untid(u_id)
                if strand == 0:
                    lhs_vals.add(S.E.left_action[(tid(S.b_l[eta1], g), eta2)])
                elif strand == 1:
                    lhs_vals.add(S.E.left_action[(tid(S.b_r[eta1], g), eta2)])
                else:
                    lifted = S.E.left_action[(
                        tid(S.G.identity[_pr(S.E.left_moment[eta2], 0)], g), eta2)]
                    lhs_vals.add(S.E.right_action[(eta1, S.b_r[lifted])])
            for v_id, eta3 in B_right.members[S.a[cls]]:
                gx, etam = untid(v_id)
                if strand == 0:
                    lifted = S.E.left_action[(
                        tid(gx, S.G.identity[_pr(S.E.left_moment[eta3], 1)]), eta3)]
                    rhs_vals.add(S.E.right_action[(etam, S.b_l[lifted])])
                elif strand == 1:
                    rhs_vals.add(S.E.left_action[(tid(gx, S.b_l[etam]), eta3)])
                else:
                    rhs_vals.add(S.E.left_action[(tid(gx, S.b_r[etam]), eta3)])
            if len(lhs_vals) != 1 or len(rhs_vals) != 1 or lhs_vals != rhs_vals:
                wit = {"class": cls, "lhs": sorted(lhs_vals),
                       "rhs": sorted(rhs_vals)}
                break
        rep.add(f"unit triangle ({label})", wit is None, wit)
    if not rep.ok:
        return rep

    inv = inverse_bibundle(S)
    rep.add("inversion bundle is a Morita equivalence with the opposite",
            is_biprincipal(inv).ok, is_biprincipal(inv).first_failure())

    if check_pentagon:
        pentagon_report(S, B_left, B_right, rep)
    return rep


# ---------------------------------------------------------------------------
# inverses
# ---------------------------------------------------------------------------

def inverse_bibundle(S: StackyGroupoidData) -> Bibundle:
    """Pairs whose composite is a unit, as a bibundle from G to its
    opposite; biprincipality says every object is weakly invertible."""
    G = S.G
    Gop = opposite_groupoid(G)
    carrier, jl, jr = [], {}, {}
    for x in S.E.carrier:
        for m in S.M:
            if S.E.right_moment[x] == S.e[m]:
                c = tid(x, m)
                carrier.append(c)
                jl[c] = _pr(S.E.left_moment[x], 0)
                jr[c] = _pr(S.E.left_moment[x], 1)
    left_action, right_action = {}, {}
    for c in carrier:
        x, m = untid(c)
        for g in G.arrows:
            if G.source[g] == jl[c]:
                u = G.identity[_pr(S.E.left_moment[x], 1)]
                left_action[(g, c)] = tid(S.E.left_action[(tid(g, u), x)], m)
        for g in G.arrows:
            if Gop.target[g] == jr[c]:
                u = G.identity[jl[c]]
                right_action[(c, g)] = tid(S.E.left_action[(tid(u, g), x)], m)
    return Bibundle(G, Gop, tuple(carrier), jl, jr, left_action, right_action)


def strict_inverse_check(S: StackyGroupoidData) -> Report:
    """Search for a strict inversion: a section of the inversion bundle
    whose induced arrow map is a functor to the opposite groupoid."""
    rep = Report()
    G = S.G
    inv = inverse_bibundle(S)
    fibers: dict[str, list[str]] = {x: [] for x in G.objects}
    for c in inv.carrier:
        fibers[inv.left_moment[c]].append(c)
    wit = None
    for x in G.objects:
        if not fibers[x]:
            wit = {"object": x}
            break
    rep.add("every object admits an inverse pair", wit is None, wit)
    if wit:
        return rep

    objs = list(G.objects)
    Gop = opposite_groupoid(G)

    def derive(sigma: dict[str, str]) -> Optional[tuple[dict, dict]]:
        i_obj = {x: inv.right_moment[sigma[x]] for x in objs}
        i_arr: dict[str, str] = {}
        for g in G.arrows:
            moved = inv.left_action[(g, sigma[G.source[g]])]
            sols = [d for (c, d), v in inv.right_action.items()
                    if c == sigma[G.target[g]] and v == moved]
            if len(sols) != 1:
                return None
            i_arr[g] = sols[0]
        for (g, h), c in G.compose.items():
            if Gop.compose[(i_arr[g], i_arr[h])] != i_arr[c]:
                return None
        for x in objs:
            if i_arr[G.identity[x]] != G.identity[i_obj[x]]:
                return None
        return i_obj, i_arr

    def search(k: int, sigma: dict[str, str]) -> Optional[tuple[dict, dict]]:
        if k == len(objs):
            return derive(sigma)
        for c in fibers[objs[k]]:
            sigma[objs[k]] = c
            out = search(k + 1, sigma)
            if out is not None:
                return out
            del sigma[objs[k]]
        return None

    found = search(0, {})
    rep.add("a strict inversion functor exists",
            found is not None,
            None if found is None else
            {"objects": found[0], "arrows": found[1]})
    return rep


# ---------------------------------------------------------------------------
# the correspondence with 2-groupoids
# ---------------------------------------------------------------------------

def from_two_groupoid(X: TwoGroupoidData,
                      reverse_choices: bool = False) -> StackyGroupoidData:
    """Present a 2-groupoid stackily: the arrow groupoid is the groupoid of
    2-arrows between parallel arrows, multiplication is the set of
    triangles, and the associator is read off the unique tetrahedron
    fillers.  With reverse_choices the internal representative picks are
    made in the opposite order; the result must not depend on them."""
    G = bigon_groupoid(X)
    s_map = {g: X.d1_0[g] for g in X.X1}
    t_map = {g: X.d1_1[g] for g in X.X1}
    e = dict(X.s0_0)
    C2 = arrow_chain(G, s_map, t_map, 2)

    def act_second(g2: str, x: str) -> str:
        return X.m[1][(g2, x, X.s1_1[X.d2_2[x]])]

    def act_first(g1: str, x: str) -> str:
        return X.m[0][(x, X.s1_0[X.d2_1[x]], g1)]

    jl = {x: tid(X.d2_2[x], X.d2_0[x]) for x in X.X2}
    jr = {x: X.d2_1[x] for x in X.X2}
    left_action, right_action = {}, {}
    for x in X.X2:
        for h in C2.arrows:
            if C2.source[h] == jl[x]:
                g1, g2 = untid(h)
                left_action[(h, x)] = act_first(g1, act_second(g2, x))
        for g in G.arrows:
            if G.target[g] == jr[x]:
                right_action[(x, g)] = X.m[1][(x, g, X.s1_0[X.d2_2[x]])]
    E = Bibundle(C2, G, X.X2, jl, jr, left_action, right_action)

    B_left, B_right = associator_bundles(G, s_map, t_map, E)
    idset = set(G.identity.values())
    a: dict[str, str] = {}
    pick = max if reverse_choices else min
    for cls in B_left.carrier:
        members = B_left.members[cls]
        if reverse_choices:
            members = list(reversed(members))
        picked = None
        for u_id, eta2 in members:
            eta1, g = untid(u_id)
            if g in idset:
                picked = (eta1, eta2)
                break
        if picked is None:
            raise ValueError(f"no normalized member in class {cls!r}")
        eta1, eta2 = picked
        y, z = X.d2_0[eta1], X.d2_0[eta2]
        eta0 = pick(c for c in X.X2 if X.d2_2[c] == y and X.d2_0[c] == z)
        face2 = X.m[2][(eta0, eta2, eta1)]
        a[cls] = B_right.class_of[(tid(X.s1_0[X.d2_2[eta1]], eta0), face2)]

    b_l = {x: x for x in X.X2 if X.d2_2[x] in set(X.s0_0.values())}
    b_r = {}
    for x in X.X2:
        if X.d2_0[x] in set(X.s0_0.values()):
            w = X.d2_1[x]
            b_r[x] = X.m[3][(x, X.s1_1[w], X.s1_0[w])]
    return StackyGroupoidData(X.X0, G, s_map, t_map, e, E, a, b_l, b_r)


def to_two_groupoid(S: StackyGroupoidData) -> TwoGroupoidData:
    """Glue a 2-groupoid out of a stacky presentation: triangles are the
    elements of the multiplication bundle and tetrahedra commute when the
    associator matches their two composites."""
    G = S.G
    inv_bl = {v: k for k, v in S.b_l.items()}
    inv_br = {v: k for k, v in S.b_r.items()}
    X = TwoGroupoidData(
        S.M, G.objects, S.E.carrier,
        dict(S.s_map), dict(S.t_map),
        {x: _pr(S.E.left_moment[x], 1) for x in S.E.carrier},
        dict(S.E.right_moment),
        {x: _pr(S.E.left_moment[x], 0) for x in S.E.carrier},
        dict(S.e),
        {g: inv_bl[G.identity[g]] for g in G.objects},
        {g: inv_br[G.identity[g]] for g in G.objects})
    B_left, B_right = associator_bundles(G, S.s_map, S.t_map, S.E)

    def commutes(q: tuple[str, str, str, str]) -> bool:
        x0, x1, x2, x3 = q
        idz = G.identity[_pr(S.E.left_moment[x1], 1)]
        idx = G.identity[_pr(S.E.left_moment[x3], 0)]
        left = B_left.class_of.get((tid(x3, idz), x1))
        right = B_right.class_of.get((tid(idx, x0), x2))
        return left is not None and right is not None and S.a.get(left) == right

    solve_filler_tables(X, commutes)
    return X


def from_ordinary_groupoid(K: FiniteGroupoid) -> StackyGroupoidData:
    """A plain groupoid as a stacky one: the presenting groupoid is the unit
    groupoid on its arrows and all the coherence data is forced."""
    G = unit_groupoid(K.arrows)
    s_map = dict(K.source)
    t_map = dict(K.target)
    e = dict(K.identity)
    C2 = arrow_chain(G, s_map, t_map, 2)
    carrier = C2.objects
    jl = {c: c for c in carrier}
    jr = {c: K.compose[untid(c)] for c in carrier}
    left_action = {(C2.identity[c], c): c for c in carrier}
    right_action = {(c, G.identity[jr[c]]): c for c in carrier}
    E = Bibundle(C2, G, carrier, jl, jr, left_action, right_action)
    B_left, B_right = associator_bundles(G, s_map, t_map, E)
    a = {}
    for cls in B_left.carrier:
        match = [c for c in B_right.carrier
                 if B_right.left_moment[c] == B_left.left_moment[cls]
                 and B_right.right_moment[c] == B_left.right_moment[cls]]
        if len(match) != 1:
            raise ValueError("associator is not forced")
        a[cls] = match[0]
    b_l = {tid(u, b): b for (u, b) in map(untid, carrier)
           if u in set(K.identity.values())}
    b_r = {tid(a_, u): a_ for (a_, u) in map(untid, carrier)
           if u in set(K.identity.values())}
    return StackyGroupoidData(K.objects, G, s_map, t_map, e, E, a, b_l, b_r)
