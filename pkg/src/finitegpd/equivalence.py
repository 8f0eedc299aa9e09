"""Equivalences of 2-groupoids: strict maps, boundary-filler pullback
spaces, pullback 2-groupoids, fiber products, and Morita-equivalence
witnesses.

A strict map between 2-groupoids is a levelwise function commuting with
every face, degeneracy and filler table.  Such a map is an equivalence of
degree m when, for each level n, every compatible pair of (a boundary
sphere downstairs filled upstairs, a cell downstairs over it) comes from a
cell upstairs — surjectively below level m and bijectively from level m on.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .bibundle import tid, untid
from .report import Report
from .simplicial import (SimplicialMap, apply_operator, boundary_complex,
                         enumerate_hom)
from .twogroupoid import (TwoGroupoidData, bigon_groupoid,
                          commutative_tetrahedra, groupoid_nerve,
                          solve_filler_tables)
from .bibundle import FiniteGroupoid, groupoid_isomorphism_search


# ---------------------------------------------------------------------------
# strict maps
# ---------------------------------------------------------------------------

@dataclass
class StrictTwoGroupoidMap:
    source: TwoGroupoidData
    target: TwoGroupoidData
    f0: dict[str, str]
    f1: dict[str, str]
    f2: dict[str, str]

    def levels(self) -> tuple[dict[str, str], ...]:
        return (self.f0, self.f1, self.f2)


def identity_strict_map(X: TwoGroupoidData) -> StrictTwoGroupoidMap:
    return StrictTwoGroupoidMap(X, X,
                                {c: c for c in X.X0},
                                {c: c for c in X.X1},
                                {c: c for c in X.X2})


def compose_strict_maps(f: StrictTwoGroupoidMap,
                        g: StrictTwoGroupoidMap) -> StrictTwoGroupoidMap:
    """The composite of f followed by g."""
    if g.source is not f.target and (g.source.X0, g.source.X1, g.source.X2) != \
            (f.target.X0, f.target.X1, f.target.X2):
        raise ValueError("maps are not composable")
    return StrictTwoGroupoidMap(
        f.source, g.target,
        {c: g.f0[v] for c, v in f.f0.items()},
        {c: g.f1[v] for c, v in f.f1.items()},
        {c: g.f2[v] for c, v in f.f2.items()})


def verify_strict_map(f: StrictTwoGroupoidMap) -> Report:
    rep = Report()
    X, Y = f.source, f.target
    levels = ((set(X.X0), set(Y.X0), f.f0), (set(X.X1), set(Y.X1), f.f1),
              (set(X.X2), set(Y.X2), f.f2))
    for n, (dom, cod, comp) in enumerate(levels):
        wit = next((c for c in dom if comp.get(c) not in cod), None)
        rep.add(f"level-{n} component is a total map into the target",
                wit is None, wit and {"cell": wit, "image": comp.get(wit)})
    if not rep.ok:
        return rep

    face_laws = [
        ("source vertices", 1, X.d1_0, Y.d1_0, f.f1, f.f0),
        ("target vertices", 1, X.d1_1, Y.d1_1, f.f1, f.f0),
        ("triangle face 0", 2, X.d2_0, Y.d2_0, f.f2, f.f1),
        ("triangle face 1", 2, X.d2_1, Y.d2_1, f.f2, f.f1),
        ("triangle face 2", 2, X.d2_2, Y.d2_2, f.f2, f.f1),
        ("point identities", 0, X.s0_0, Y.s0_0, f.f0, f.f1),
        ("first arrow degeneracy", 1, X.s1_0, Y.s1_0, f.f1, f.f2),
        ("second arrow degeneracy", 1, X.s1_1, Y.s1_1, f.f1, f.f2),
    ]
    for law, _n, opX, opY, fin, fout in face_laws:
        wit = next((c for c in opX
                    if fout[opX[c]] != opY[fin[c]]), None)
        rep.add(f"map commutes with {law}", wit is None,
                wit and {"cell": wit, "source_then_map": fout[opX[wit]],
                         "map_then_target": opY[fin[wit]]})

    for j in range(4):
        wit = None
        for horn, x in X.m[j].items():
            fh = tuple(f.f2[h] for h in horn)
            if fh not in Y.m[j]:
                wit = {"horn": list(horn), "image_horn": list(fh),
                       "reason": "image horn not in the target filler table"}
                break
            if Y.m[j][fh] != f.f2[x]:
                wit = {"horn": list(horn), "source_filler_image": f.f2[x],
                       "target_filler": Y.m[j][fh]}
                break
        rep.add(f"map commutes with the filler table missing face {j}",
                wit is None, wit)
    return rep


def nerve_map(G: FiniteGroupoid, H: FiniteGroupoid, obj_map: dict[str, str],
              arr_map: dict[str, str]) -> StrictTwoGroupoidMap:
    """The strict map of nerves induced by a functor of groupoids."""
    X, Y = groupoid_nerve(G), groupoid_nerve(H)
    f2 = {}
    for x in X.X2:
        a, b = untid(x)
        f2[x] = tid(arr_map[a], arr_map[b])
    return StrictTwoGroupoidMap(X, Y, dict(obj_map), dict(arr_map), f2)


# ---------------------------------------------------------------------------
# boundary-filler pullback spaces
# ---------------------------------------------------------------------------

@dataclass
class PBSpace:
    n: int
    elements: list[tuple[tuple[str, ...], str]]  # (boundary upstairs, cell downstairs)


def _glued_edge_triples(Z: TwoGroupoidData) -> Iterator[tuple[str, str, str]]:
    """All triples of arrows glued like the three faces of a triangle."""
    by_00: dict[str, list[str]] = {}
    for h in Z.X1:
        by_00.setdefault(Z.d1_0[h], []).append(h)
    for h0 in Z.X1:
        for h1 in by_00.get(Z.d1_0[h0], []):
            for h2 in Z.X1:
                if Z.d1_0[h2] == Z.d1_1[h0] and Z.d1_1[h2] == Z.d1_1[h1]:
                    yield (h0, h1, h2)


def pb_space(f: StrictTwoGroupoidMap, n: int) -> PBSpace:
    """Pairs of a boundary n-sphere in the source and an n-cell of the
    target whose boundary is the image of the sphere."""
    Z, X = f.source, f.target
    if n == 0:
        return PBSpace(0, [((), x) for x in X.X0])
    if n == 1:
        elems = [((a, b), x)
                 for a in Z.X0 for b in Z.X0 for x in X.X1
                 if X.d1_0[x] == f.f0[a] and X.d1_1[x] == f.f0[b]]
        return PBSpace(1, sorted(elems))
    if n == 2:
        by_faces: dict[tuple[str, str, str], list[str]] = {}
        for x in X.X2:
            by_faces.setdefault(X.faces(x), []).append(x)
        elems = []
        for triple in _glued_edge_triples(Z):
            key = tuple(f.f1[h] for h in triple)
            for x in by_faces.get(key, []):
                elems.append((triple, x))
        return PBSpace(2, sorted(elems))
    raise ValueError("level exceeds the truncation")


def pb_image(f: StrictTwoGroupoidMap, n: int, z: str) -> tuple[tuple[str, ...], str]:
    """Where the comparison map sends an n-cell of the source."""
    Z = f.source
    if n == 0:
        return ((), f.f0[z])
    if n == 1:
        return ((Z.d1_0[z], Z.d1_1[z]), f.f1[z])
    if n == 2:
        return (Z.faces(z), f.f2[z])
    raise ValueError("level exceeds the truncation")


def pb_space_simplicial(f: SimplicialMap, n: int) -> PBSpace:
    """The same pullback space computed on truncated simplicial sets by
    enumerating boundary spheres as simplicial maps."""
    Z, X = f.source, f.target
    if n > Z.level:
        raise ValueError("level exceeds the truncation")
    B, _inc = boundary_complex(n, Z.level)
    spheres = enumerate_hom(B, Z)
    elems = []
    for x in X.cells[n]:
        restr = {(k, c): apply_operator(X, x, n, tuple(int(ch) for ch in c))
                 for k in range(B.level + 1) for c in B.cells[k]}
        for g in spheres:
            if all(f.components[k][g.components[k][c]] == restr[(k, c)]
                   for k in range(B.level + 1) for c in B.cells[k]):
                elems.append((g.signature(), x))
    return PBSpace(n, sorted(elems))


# ---------------------------------------------------------------------------
# equivalence checks
# ---------------------------------------------------------------------------

def is_equivalence(f: StrictTwoGroupoidMap, m: int) -> Report:
    """Degree-m equivalence: the comparison maps into the boundary-filler
    pullback spaces are surjective below level m and bijective from level m
    up to the truncation.  Stops at the first failing level."""
    rep = Report()
    srep = verify_strict_map(f)
    rep.add("the comparison is a strict map", srep.ok,
            None if srep.ok else srep.first_failure().as_dict())
    if not rep.ok:
        return rep
    cells = (f.source.X0, f.source.X1, f.source.X2)
    for n in range(3):
        pb = pb_space(f, n)
        images: dict[tuple, list[str]] = {}
        for z in cells[n]:
            images.setdefault(pb_image(f, n, z), []).append(z)
        missed = next((e for e in pb.elements if e not in images), None)
        notion = "surjective" if n < m else "bijective"
        if missed is not None:
            rep.add(f"level-{n} comparison with boundary fillers is {notion}",
                    False, {"unhit": [list(missed[0]), missed[1]]})
            return rep
        if n >= m:
            collision = next((zs for zs in images.values() if len(zs) > 1), None)
            extra = next((e for e in images if e not in set(pb.elements)), None)
            if collision is not None or extra is not None:
                rep.add(f"level-{n} comparison with boundary fillers is bijective",
                        False,
                        {"collision": collision} if collision is not None
                        else {"off_image": list(extra)})
                return rep
        rep.add(f"level-{n} comparison with boundary fillers is {notion}", True)
    return rep


def is_one_equivalence(f: StrictTwoGroupoidMap) -> Report:
    """An equivalence whose object component is a bijection.  Also
    cross-checks that, with bijective objects, surjectivity of the arrow
    component agrees with the level-1 pullback condition."""
    rep = is_equivalence(f, 2)
    vals = list(f.f0.values())
    bij = len(set(vals)) == len(vals) and set(vals) == set(f.target.X0)
    dupes = sorted({v for v in vals if vals.count(v) > 1})
    missed = sorted(set(f.target.X0) - set(vals))
    rep.add("the object component is a bijection", bij,
            None if bij else {"repeated_images": dupes, "unhit_objects": missed})
    if bij:
        arrows_onto = set(f.f1.values()) == set(f.target.X1)
        pb = pb_space(f, 1)
        hit = {pb_image(f, 1, z) for z in f.source.X1}
        pb_onto = all(e in hit for e in pb.elements)
        rep.add("arrow surjectivity agrees with the level-1 pullback condition",
                arrows_onto == pb_onto,
                None if arrows_onto == pb_onto else
                {"arrows_surjective": arrows_onto, "pullback_onto": pb_onto})
    return rep


def strict_inverse_search(f: StrictTwoGroupoidMap) -> Optional[StrictTwoGroupoidMap]:
    """A two-sided strict inverse exists exactly when every component is a
    bijection and the levelwise inverse is again a strict map."""
    inv = []
    for comp, dom in ((f.f0, f.target.X0), (f.f1, f.target.X1),
                      (f.f2, f.target.X2)):
        if len(set(comp.values())) != len(comp) or set(comp.values()) != set(dom):
            return None
        inv.append({v: k for k, v in comp.items()})
    g = StrictTwoGroupoidMap(f.target, f.source, inv[0], inv[1], inv[2])
    return g if verify_strict_map(g).ok else None


# ---------------------------------------------------------------------------
# pullback and fiber product
# ---------------------------------------------------------------------------

def pullback_two_groupoid(X: TwoGroupoidData, Z0, Z1, dZ1_0: dict, dZ1_1: dict,
                          sZ0: dict, f0: dict, f1: dict
                          ) -> tuple[TwoGroupoidData, StrictTwoGroupoidMap]:
    """Refine a 2-groupoid along new points and arrows lying over its own.

    Triangles of the refinement are glued triples of new arrows together
    with a triangle downstairs over their images; tetrahedra commute when
    the downstairs components do.  The projection is always an equivalence,
    and a degree-1 equivalence when f0 is a bijection.
    """
    Z0, Z1 = tuple(sorted(Z0)), tuple(sorted(Z1))
    wit = next((a for a in X.X0 if a not in set(f0.values())), None)
    if wit is not None:
        raise ValueError(f"the object map misses {wit!r}")
    for h in Z1:
        if X.d1_0[f1[h]] != f0[dZ1_0[h]] or X.d1_1[f1[h]] != f0[dZ1_1[h]]:
            raise ValueError(f"arrow {h!r} does not lie over its endpoints")
    for a in Z0:
        if dZ1_0[sZ0[a]] != a or dZ1_1[sZ0[a]] != a or \
                f1[sZ0[a]] != X.s0_0[f0[a]]:
            raise ValueError(f"identity arrow at {a!r} does not lie over the "
                             "downstairs identity")
    by_pair: dict[tuple[str, str], set[str]] = {}
    for h in Z1:
        by_pair.setdefault((dZ1_0[h], dZ1_1[h]), set()).add(f1[h])
    for a in Z0:
        for b in Z0:
            for x in X.X1:
                if X.d1_0[x] == f0[a] and X.d1_1[x] == f0[b] and \
                        x not in by_pair.get((a, b), set()):
                    raise ValueError("no new arrow lies over "
                                     f"({a!r}, {b!r}, {x!r})")

    by_faces: dict[tuple[str, str, str], list[str]] = {}
    for x in X.X2:
        by_faces.setdefault(X.faces(x), []).append(x)
    Z2, d2 = [], ({}, {}, {})
    proj2 = {}
    by_00: dict[str, list[str]] = {}
    for h in Z1:
        by_00.setdefault(dZ1_0[h], []).append(h)
    for h0 in Z1:
        for h1 in by_00.get(dZ1_0[h0], []):
            for h2 in Z1:
                if dZ1_0[h2] != dZ1_1[h0] or dZ1_1[h2] != dZ1_1[h1]:
                    continue
                for x in by_faces.get((f1[h0], f1[h1], f1[h2]), []):
                    z = tid(h0, h1, h2, x)
                    Z2.append(z)
                    for i, h in enumerate((h0, h1, h2)):
                        d2[i][z] = h
                    proj2[z] = x
    s1_0 = {h: tid(h, h, sZ0[dZ1_1[h]], X.s1_0[f1[h]]) for h in Z1}
    s1_1 = {h: tid(sZ0[dZ1_0[h]], h, h, X.s1_1[f1[h]]) for h in Z1}
    Z = TwoGroupoidData(Z0, Z1, tuple(Z2), dict(dZ1_0), dict(dZ1_1),
                        d2[0], d2[1], d2[2], dict(sZ0), s1_0, s1_1)
    commX = commutative_tetrahedra(X)
    solve_filler_tables(Z, lambda q: tuple(proj2[z] for z in q) in commX)
    f = StrictTwoGroupoidMap(Z, X, dict(f0), dict(f1), proj2)
    return Z, f


def arrow_refinement(X: TwoGroupoidData,
                     copies: int) -> tuple[TwoGroupoidData, StrictTwoGroupoidMap]:
    """The pullback along the identity on points and `copies` disjoint
    copies of every non-identity arrow."""
    ids = set(X.s0_0.values())
    Z1, d0, d1, f1 = [], {}, {}, {}
    for x in X.X1:
        reps = 1 if x in ids else copies
        for k in range(reps):
            h = tid(x, str(k))
            Z1.append(h)
            d0[h], d1[h], f1[h] = X.d1_0[x], X.d1_1[x], x
    sZ0 = {p: tid(X.s0_0[p], "0") for p in X.X0}
    return pullback_two_groupoid(X, X.X0, Z1, d0, d1, sZ0,
                                 {p: p for p in X.X0}, f1)


def fiber_product_two_groupoid(f: StrictTwoGroupoidMap,
                               g: StrictTwoGroupoidMap, degree: int = 1
                               ) -> tuple[TwoGroupoidData, StrictTwoGroupoidMap,
                                          StrictTwoGroupoidMap]:
    """Levelwise fiber product of two equivalences over a common target,
    with the two projections."""
    if f.target is not g.target and (f.target.X0, f.target.X1, f.target.X2) != \
            (g.target.X0, g.target.X1, g.target.X2):
        raise ValueError("the maps have different targets")
    for name, h in (("first", f), ("second", g)):
        rep = is_equivalence(h, degree)
        if not rep.ok:
            raise ValueError(f"the {name} map is not an equivalence: "
                             f"{rep.first_failure().law}")
    Z, W = f.source, g.source
    lv = [
        [(z, w) for z in Z.X0 for w in W.X0 if f.f0[z] == g.f0[w]],
        [(z, w) for z in Z.X1 for w in W.X1 if f.f1[z] == g.f1[w]],
        [(z, w) for z in Z.X2 for w in W.X2 if f.f2[z] == g.f2[w]],
    ]
    ids = [{(z, w): tid(z, w) for z, w in lv[n]} for n in range(3)]

    def push(op_z: dict, op_w: dict, n: int, k: int) -> dict:
        return {ids[n][(z, w)]: ids[k][(op_z[z], op_w[w])] for z, w in lv[n]}

    P = TwoGroupoidData(
        tuple(ids[0].values()), tuple(ids[1].values()), tuple(ids[2].values()),
        push(Z.d1_0, W.d1_0, 1, 0), push(Z.d1_1, W.d1_1, 1, 0),
        push(Z.d2_0, W.d2_0, 2, 1), push(Z.d2_1, W.d2_1, 2, 1),
        push(Z.d2_2, W.d2_2, 2, 1),
        push(Z.s0_0, W.s0_0, 0, 1),
        push(Z.s1_0, W.s1_0, 1, 2), push(Z.s1_1, W.s1_1, 1, 2))
    commZ, commW = commutative_tetrahedra(Z), commutative_tetrahedra(W)

    def commutes(q: tuple[str, str, str, str]) -> bool:
        parts = [untid(c) for c in q]
        return (tuple(p[0] for p in parts) in commZ and
                tuple(p[1] for p in parts) in commW)

    solve_filler_tables(P, commutes)
    pZ = StrictTwoGroupoidMap(P, Z,
                              {ids[0][p]: p[0] for p in lv[0]},
                              {ids[1][p]: p[0] for p in lv[1]},
                              {ids[2][p]: p[0] for p in lv[2]})
    pW = StrictTwoGroupoidMap(P, W,
                              {ids[0][p]: p[1] for p in lv[0]},
                              {ids[1][p]: p[1] for p in lv[1]},
                              {ids[2][p]: p[1] for p in lv[2]})
    return P, pZ, pW


# ---------------------------------------------------------------------------
# Morita equivalence
# ---------------------------------------------------------------------------

def verify_morita_witness(X: TwoGroupoidData, Y: TwoGroupoidData,
                          Z: TwoGroupoidData, f: StrictTwoGroupoidMap,
                          g: StrictTwoGroupoidMap, one_morita: bool = False,
                          degree: int = 1) -> Report:
    """Check that X <- Z -> Y is a span of equivalences (with bijective
    object components when one_morita is set)."""
    rep = Report()
    rep.add("the legs share the apex and land in the given ends",
            f.source is Z and g.source is Z and
            f.target is X and g.target is Y)
    for name, h in (("left leg", f), ("right leg", g)):
        leg = is_one_equivalence(h) if one_morita else is_equivalence(h, degree)
        rep.add(f"the {name} is an equivalence", leg.ok,
                None if leg.ok else leg.first_failure().as_dict())
    return rep


def two_groupoid_isomorphism_search(X: TwoGroupoidData, Y: TwoGroupoidData
                                    ) -> Optional[StrictTwoGroupoidMap]:
    """First strict isomorphism in canonical order, by levelwise
    backtracking, or None."""
    for f in _strict_map_candidates(X, Y, bijective=True):
        if verify_strict_map(f).ok:
            return f
    return None


def _strict_map_candidates(X: TwoGroupoidData, Y: TwoGroupoidData,
                           bijective: bool) -> Iterator[StrictTwoGroupoidMap]:
    """Levelwise assignments compatible with faces and degeneracies, in
    canonical order.  Filler-table compatibility is left to the caller."""
    if bijective and (len(X.X0) != len(Y.X0) or len(X.X1) != len(Y.X1) or
                      len(X.X2) != len(Y.X2)):
        return
    by_ends: dict[tuple[str, str], list[str]] = {}
    for y in Y.X1:
        by_ends.setdefault((Y.d1_0[y], Y.d1_1[y]), []).append(y)
    by_faces: dict[tuple[str, str, str], list[str]] = {}
    for y in Y.X2:
        by_faces.setdefault(Y.faces(y), []).append(y)
    pos = {x: k for k, x in enumerate(X.X2)}
    quads_by_max: list[list[tuple[str, str, str, str]]] = [[] for _ in X.X2]
    for q in commutative_tetrahedra(X):
        quads_by_max[max(pos[c] for c in q)].append(q)
    commY = commutative_tetrahedra(Y)

    f0: dict[str, str] = {}
    f1: dict[str, str] = {}
    f2: dict[str, str] = {}

    def assign2(k: int) -> Iterator[StrictTwoGroupoidMap]:
        if k == len(X.X2):
            yield StrictTwoGroupoidMap(X, Y, dict(f0), dict(f1), dict(f2))
            return
        x = X.X2[k]
        fixed = None
        for a in X.X1:
            if X.s1_0[a] == x:
                fixed = Y.s1_0[f1[a]]
            elif X.s1_1[a] == x:
                fixed = Y.s1_1[f1[a]]
        key = tuple(f1[e] for e in X.faces(x))
        for y in by_faces.get(key, []):
            if fixed is not None and y != fixed:
                continue
            if bijective and y in f2.values():
                continue
            f2[x] = y
            if all(tuple(f2[c] for c in q) in commY for q in quads_by_max[k]):
                yield from assign2(k + 1)
            del f2[x]

    def assign1(k: int) -> Iterator[StrictTwoGroupoidMap]:
        if k == len(X.X1):
            yield from assign2(0)
            return
        a = X.X1[k]
        fixed = next((Y.s0_0[f0[p]] for p in X.X0 if X.s0_0[p] == a), None)
        for y in by_ends.get((f0[X.d1_0[a]], f0[X.d1_1[a]]), []):
            if fixed is not None and y != fixed:
                continue
            if bijective and y in f1.values():
                continue
            f1[a] = y
            yield from assign1(k + 1)
            del f1[a]

    def assign0(k: int) -> Iterator[StrictTwoGroupoidMap]:
        if k == len(X.X0):
            yield from assign1(0)
            return
        p = X.X0[k]
        for y in Y.X0:
            if bijective and y in f0.values():
                continue
            f0[p] = y
            yield from assign0(k + 1)
            del f0[p]

    yield from assign0(0)


def bounded_one_morita_search(X: TwoGroupoidData, Y: TwoGroupoidData,
                              size_bound: int) -> Optional[dict]:
    """Bounded, incomplete search for a span of degree-1 equivalences with
    bijective object components between X and Y.

    Cheap obstructions run first: the object counts must agree and the
    bigon groupoids must be isomorphic.  Candidates are X itself and its
    uniform arrow refinements with at most size_bound arrows, mapped to Y
    by exhaustive strict-map search.  Absence within the bound proves
    nothing by itself, but a returned witness is verified.
    """
    if len(X.X0) != len(Y.X0):
        return None
    if groupoid_isomorphism_search(bigon_groupoid(X),
                                   bigon_groupoid(Y)) is None:
        return None
    candidates: list[tuple[TwoGroupoidData, StrictTwoGroupoidMap]] = [
        (X, identity_strict_map(X))]
    copies = 2
    while True:
        n_ids = len(set(X.s0_0.values()))
        size = n_ids + copies * (len(X.X1) - n_ids)
        if size > size_bound:
            break
        candidates.append(arrow_refinement(X, copies))
        copies += 1
    for Z, proj in candidates:
        for g in _strict_map_candidates(Z, Y, bijective=False):
            if verify_strict_map(g).ok and is_one_equivalence(g).ok:
                return {"apex": Z, "left": proj, "right": g}
    return None
