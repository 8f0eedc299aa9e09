"""Finite 2-groupoids as truncated simplicial data with unique 3-fillers.

The data is a 2-truncated simplicial set (points, arrows, triangles) together
with four filler tables m[0..3]: each horn of three glued triangles has a
unique fourth face making a commutative tetrahedron, and the four tables must
carve out one and the same set of commutative tetrahedra.

Geometrically an arrow is an edge from its 0-face vertex to its 1-face
vertex, a triangle has its edge (0,1) as face 2, (0,2) as face 1 and (1,2)
as face 0, and m[1] applied to a horn whose (0,1,2) face is totally
degenerate is vertical composition of 2-arrows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .groups import FiniteGroup
from .report import Report
from .bibundle import FiniteGroupoid, tid, untid
from .simplicial import TruncatedSimplicialSet, coskeleton

Horn = tuple[str, str, str]


@dataclass
class TwoGroupoidData:
    X0: tuple[str, ...]
    X1: tuple[str, ...]
    X2: tuple[str, ...]
    d1_0: dict[str, str]
    d1_1: dict[str, str]
    d2_0: dict[str, str]
    d2_1: dict[str, str]
    d2_2: dict[str, str]
    s0_0: dict[str, str]
    s1_0: dict[str, str]
    s1_1: dict[str, str]
    m: tuple[dict[Horn, str], ...] = field(default_factory=lambda: ({}, {}, {}, {}))

    def __post_init__(self) -> None:
        self.X0 = tuple(sorted(self.X0))
        self.X1 = tuple(sorted(self.X1))
        self.X2 = tuple(sorted(self.X2))

    def faces(self, x: str) -> tuple[str, str, str]:
        return (self.d2_0[x], self.d2_1[x], self.d2_2[x])


def edge_horn_space(X: TwoGroupoidData, j: int) -> list[tuple[str, str]]:
    """Pairs of glued arrows forming a 2-horn missing face j, in increasing
    face order."""
    out = []
    for x in X.X1:
        for y in X.X1:
            if j == 0 and X.d1_1[y] == X.d1_1[x]:      # faces (1, 2)
                out.append((x, y))
            elif j == 1 and X.d1_0[y] == X.d1_1[x]:    # faces (0, 2)
                out.append((x, y))
            elif j == 2 and X.d1_0[y] == X.d1_0[x]:    # faces (0, 1)
                out.append((x, y))
    return out


def edge_horn_fillers(X: TwoGroupoidData, j: int,
                      horn: tuple[str, str]) -> list[str]:
    da, db = [X.d2_0, X.d2_1, X.d2_2][:j] + [X.d2_0, X.d2_1, X.d2_2][j + 1:]
    return [z for z in X.X2 if da[z] == horn[0] and db[z] == horn[1]]


def _glued(X: TwoGroupoidData, q: tuple[str, str, str, str]) -> bool:
    d = (X.d2_0, X.d2_1, X.d2_2)
    for a in range(3):
        for b in range(a + 1, 4):
            if d[a][q[b]] != d[b - 1][q[a]]:
                return False
    return True


def _faces_index(X: TwoGroupoidData) -> list[dict[str, list[str]]]:
    d = (X.d2_0, X.d2_1, X.d2_2)
    out: list[dict[str, list[str]]] = [{}, {}, {}]
    for x in X.X2:
        for i in range(3):
            out[i].setdefault(d[i][x], []).append(x)
    return out


def triangle_horn_space(X: TwoGroupoidData, j: int) -> list[Horn]:
    """Triples of glued triangles forming a 3-horn missing face j, in
    increasing face order."""
    d = (X.d2_0, X.d2_1, X.d2_2)
    by_face = _faces_index(X)
    idx = [i for i in range(4) if i != j]
    out: list[Horn] = []
    partial: list[str] = []

    def extend(k: int) -> None:
        if k == 3:
            out.append(tuple(partial))
            return
        b = idx[k]
        wanted = [(a, d[b - 1][partial[ai]]) for ai, a in enumerate(idx[:k])]
        if wanted:
            cands = min((by_face[a].get(v, []) for a, v in wanted), key=len)
        else:
            cands = X.X2
        for x in cands:
            if all(d[a][x] == v for a, v in wanted):
                partial.append(x)
                extend(k + 1)
                partial.pop()

    extend(0)
    return out


def complete_horn(horn: Horn, j: int, x: str) -> tuple[str, str, str, str]:
    q = list(horn)
    q.insert(j, x)
    return tuple(q)


def commutative_tetrahedra(X: TwoGroupoidData) -> set[tuple[str, str, str, str]]:
    """The graph of the filler tables as a set of full face quadruples,
    read off from m[1]."""
    return {complete_horn(h, 1, x) for h, x in X.m[1].items()}


def degenerate_tetrahedra(X: TwoGroupoidData,
                          x: str) -> list[tuple[str, str, str, str]]:
    """Face quadruples of the three degenerate 3-cells over a triangle x."""
    return [
        (x, x, X.s1_0[X.d2_1[x]], X.s1_0[X.d2_2[x]]),
        (X.s1_0[X.d2_0[x]], x, x, X.s1_1[X.d2_2[x]]),
        (X.s1_1[X.d2_0[x]], X.s1_1[X.d2_1[x]], x, x),
    ]


def verify_two_groupoid(X: TwoGroupoidData, check_coherence: bool = True) -> Report:
    rep = Report()
    X0, X1, X2 = set(X.X0), set(X.X1), set(X.X2)

    maps = [("arrow endpoint 0", X.d1_0, X.X1, X0),
            ("arrow endpoint 1", X.d1_1, X.X1, X0),
            ("triangle face 0", X.d2_0, X.X2, X1),
            ("triangle face 1", X.d2_1, X.X2, X1),
            ("triangle face 2", X.d2_2, X.X2, X1),
            ("point degeneracy", X.s0_0, X.X0, X1),
            ("arrow degeneracy 0", X.s1_0, X.X1, X2),
            ("arrow degeneracy 1", X.s1_1, X.X1, X2)]
    wit = None
    for name, table, dom, cod in maps:
        for c in dom:
            if table.get(c) not in cod:
                wit = {"map": name, "cell": c, "value": table.get(c)}
                break
        if wit:
            break
    rep.add("structure maps total with the right codomains", wit is None, wit)
    if wit:
        return rep

    ids = [("faces of a triangle pairwise glue",
            lambda x: X.d1_0[X.d2_1[x]] == X.d1_0[X.d2_0[x]]
            and X.d1_0[X.d2_2[x]] == X.d1_1[X.d2_0[x]]
            and X.d1_1[X.d2_2[x]] == X.d1_1[X.d2_1[x]], X.X2),
           ("point degeneracy is a loop",
            lambda p: X.d1_0[X.s0_0[p]] == p and X.d1_1[X.s0_0[p]] == p, X.X0),
           ("degeneracy 0 of an arrow has faces (g, g, unit)",
            lambda g: X.d2_0[X.s1_0[g]] == g and X.d2_1[X.s1_0[g]] == g
            and X.d2_2[X.s1_0[g]] == X.s0_0[X.d1_1[g]], X.X1),
           ("degeneracy 1 of an arrow has faces (unit, g, g)",
            lambda g: X.d2_0[X.s1_1[g]] == X.s0_0[X.d1_0[g]]
            and X.d2_1[X.s1_1[g]] == g and X.d2_2[X.s1_1[g]] == g, X.X1),
           ("the two degeneracies of a unit loop agree",
            lambda p: X.s1_0[X.s0_0[p]] == X.s1_1[X.s0_0[p]], X.X0)]
    for name, law, dom in ids:
        wit = None
        for c in dom:
            if not law(c):
                wit = {"cell": c}
                break
        rep.add(name, wit is None, wit)
    if not rep.ok:
        return rep

    for j in range(3):
        wit = None
        for horn in edge_horn_space(X, j):
            if not edge_horn_fillers(X, j, horn):
                wit = {"horn": list(horn)}
                break
        rep.add(f"every 2-horn missing face {j} has a filler", wit is None, wit)

    graphs = []
    for j in range(4):
        space = set(triangle_horn_space(X, j))
        have = set(X.m[j])
        rep.add(f"filler table {j} is defined exactly on the 3-horns missing face {j}",
                space == have,
                None if space == have else
                {"extra": sorted(map(list, have - space))[:3],
                 "missing": sorted(map(list, space - have))[:3]})
        wit = None
        graph = set()
        for horn, x in sorted(X.m[j].items()):
            q = complete_horn(horn, j, x)
            if x not in X2 or not _glued(X, q):
                wit = {"horn": list(horn), "filler": x}
                break
            graph.add(q)
        rep.add(f"filler table {j} produces glued tetrahedra", wit is None, wit)
        graphs.append(graph)
    if not rep.ok:
        return rep

    same = all(g == graphs[0] for g in graphs)
    wit = None
    if not same:
        for j in range(1, 4):
            diff = graphs[0] ^ graphs[j]
            if diff:
                wit = {"tables": [0, j], "tetrahedron": list(sorted(diff)[0])}
                break
    rep.add("the four filler tables define the same commutative tetrahedra",
            same, wit)
    if not same:
        return rep
    comm = graphs[0]

    wit = None
    for x in X.X2:
        for q in degenerate_tetrahedra(X, x):
            if q not in comm:
                wit = {"triangle": x, "tetrahedron": list(q)}
                break
        if wit:
            break
    rep.add("degenerate tetrahedra are commutative", wit is None, wit)

    if check_coherence and rep.ok:
        wit = _coherence_witness(X, comm)
        rep.add("a 4-simplex boundary never has exactly four commutative faces",
                wit is None, wit)
    return rep


def _coherence_witness(X: TwoGroupoidData,
                       comm: set[tuple[str, str, str, str]]) -> Optional[dict]:
    """Search the 4-horns made of commutative tetrahedra for one whose
    forced fifth face fails to commute.  (Two tetrahedra at positions
    a < b of a 4-simplex share the triangle that is face a of the one at b
    and face b-1 of the one at a.)"""
    comm_list = sorted(comm)
    by_coord: list[dict[str, list[tuple[str, str, str, str]]]] = [{} for _ in range(4)]
    by_pair: dict[tuple[int, str, int, str], list[tuple[str, str, str, str]]] = {}
    for q in comm_list:
        for i in range(4):
            by_coord[i].setdefault(q[i], []).append(q)
            for i2 in range(i + 1, 4):
                by_pair.setdefault((i, q[i], i2, q[i2]), []).append(q)

    empty: list[tuple[str, str, str, str]] = []
    for j in range(5):
        b0, b1, b2, b3 = (i for i in range(5) if i != j)
        for q0 in comm_list:
            for q1 in by_coord[b0].get(q0[b1 - 1], empty):
                for q2 in by_pair.get((b0, q0[b2 - 1], b1, q1[b2 - 1]), empty):
                    for q3 in by_pair.get((b0, q0[b3 - 1], b1, q1[b3 - 1]),
                                          empty):
                        if q3[b2] != q2[b3 - 1]:
                            continue
                        assign = dict(zip((b0, b1, b2, b3), (q0, q1, q2, q3)))
                        fifth = tuple(
                            assign[a][j - 1] if a < j else assign[a + 1][j]
                            for a in range(4))
                        if fifth not in comm:
                            return {"missing_face": j,
                                    "forced_face": list(fifth),
                                    "horn": {str(i): list(assign[i])
                                             for i in assign}}
    return None


# ---------------------------------------------------------------------------
# simplicial round trips
# ---------------------------------------------------------------------------

def two_groupoid_to_simplicial(X: TwoGroupoidData,
                               level: int = 3) -> TruncatedSimplicialSet:
    """Realize the data as a truncated simplicial set; the 3-cells are the
    commutative tetrahedra named by their face quadruples, and everything
    above level 3 is filled in by boundary data alone."""
    cells = [tuple(X.X0), tuple(X.X1), tuple(X.X2)]
    face = {(1, 0): dict(X.d1_0), (1, 1): dict(X.d1_1),
            (2, 0): dict(X.d2_0), (2, 1): dict(X.d2_1), (2, 2): dict(X.d2_2)}
    deg = {(0, 0): dict(X.s0_0), (1, 0): dict(X.s1_0), (1, 1): dict(X.s1_1)}
    if level <= 2:
        return TruncatedSimplicialSet(
            level, cells[:level + 1],
            {k: v for k, v in face.items() if k[0] <= level},
            {k: v for k, v in deg.items() if k[0] < level})
    comm = sorted(commutative_tetrahedra(X))
    cells.append(tuple(tid(*q) for q in comm))
    for i in range(4):
        face[(3, i)] = {tid(*q): q[i] for q in comm}
    for i, mk in enumerate([
            lambda x: (x, x, X.s1_0[X.d2_1[x]], X.s1_0[X.d2_2[x]]),
            lambda x: (X.s1_0[X.d2_0[x]], x, x, X.s1_1[X.d2_2[x]]),
            lambda x: (X.s1_1[X.d2_0[x]], X.s1_1[X.d2_1[x]], x, x)]):
        deg[(2, i)] = {x: tid(*mk(x)) for x in X.X2}
    S3 = TruncatedSimplicialSet(3, cells=cells, face=face, degeneracy=deg)
    if level == 3:
        return S3
    return coskeleton(S3, 3, level)


def truncate_to_data(S: TruncatedSimplicialSet) -> TwoGroupoidData:
    """Read 2-groupoid data off a simplicial set whose 3-cells fill every
    3-horn uniquely; raises if a horn has no or several fillers."""
    if S.level < 3:
        raise ValueError("need cells up to level 3")
    X = TwoGroupoidData(
        S.cells[0], S.cells[1], S.cells[2],
        dict(S.face[(1, 0)]), dict(S.face[(1, 1)]),
        dict(S.face[(2, 0)]), dict(S.face[(2, 1)]), dict(S.face[(2, 2)]),
        dict(S.degeneracy[(0, 0)]),
        dict(S.degeneracy[(1, 0)]), dict(S.degeneracy[(1, 1)]))
    m: list[dict[Horn, str]] = [{}, {}, {}, {}]
    for c in S.cells[3]:
        q = tuple(S.face[(3, i)][c] for i in range(4))
        for j in range(4):
            horn = tuple(q[i] for i in range(4) if i != j)
            prev = m[j].get(horn)
            if prev is not None and prev != q[j]:
                raise ValueError(f"3-horn {horn} missing face {j} has several fillers")
            m[j][horn] = q[j]
    for j in range(4):
        for horn in triangle_horn_space(X, j):
            if horn not in m[j]:
                raise ValueError(f"3-horn {horn} missing face {j} has no filler")
    X.m = tuple(m)
    return X


def solve_filler_tables(X: TwoGroupoidData,
                        commutes: Callable[[tuple[str, str, str, str]], bool]) -> None:
    """Fill in the m tables of partially built data by brute force: for each
    horn the unique glued completion satisfying the predicate."""
    m: list[dict[Horn, str]] = [{}, {}, {}, {}]
    d = (X.d2_0, X.d2_1, X.d2_2)
    by_faces: dict[tuple[str, str, str], list[str]] = {}
    for x in X.X2:
        by_faces.setdefault(X.faces(x), []).append(x)
    for j in range(4):
        for horn in triangle_horn_space(X, j):
            # gluing against the horn determines all three faces of a filler
            required = tuple(d[j - 1][horn[c]] if c < j else d[j][horn[c]]
                             for c in range(3))
            sols = [x for x in by_faces.get(required, [])
                    if commutes(complete_horn(horn, j, x))]
            if len(sols) != 1:
                raise ValueError(
                    f"3-horn {horn} missing face {j} has {len(sols)} fillers")
            m[j][horn] = sols[0]
    X.m = tuple(m)


# ---------------------------------------------------------------------------
# bigon groupoids
# ---------------------------------------------------------------------------

def bigon_groupoid(X: TwoGroupoidData) -> FiniteGroupoid:
    """2-arrows between parallel arrows: triangles whose edge (0,1) is a
    unit loop, composed by filling tetrahedra with a totally degenerate
    bottom face."""
    units = set(X.s0_0.values())
    arrows = tuple(sorted(x for x in X.X2 if X.d2_2[x] in units))
    source = {a: X.d2_1[a] for a in arrows}
    target = {a: X.d2_0[a] for a in arrows}
    identity = {g: X.s1_0[g] for g in X.X1}

    def bottom(a: str) -> str:
        return X.s1_0[X.s0_0[X.d1_1[X.d2_1[a]]]]

    compose = {}
    for a in arrows:
        for b in arrows:
            if source[a] == target[b]:
                compose[(a, b)] = X.m[1][(a, b, bottom(b))]
    inverse = {a: X.m[0][(X.s1_0[source[a]], a, bottom(a))] for a in arrows}
    return FiniteGroupoid(X.X1, arrows, source, target, compose, identity, inverse)


def tilde_bigon_iso(X: TwoGroupoidData) -> tuple[FiniteGroupoid, dict[str, str], Report]:
    """The other bigon presentation (unit edge at face 0 instead of face 2),
    with the canonical bijection from the standard one; its groupoid
    structure is transported along the bijection."""
    G = bigon_groupoid(X)
    units = set(X.s0_0.values())
    tilde = tuple(sorted(x for x in X.X2 if X.d2_0[x] in units))

    def phi(a: str) -> str:
        x = X.d2_1[a]
        return X.m[0][(X.s1_1[x], X.s1_0[x], a)]

    def psi(b: str) -> str:
        x = X.d2_1[b]
        return X.m[3][(b, X.s1_1[x], X.s1_0[x])]

    rep = Report()
    fwd = {a: phi(a) for a in G.arrows}
    wit = None
    for a, b in fwd.items():
        if b not in set(tilde):
            wit = {"input": a, "output": b}
            break
    rep.add("bijection lands in the other bigon set", wit is None, wit)
    rep.add("bijection is a bijection",
            sorted(fwd.values()) == list(tilde), None)
    wit = None
    for a in G.arrows:
        if psi(fwd[a]) != a:
            wit = {"input": a}
            break
    for b in tilde:
        if wit is None and fwd.get(psi(b)) != b:
            wit = {"input": b}
    rep.add("the two directions are mutually inverse", wit is None, wit)
    wit = None
    for a in G.arrows:
        b = fwd[a]
        if X.d2_1[b] != X.d2_1[a] or X.d2_2[b] != X.d2_0[a]:
            wit = {"input": a, "output": b}
            break
    rep.add("bijection preserves which arrows the bigon connects", wit is None, wit)
    wit = None
    for g in X.X1:
        if fwd[X.s1_0[g]] != X.s1_1[g]:
            wit = {"arrow": g}
            break
    rep.add("bijection matches the two unit bigons", wit is None, wit)
    if not rep.ok:
        return G, fwd, rep

    bwd = {b: a for a, b in fwd.items()}
    compose = {}
    for b1 in tilde:
        for b2 in tilde:
            if X.d2_1[b1] == X.d2_2[b2]:
                compose[(b1, b2)] = fwd[G.compose[(bwd[b1], bwd[b2])]]
    Gt = FiniteGroupoid(
        X.X1, tilde,
        {b: X.d2_1[b] for b in tilde}, {b: X.d2_2[b] for b in tilde},
        compose, {g: X.s1_1[g] for g in X.X1},
        {b: fwd[G.inverse[bwd[b]]] for b in tilde})
    return Gt, fwd, rep


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

def crossed_module_fixture(G: FiniteGroup, H: FiniteGroup,
                           boundary: dict[str, str],
                           action: dict[tuple[str, str], str]) -> TwoGroupoidData:
    """One-object 2-groupoid of a crossed module: triangles are triples
    (edge01, edge12, h) with the long edge twisted by the image of h.
    Raises with a report if the crossed-module laws fail."""
    rep = Report()
    wit = None
    for h in H.elements:
        for h2 in H.elements:
            if boundary[H.mul[(h, h2)]] != G.mul[(boundary[h], boundary[h2])]:
                wit = {"pair": [h, h2]}
                break
        if wit:
            break
    rep.add("boundary map is a homomorphism",
            wit is None and boundary[H.identity] == G.identity, wit)
    wit = None
    for g in G.elements:
        if action[(g, H.identity)] != H.identity:
            wit = {"element": g}
            break
        for h in H.elements:
            for h2 in H.elements:
                if action[(g, H.mul[(h, h2)])] != H.mul[(action[(g, h)], action[(g, h2)])]:
                    wit = {"element": g, "pair": [h, h2]}
                    break
            if wit:
                break
        if wit:
            break
    for h in H.elements:
        if wit is None and action[(G.identity, h)] != h:
            wit = {"acted_on": h}
    for g in G.elements:
        for g2 in G.elements:
            for h in H.elements:
                if wit is None and action[(G.mul[(g, g2)], h)] != action[(g, action[(g2, h)])]:
                    wit = {"pair": [g, g2], "acted_on": h}
    rep.add("group acts by automorphisms", wit is None, wit)
    wit = None
    for g in G.elements:
        for h in H.elements:
            lhs = boundary[action[(g, h)]]
            rhs = G.mul[(G.mul[(g, boundary[h])], G.inverse(g))]
            if lhs != rhs:
                wit = {"element": g, "acted_on": h}
                break
        if wit:
            break
    rep.add("boundary intertwines the action with conjugation", wit is None, wit)
    wit = None
    for h in H.elements:
        for h2 in H.elements:
            lhs = action[(boundary[h], h2)]
            rhs = H.mul[(H.mul[(h, h2)], H.inverse(h))]
            if lhs != rhs:
                wit = {"pair": [h, h2]}
                break
        if wit:
            break
    rep.add("action through the boundary is conjugation", wit is None, wit)
    if not rep.ok:
        raise ValueError(f"not a crossed module: {rep.first_failure()}")

    pt = "*"
    X2 = tuple(tid(a, b, h) for a in G.elements for b in G.elements
               for h in H.elements)
    d2_0, d2_1, d2_2 = {}, {}, {}
    for x in X2:
        a, b, h = untid(x)
        d2_0[x], d2_2[x] = b, a
        d2_1[x] = G.mul[(G.mul[(boundary[h], a)], b)]
    X = TwoGroupoidData(
        (pt,), G.elements, X2,
        {g: pt for g in G.elements}, {g: pt for g in G.elements},
        d2_0, d2_1, d2_2,
        {pt: G.identity},
        {g: tid(G.identity, g, H.identity) for g in G.elements},
        {g: tid(g, G.identity, H.identity) for g in G.elements})

    def commutes(q: tuple[str, str, str, str]) -> bool:
        h0, h1, h2, h3 = (untid(x)[2] for x in q)
        g01 = untid(q[3])[0]
        return H.mul[(h1, h3)] == H.mul[(h2, action[(g01, h0)])]

    solve_filler_tables(X, commutes)
    return X


def trivial_action(G: FiniteGroup, H: FiniteGroup) -> dict[tuple[str, str], str]:
    return {(g, h): h for g in G.elements for h in H.elements}


def trivial_boundary(G: FiniteGroup, H: FiniteGroup) -> dict[str, str]:
    return {h: G.identity for h in H.elements}


def groupoid_nerve(G: FiniteGroupoid) -> TwoGroupoidData:
    """The 2-groupoid of a 1-groupoid: triangles are composable pairs and
    all tetrahedron fillers are forced by the boundary."""
    X2 = tuple(tid(a, b) for a in G.arrows for b in G.arrows
               if G.source[a] == G.target[b])
    d2_0, d2_1, d2_2 = {}, {}, {}
    for x in X2:
        a, b = untid(x)
        d2_0[x], d2_2[x] = b, a
        d2_1[x] = G.compose[(a, b)]
    X = TwoGroupoidData(
        G.objects, G.arrows, X2,
        dict(G.source), dict(G.target),
        d2_0, d2_1, d2_2,
        dict(G.identity),
        {a: tid(G.identity[G.target[a]], a) for a in G.arrows},
        {a: tid(a, G.identity[G.source[a]]) for a in G.arrows})
    solve_filler_tables(X, lambda q: True)
    return X


def cech_groupoid(cover: dict[str, frozenset | set]) -> tuple[FiniteGroupoid, dict, dict]:
    """Groupoid of a cover of a point set: objects are (patch, point) pairs
    and points carry a unique arrow between any two patches containing them.
    Also returns the object and arrow maps of the projection down to the
    unit groupoid on the underlying points."""
    objects, source, target = [], {}, {}
    arrows, compose, identity, inverse = [], {}, {}, {}
    for U in sorted(cover):
        for x in sorted(cover[U]):
            objects.append(tid(U, x))
    for U in sorted(cover):
        for V in sorted(cover):
            for x in sorted(set(cover[U]) & set(cover[V])):
                a = tid(U, V, x)
                arrows.append(a)
                source[a], target[a] = tid(V, x), tid(U, x)
                inverse[a] = tid(V, U, x)
    for a in arrows:
        U, V, x = untid(a)
        for W in sorted(cover):
            if x in cover[W]:
                compose[(a, tid(V, W, x))] = tid(U, W, x)
        identity[tid(U, x)] = tid(U, U, x)
    G = FiniteGroupoid(tuple(objects), tuple(arrows), source, target,
                       compose, identity, inverse)
    obj_map = {tid(U, x): x for U in cover for x in cover[U]}
    arr_map = {a: untid(a)[2] for a in arrows}
    return G, obj_map, arr_map
