"""Truncated simplicial sets over finite cell sets.

A truncated simplicial set stores cells in levels 0..level together with
total face and degeneracy tables.  Cells are opaque string IDs; each level
is kept sorted so that all enumerations in this package are canonical.

Conventions:
  * face[(n, i)] maps level-n cells to level-(n-1) cells, 0 <= i <= n;
  * degeneracy[(n, i)] maps level-n cells to level-(n+1) cells, 0 <= i <= n;
  * a 1-cell on vertices {a < b} is drawn as an arrow from b to a, so
    face (n=1, i=0) picks the bigger vertex and (n=1, i=1) the smaller.

The standard m-simplex is modelled with weakly monotone integer strings
("00123" style), horns and boundaries as the usual subcomplexes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .report import Report


@dataclass
class TruncatedSimplicialSet:
    level: int
    cells: list[tuple[str, ...]]                      # cells[n], sorted
    face: dict[tuple[int, int], dict[str, str]]       # (n, i) -> map
    degeneracy: dict[tuple[int, int], dict[str, str]]  # (n, i) -> map

    def __post_init__(self) -> None:
        self.cells = [tuple(sorted(level_cells)) for level_cells in self.cells]
        if len(self.cells) != self.level + 1:
            raise ValueError("cells must list levels 0..level")

    def nondegenerate(self, n: int) -> list[str]:
        if n == 0:
            return list(self.cells[0])
        hit: set[str] = set()
        for i in range(n):
            hit.update(self.degeneracy[(n - 1, i)].values())
        return [c for c in self.cells[n] if c not in hit]


@dataclass
class SimplicialMap:
    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    components: list[dict[str, str]]  # components[n]: source cell -> target cell

    def signature(self) -> tuple:
        return tuple(tuple(sorted(comp.items())) for comp in self.components)


# ---------------------------------------------------------------------------
# standard simplices, horns, boundaries
# ---------------------------------------------------------------------------

def _monotone(n: int, m: int) -> list[tuple[int, ...]]:
    """All weakly monotone maps [n] -> [m], as value tuples."""
    return [w for w in itertools.combinations_with_replacement(range(m + 1), n + 1)]


def _wstr(w: Iterable[int]) -> str:
    return "".join(str(v) for v in w)


def standard_simplex(m: int, level: int) -> TruncatedSimplicialSet:
    if m > 9:
        raise ValueError("vertex labels above 9 are not supported")
    cells = []
    face: dict[tuple[int, int], dict[str, str]] = {}
    degeneracy: dict[tuple[int, int], dict[str, str]] = {}
    for n in range(level + 1):
        cells.append(tuple(sorted(_wstr(w) for w in _monotone(n, m))))
    for n in range(1, level + 1):
        for i in range(n + 1):
            face[(n, i)] = {_wstr(w): _wstr(w[:i] + w[i + 1:])
                            for w in _monotone(n, m)}
    for n in range(level):
        for i in range(n + 1):
            degeneracy[(n, i)] = {_wstr(w): _wstr(w[:i + 1] + w[i:])
                                  for w in _monotone(n, m)}
    return TruncatedSimplicialSet(level, cells, face, degeneracy)


def subcomplex(X: TruncatedSimplicialSet,
               keep: Callable[[int, str], bool]) -> tuple[TruncatedSimplicialSet, SimplicialMap]:
    """Full subcomplex on the cells selected by `keep`, with its inclusion.

    The predicate must select a subset closed under faces and degeneracies.
    """
    cells = [tuple(sorted(c for c in X.cells[n] if keep(n, c)))
             for n in range(X.level + 1)]
    chosen = [set(cs) for cs in cells]
    face = {}
    degeneracy = {}
    for (n, i), mp in X.face.items():
        face[(n, i)] = {c: v for c, v in mp.items() if c in chosen[n]}
        for c, v in face[(n, i)].items():
            if v not in chosen[n - 1]:
                raise ValueError(f"subcomplex not closed under face ({n},{i}) at {c!r}")
    for (n, i), mp in X.degeneracy.items():
        degeneracy[(n, i)] = {c: v for c, v in mp.items() if c in chosen[n]}
        for c, v in degeneracy[(n, i)].items():
            if v not in chosen[n + 1]:
                raise ValueError(f"subcomplex not closed under degeneracy ({n},{i}) at {c!r}")
    S = TruncatedSimplicialSet(X.level, cells, face, degeneracy)
    inc = SimplicialMap(S, X, [{c: c for c in S.cells[n]} for n in range(X.level + 1)])
    return S, inc


def horn_complex(m: int, j: int, level: int) -> tuple[TruncatedSimplicialSet, SimplicialMap]:
    """The (m, j)-horn inside the standard m-simplex: cells whose vertex image
    does not contain {0..m} minus {j}."""
    need = set(range(m + 1)) - {j}
    delta = standard_simplex(m, level)
    return subcomplex(delta, lambda n, c: not need <= {int(ch) for ch in c})


def boundary_complex(m: int, level: int) -> tuple[TruncatedSimplicialSet, SimplicialMap]:
    """The boundary of the standard m-simplex: cells missing some vertex."""
    full = set(range(m + 1))
    delta = standard_simplex(m, level)
    return subcomplex(delta, lambda n, c: {int(ch) for ch in c} != full)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_simplicial(X: TruncatedSimplicialSet) -> Report:
    rep = Report()

    # totality + codomain of the structure tables
    ok, wit = True, None
    for (n, i), mp in sorted(X.face.items()):
        dom, cod = set(X.cells[n]), set(X.cells[n - 1])
        if set(mp) != dom:
            ok, wit = False, {"map": f"face({n},{i})", "missing": sorted(dom ^ set(mp))[:3]}
            break
        bad = [c for c in X.cells[n] if mp[c] not in cod]
        if bad:
            ok, wit = False, {"map": f"face({n},{i})", "cell": bad[0], "value": mp[bad[0]]}
            break
    rep.add("face tables total with values in the next level down", ok, wit)

    ok, wit = True, None
    for (n, i), mp in sorted(X.degeneracy.items()):
        dom, cod = set(X.cells[n]), set(X.cells[n + 1])
        if set(mp) != dom:
            ok, wit = False, {"map": f"degeneracy({n},{i})", "missing": sorted(dom ^ set(mp))[:3]}
            break
        bad = [c for c in X.cells[n] if mp[c] not in cod]
        if bad:
            ok, wit = False, {"map": f"degeneracy({n},{i})", "cell": bad[0], "value": mp[bad[0]]}
            break
        if len(set(mp.values())) != len(mp):
            ok, wit = False, {"map": f"degeneracy({n},{i})", "problem": "not injective"}
            break
    rep.add("degeneracy tables total, injective, valued one level up", ok, wit)
    if not rep.ok:
        return rep

    def check(law: str, found: Optional[dict]) -> None:
        rep.add(law, found is None, found)

    # d_i d_j = d_{j-1} d_i  (i < j), on levels where both composites exist
    wit = None
    for n in range(2, X.level + 1):
        for j in range(1, n + 1):
            for i in range(j):
                for c in X.cells[n]:
                    lhs = X.face[(n - 1, i)][X.face[(n, j)][c]]
                    rhs = X.face[(n - 1, j - 1)][X.face[(n, i)][c]]
                    if lhs != rhs:
                        wit = {"level": n, "i": i, "j": j, "cell": c,
                               "d_i d_j": lhs, "d_{j-1} d_i": rhs}
                        break
                if wit:
                    break
            if wit:
                break
        if wit:
            break
    check("simplicial identity d_i d_j = d_{j-1} d_i (i<j)", wit)

    # s_i s_j = s_{j+1} s_i  (i <= j)
    wit = None
    for n in range(0, X.level - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for c in X.cells[n]:
                    lhs = X.degeneracy[(n + 1, i)][X.degeneracy[(n, j)][c]]
                    rhs = X.degeneracy[(n + 1, j + 1)][X.degeneracy[(n, i)][c]]
                    if lhs != rhs:
                        wit = {"level": n, "i": i, "j": j, "cell": c}
                        break
                if wit:
                    break
            if wit:
                break
        if wit:
            break
    check("simplicial identity s_i s_j = s_{j+1} s_i (i<=j)", wit)

    # d_i s_j interchange, all three regimes
    wit = None
    for n in range(0, X.level):
        for j in range(n + 1):
            for i in range(n + 2):
                for c in X.cells[n]:
                    got = X.face[(n + 1, i)][X.degeneracy[(n, j)][c]]
                    if i == j or i == j + 1:
                        want = c
                        law_i = "d_j s_j = id = d_{j+1} s_j"
                    elif i < j:
                        want = X.degeneracy[(n - 1, j - 1)][X.face[(n, i)][c]]
                        law_i = "d_i s_j = s_{j-1} d_i (i<j)"
                    else:
                        want = X.degeneracy[(n - 1, j)][X.face[(n, i - 1)][c]]
                        law_i = "d_i s_j = s_j d_{i-1} (i>j+1)"
                    if got != want:
                        wit = {"level": n, "i": i, "j": j, "cell": c,
                               "rule": law_i, "got": got, "want": want}
                        break
                if wit:
                    break
            if wit:
                break
        if wit:
            break
    check("simplicial identities mixing faces and degeneracies", wit)
    return rep


# ---------------------------------------------------------------------------
# simplicial operators
# ---------------------------------------------------------------------------

def apply_operator(X: TruncatedSimplicialSet, cell: str, m: int,
                   w: tuple[int, ...]) -> str:
    """Image of a level-m cell under the operator classified by the weakly
    monotone map w: [len(w)-1] -> [m] (drop missing values, then duplicate
    repeated ones)."""
    present = set(w)
    y, lvl = cell, m
    for v in sorted((v for v in range(m + 1) if v not in present), reverse=True):
        y = X.face[(lvl, v)][y]
        lvl -= 1
    for p in range(len(w) - 1):
        if w[p] == w[p + 1]:
            y = X.degeneracy[(lvl, p)][y]
            lvl += 1
    return y


def yoneda_restriction(X: TruncatedSimplicialSet, cell: str, m: int,
                       S: TruncatedSimplicialSet, inclusion: SimplicialMap) -> SimplicialMap:
    """Restrict the classifying map of an m-cell along a subcomplex of the
    standard m-simplex (cells of S are monotone digit strings)."""
    comps = []
    for n in range(S.level + 1):
        comps.append({c: apply_operator(X, cell, m, tuple(int(ch) for ch in c))
                      for c in S.cells[n]})
    return SimplicialMap(S, X, comps)


# ---------------------------------------------------------------------------
# hom enumeration
# ---------------------------------------------------------------------------

def _degeneracy_decomposition(S: TruncatedSimplicialSet):
    """For every cell, either mark it nondegenerate or record the minimal
    (i, base) with cell = s_i(base)."""
    decomp: dict[tuple[int, str], Optional[tuple[int, str]]] = {}
    for n in range(S.level + 1):
        rev: dict[str, tuple[int, str]] = {}
        for i in range(n):
            for b, v in sorted(S.degeneracy[(n - 1, i)].items()):
                if v not in rev:
                    rev[v] = (i, b)
        for c in S.cells[n]:
            decomp[(n, c)] = rev.get(c)
    return decomp


def enumerate_hom(S: TruncatedSimplicialSet,
                  X: TruncatedSimplicialSet) -> list[SimplicialMap]:
    """All simplicial maps S -> X, in canonical (lexicographic) order.

    Backtracks over nondegenerate cells of S level by level; images of
    degenerate cells are forced and every structure-map compatibility is
    verified before descending a level.
    """
    if S.level != X.level:
        raise ValueError("hom enumeration requires equal truncation levels")
    decomp = _degeneracy_decomposition(S)
    nondeg = [S.nondegenerate(n) for n in range(S.level + 1)]
    results: list[SimplicialMap] = []
    assign: list[dict[str, str]] = [dict() for _ in range(S.level + 1)]

    def complete_level(n: int) -> bool:
        """Force degenerate-cell images at level n, then verify all face and
        degeneracy maps into/out of level n that are fully determined."""
        for c in S.cells[n]:
            d = decomp[(n, c)]
            if d is None:
                continue
            i, b = d
            assign[n][c] = X.degeneracy[(n - 1, i)][assign[n - 1][b]]
        for c in S.cells[n]:
            fc = assign[n][c]
            if n > 0:
                for i in range(n + 1):
                    if X.face[(n, i)][fc] != assign[n - 1][S.face[(n, i)][c]]:
                        return False
        if n > 0:
            for i in range(n):
                for b in S.cells[n - 1]:
                    if X.degeneracy[(n - 1, i)][assign[n - 1][b]] != assign[n][S.degeneracy[(n - 1, i)][b]]:
                        return False
        return True

    def extend(n: int, k: int) -> None:
        if n > S.level:
            results.append(SimplicialMap(S, X, [dict(a) for a in assign]))
            return
        if k == len(nondeg[n]):
            if complete_level(n):
                extend(n + 1, 0)
            # roll back forced degenerate assignments
            for c in S.cells[n]:
                if decomp[(n, c)] is not None:
                    assign[n].pop(c, None)
            return
        c = nondeg[n][k]
        for x in X.cells[n]:
            if n > 0 and any(X.face[(n, i)][x] != assign[n - 1][S.face[(n, i)][c]]
                             for i in range(n + 1)):
                continue
            assign[n][c] = x
            extend(n, k + 1)
            del assign[n][c]

    extend(0, 0)
    return results


# ---------------------------------------------------------------------------
# Kan conditions
# ---------------------------------------------------------------------------

@dataclass
class KanResult:
    m: int
    j: int
    status: str  # "HOLDS_UNIQUELY" | "HOLDS" | "FAILS"
    witness: Optional[dict] = None


def check_kan(X: TruncatedSimplicialSet, m: int, j: int) -> KanResult:
    """Horn-filling at the (m, j)-horn: restriction of m-cells to the horn,
    compared against all maps from the horn."""
    if not (1 <= m <= X.level):
        raise ValueError(f"horn dimension {m} outside truncation range")
    horn, inc = horn_complex(m, j, X.level)
    horn_maps = enumerate_hom(horn, X)
    fillers: dict[tuple, list[str]] = {}
    for x in X.cells[m]:
        sig = yoneda_restriction(X, x, m, horn, inc).signature()
        fillers.setdefault(sig, []).append(x)
    unfilled = None
    multiple = None
    for hm in horn_maps:
        got = fillers.get(hm.signature(), [])
        if not got and unfilled is None:
            unfilled = {"horn": {f"dim{n}": hm.components[n] for n in range(len(hm.components))}}
        if len(got) > 1 and multiple is None:
            multiple = {"fillers": got,
                        "horn": {f"dim{n}": hm.components[n] for n in range(len(hm.components))}}
    if unfilled is not None:
        return KanResult(m, j, "FAILS", unfilled)
    if multiple is not None:
        return KanResult(m, j, "HOLDS", multiple)
    return KanResult(m, j, "HOLDS_UNIQUELY")


def verify_n_groupoid(X: TruncatedSimplicialSet, n: int, up_to: int,
                      unique_from: Optional[int] = None) -> Report:
    """Kan conditions for an n-groupoid: fillers for every horn of dimension
    1..up_to, unique fillers from dimension `unique_from` (default n+1) on.

    The uniqueness threshold is exposed because index conventions for where
    unique filling kicks in differ in the literature; n+1 is the choice under
    which 2-groupoid data has unique 3-horn fillers.
    """
    if unique_from is None:
        unique_from = n + 1
    rep = Report()
    rep.extend(verify_simplicial(X))
    for m in range(1, up_to + 1):
        for j in range(m + 1):
            res = check_kan(X, m, j)
            need_unique = m >= unique_from
            if need_unique:
                rep.add(f"unique horn filling Kan!({m},{j})",
                        res.status == "HOLDS_UNIQUELY", res.witness)
            else:
                rep.add(f"horn filling Kan({m},{j})",
                        res.status in ("HOLDS", "HOLDS_UNIQUELY"), res.witness)
    return rep


# ---------------------------------------------------------------------------
# skeleton and coskeleton
# ---------------------------------------------------------------------------

def _ez_decompose(X: TruncatedSimplicialSet, n: int, cell: str,
                  rev: dict[tuple[int, int], dict[str, str]]):
    """Write a cell as a (surjection, nondegenerate base) pair: returns
    (base_level, base, surj) with surj a value tuple [n] ->> [base_level]."""
    surj = tuple(range(n + 1))
    cur, lvl = cell, n
    while lvl > 0:
        peeled = None
        for i in range(lvl):
            b = rev[(lvl - 1, i)].get(cur)
            if b is not None:
                peeled = (i, b)
                break
        if peeled is None:
            break
        i, b = peeled
        dup = tuple(p if p <= i else p - 1 for p in range(lvl + 1))
        surj = tuple(dup[v] for v in surj)
        cur, lvl = b, lvl - 1
    return lvl, cur, surj


def _rev_degeneracies(X: TruncatedSimplicialSet):
    return {key: {v: b for b, v in mp.items()} for key, mp in X.degeneracy.items()}


def _surjections(n: int, j: int) -> list[tuple[int, ...]]:
    """Weakly monotone surjections [n] ->> [j]."""
    return [w for w in _monotone(n, j) if set(w) == set(range(j + 1))]


def skeleton(X: TruncatedSimplicialSet, k: int,
             level: Optional[int] = None) -> TruncatedSimplicialSet:
    """Keep levels 0..k and fill the levels above with formal degeneracies
    of the nondegenerate cells below."""
    if level is None:
        level = X.level
    if k > X.level:
        raise ValueError("skeleton degree above truncation level")
    rev = _rev_degeneracies(X)
    bases = [(j, b) for j in range(k + 1) for b in X.nondegenerate(j)]

    def pid(b: str, t: tuple[int, ...]) -> str:
        return f"{b}~{_wstr(t)}"

    cells = [tuple(X.cells[n]) for n in range(k + 1)]
    pair_at: list[dict[str, tuple[str, int, tuple[int, ...]]]] = [dict() for _ in range(level + 1)]
    for n in range(k + 1, level + 1):
        lv = []
        for j, b in bases:
            for t in _surjections(n, j):
                cid = pid(b, t)
                lv.append(cid)
                pair_at[n][cid] = (b, j, t)
        cells.append(tuple(sorted(lv)))

    def realize(j: int, b: str, t: tuple[int, ...], n: int) -> str:
        """Cell named by (base, surjection) at level n (an X-cell if n <= k)."""
        if n <= k:
            return apply_operator(X, b, j, t)
        return pid(b, t)

    def normalize(j: int, b: str, t: tuple[int, ...]):
        """Re-express after composing with a coface: drop unused values and
        peel degeneracies of the new base inside X."""
        vals = sorted(set(t))
        if len(vals) < j + 1:
            b = apply_operator(X, b, j, tuple(vals))
            pos = {v: p for p, v in enumerate(vals)}
            t = tuple(pos[v] for v in t)
            j = len(vals) - 1
        j2, b2, u = _ez_decompose(X, j, b, rev)
        return j2, b2, tuple(u[v] for v in t)

    face = {key: dict(mp) for key, mp in X.face.items() if key[0] <= k}
    degeneracy = {key: dict(mp) for key, mp in X.degeneracy.items() if key[0] < k}
    for n in range(k, level):
        for i in range(n + 1):
            mp = {}
            for c in cells[n]:
                if n <= k:
                    j, b, t = _ez_decompose(X, n, c, rev)
                else:
                    b, j, t = pair_at[n][c]
                t2 = t[:i + 1] + t[i:]
                mp[c] = realize(j, b, t2, n + 1)
            degeneracy[(n, i)] = mp
    for n in range(k + 1, level + 1):
        for i in range(n + 1):
            mp = {}
            for c in cells[n]:
                b, j, t = pair_at[n][c]
                j2, b2, t2 = normalize(j, b, t[:i] + t[i + 1:])
                mp[c] = realize(j2, b2, t2, n - 1)
            face[(n, i)] = mp
    return TruncatedSimplicialSet(level, cells, face, degeneracy)


def coskeleton(X: TruncatedSimplicialSet, k: int, level: int) -> TruncatedSimplicialSet:
    """Fill levels above k with boundary-compatible tuples of lower cells
    (faces become projections)."""
    cells = [tuple(X.cells[n]) for n in range(min(k, X.level) + 1)]
    face = {key: dict(mp) for key, mp in X.face.items() if key[0] <= k}
    degeneracy = {key: dict(mp) for key, mp in X.degeneracy.items() if key[0] < k}

    def tup_id(parts: tuple[str, ...]) -> str:
        return "(" + ",".join(parts) + ")"

    for n in range(k + 1, level + 1):
        prev = cells[n - 1]
        new = []
        comp_of: dict[str, tuple[str, ...]] = {}
        partial: list[str] = []

        def extend_tuple() -> None:
            b = len(partial)
            if b == n + 1:
                ys = tuple(partial)
                cid = tup_id(ys)
                new.append(cid)
                comp_of[cid] = ys
                return
            for y in prev:
                if all(face[(n - 1, a)][y] == face[(n - 1, b - 1)][partial[a]]
                       for a in range(b)):
                    partial.append(y)
                    extend_tuple()
                    partial.pop()

        extend_tuple()
        cells.append(tuple(sorted(new)))
        for i in range(n + 1):
            face[(n, i)] = {cid: ys[i] for cid, ys in comp_of.items()}
        # degeneracies landing in this level, defined from n-1
        lvl = n - 1
        for i in range(lvl + 1):
            mp = {}
            for x in cells[lvl]:
                comps = []
                for jj in range(n + 1):
                    if jj in (i, i + 1):
                        comps.append(x)
                    elif jj < i:
                        comps.append(degeneracy[(lvl - 1, i - 1)][face[(lvl, jj)][x]])
                    else:
                        comps.append(degeneracy[(lvl - 1, i)][face[(lvl, jj - 1)][x]])
                cid = tup_id(tuple(comps))
                if cid not in comp_of:
                    raise ValueError(
                        f"degeneracy image {cid!r} is not boundary-compatible; input is not "
                        f"{k}-truncatable")
                mp[x] = cid
            degeneracy[(lvl, i)] = mp
    return TruncatedSimplicialSet(level, cells, face, degeneracy)


def simplicial_map_verify(f: SimplicialMap) -> Report:
    """Check that components commute with faces and degeneracies and are
    total with values in the target."""
    rep = Report()
    S, X = f.source, f.target
    wit = None
    for n in range(S.level + 1):
        if set(f.components[n]) != set(S.cells[n]):
            wit = {"level": n, "problem": "component not total"}
            break
        for c in S.cells[n]:
            if f.components[n][c] not in set(X.cells[n]):
                wit = {"level": n, "cell": c, "problem": "value outside target"}
                break
        if wit:
            break
    rep.add("map components total with values in target", wit is None, wit)
    if wit:
        return rep
    wit = None
    for (n, i), mp in sorted(S.face.items()):
        for c, v in mp.items():
            if X.face[(n, i)][f.components[n][c]] != f.components[n - 1][v]:
                wit = {"face": [n, i], "cell": c}
                break
        if wit:
            break
    rep.add("map commutes with faces", wit is None, wit)
    wit = None
    for (n, i), mp in sorted(S.degeneracy.items()):
        for c, v in mp.items():
            if X.degeneracy[(n, i)][f.components[n][c]] != f.components[n + 1][v]:
                wit = {"degeneracy": [n, i], "cell": c}
                break
        if wit:
            break
    rep.add("map commutes with degeneracies", wit is None, wit)
    return rep
