"""Finite groupoids, Hilsum-Skandalis bibundles and their calculus.

Composition conventions follow functions: compose(a, b) means "b first, then
a" and needs source(a) == target(b).  A bibundle carries a left action of one
groupoid and a commuting right action of another; the right-principal ones
(free and transitive right action on the fibers of the left moment map) play
the role of generalized morphisms.

Tuple-valued IDs are encoded as "(a,b,...)" and decoded with a paren-aware
split, so component IDs must have balanced parentheses.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .groups import FiniteGroup
from .report import Report


def tid(*parts: str) -> str:
    return "(" + ",".join(parts) + ")"


def untid(s: str) -> tuple[str, ...]:
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"not a tuple id: {s!r}")
    parts, depth, cur = [], 0, []
    for ch in s[1:-1]:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    parts.append("".join(cur))
    return tuple(parts)


# ---------------------------------------------------------------------------
# groupoids
# ---------------------------------------------------------------------------

@dataclass
class FiniteGroupoid:
    objects: tuple[str, ...]
    arrows: tuple[str, ...]
    source: dict[str, str]
    target: dict[str, str]
    compose: dict[tuple[str, str], str]  # (a, b) with source(a) == target(b)
    identity: dict[str, str]             # object -> identity arrow
    inverse: dict[str, str]

    def __post_init__(self) -> None:
        self.objects = tuple(sorted(self.objects))
        self.arrows = tuple(sorted(self.arrows))

    def hom(self, x: str, y: str) -> list[str]:
        """Arrows from x to y."""
        return [a for a in self.arrows
                if self.source[a] == x and self.target[a] == y]


def verify_groupoid(G: FiniteGroupoid) -> Report:
    rep = Report()
    arrows, objects = set(G.arrows), set(G.objects)

    wit = None
    for a in G.arrows:
        if G.source.get(a) not in objects or G.target.get(a) not in objects:
            wit = {"arrow": a}
            break
    rep.add("source and target defined on every arrow", wit is None, wit)
    if wit:
        return rep

    composable = {(a, b) for a in G.arrows for b in G.arrows
                  if G.source[a] == G.target[b]}
    extra = set(G.compose) - composable
    missing = composable - set(G.compose)
    rep.add("composition defined exactly on composable pairs",
            not extra and not missing,
            {"extra": sorted(map(list, extra))[:3],
             "missing": sorted(map(list, missing))[:3]} or None)

    wit = None
    for (a, b) in sorted(composable & set(G.compose)):
        c = G.compose[(a, b)]
        if c not in arrows or G.source[c] != G.source[b] or G.target[c] != G.target[a]:
            wit = {"pair": [a, b], "composite": c}
            break
    rep.add("composites have the expected endpoints", wit is None, wit)

    wit = None
    for x in G.objects:
        e = G.identity.get(x)
        if e is None or e not in arrows or G.source[e] != x or G.target[e] != x:
            wit = {"object": x, "identity": e}
            break
    rep.add("identity arrows exist with matching endpoints", wit is None, wit)
    if not rep.ok:
        return rep

    wit = None
    for a in G.arrows:
        if (G.compose[(a, G.identity[G.source[a]])] != a
                or G.compose[(G.identity[G.target[a]], a)] != a):
            wit = {"arrow": a}
            break
    rep.add("unit laws", wit is None, wit)

    wit = None
    for (a, b) in sorted(composable):
        for c in G.arrows:
            if G.source[b] != G.target[c]:
                continue
            if G.compose[(G.compose[(a, b)], c)] != G.compose[(a, G.compose[(b, c)])]:
                wit = {"triple": [a, b, c]}
                break
        if wit:
            break
    rep.add("associativity", wit is None, wit)

    wit = None
    for a in G.arrows:
        i = G.inverse.get(a)
        if (i is None or i not in arrows or G.source[i] != G.target[a]
                or G.target[i] != G.source[a]
                or G.compose[(a, i)] != G.identity[G.target[a]]
                or G.compose[(i, a)] != G.identity[G.source[a]]):
            wit = {"arrow": a, "inverse": i}
            break
    rep.add("two-sided inverses", wit is None, wit)
    return rep


def group_groupoid(group: FiniteGroup, obj: str = "*") -> FiniteGroupoid:
    return FiniteGroupoid(
        (obj,), group.elements,
        {g: obj for g in group.elements}, {g: obj for g in group.elements},
        dict(group.mul), {obj: group.identity},
        {g: group.inverse(g) for g in group.elements})


def pair_groupoid(points: Iterable[str]) -> FiniteGroupoid:
    pts = tuple(sorted(points))
    arrows = [tid(a, b) for a in pts for b in pts]  # (a,b): b -> a
    return FiniteGroupoid(
        pts, tuple(arrows),
        {tid(a, b): b for a in pts for b in pts},
        {tid(a, b): a for a in pts for b in pts},
        {(tid(a, b), tid(b, c)): tid(a, c)
         for a in pts for b in pts for c in pts},
        {a: tid(a, a) for a in pts},
        {tid(a, b): tid(b, a) for a in pts for b in pts})


def unit_groupoid(points: Iterable[str]) -> FiniteGroupoid:
    pts = tuple(sorted(points))
    return FiniteGroupoid(
        pts, pts, {p: p for p in pts}, {p: p for p in pts},
        {(p, p): p for p in pts}, {p: p for p in pts}, {p: p for p in pts})


def opposite_groupoid(G: FiniteGroupoid) -> FiniteGroupoid:
    return FiniteGroupoid(
        G.objects, G.arrows, dict(G.target), dict(G.source),
        {(a, b): G.compose[(b, a)] for (b, a) in G.compose},
        dict(G.identity), dict(G.inverse))


def groupoid_isomorphism_search(G: FiniteGroupoid,
                                H: FiniteGroupoid) -> Optional[tuple[dict, dict]]:
    """First isomorphism (object map, arrow map) in canonical search order,
    or None."""
    if len(G.objects) != len(H.objects) or len(G.arrows) != len(H.arrows):
        return None

    def try_objects(obj_map: dict) -> Optional[tuple[dict, dict]]:
        arr_map: dict[str, str] = {}
        used: set[str] = set()

        def extend(k: int) -> Optional[dict]:
            if k == len(G.arrows):
                return dict(arr_map)
            a = G.arrows[k]
            for b in H.arrows:
                if b in used:
                    continue
                if (H.source[b] != obj_map[G.source[a]]
                        or H.target[b] != obj_map[G.target[a]]):
                    continue
                # partial functoriality against already assigned arrows
                ok = True
                for a2, b2 in arr_map.items():
                    if G.source[a] == G.target[a2]:
                        c = G.compose[(a, a2)]
                        if c in arr_map and arr_map[c] != H.compose[(b, b2)]:
                            ok = False
                            break
                    if G.source[a2] == G.target[a]:
                        c = G.compose[(a2, a)]
                        if c in arr_map and arr_map[c] != H.compose[(b2, b)]:
                            ok = False
                            break
                if not ok:
                    continue
                arr_map[a] = b
                used.add(b)
                res = extend(k + 1)
                if res is not None:
                    # final full functor check
                    good = all(H.compose[(res[x], res[y])] == res[z]
                               for (x, y), z in G.compose.items())
                    if good:
                        return res
                del arr_map[a]
                used.discard(b)
            return None

        res = extend(0)
        return (obj_map, res) if res is not None else None

    for perm in itertools.permutations(H.objects):
        obj_map = dict(zip(G.objects, perm))
        if any(len(G.hom(x, y)) != len(H.hom(obj_map[x], obj_map[y]))
               for x in G.objects for y in G.objects):
            continue
        out = try_objects(obj_map)
        if out is not None:
            return out
    return None


def pullback_groupoid(G: FiniteGroupoid, chart: dict[str, str],
                      chart_objects: Iterable[str]) -> tuple[FiniteGroupoid, Report]:
    """Pull G back along a map of object sets.  Arrows over (x, y) are the
    G-arrows chart(y) -> chart(x).  The report flags charts that miss whole
    orbits of G (the pulled-back groupoid then presents something smaller)."""
    objs = tuple(sorted(chart_objects))
    arrows, source, target, compose, identity, inverse = [], {}, {}, {}, {}, {}
    for x in objs:
        for y in objs:
            for g in G.hom(chart[y], chart[x]):
                a = tid(x, g, y)
                arrows.append(a)
                source[a], target[a] = y, x
                inverse[a] = tid(y, G.inverse[g], x)
        identity[x] = tid(x, G.identity[chart[x]], x)
    for a in arrows:
        x, g, y = untid(a)
        for b in arrows:
            y2, h, z = untid(b)
            if y2 == y:
                compose[(a, b)] = tid(x, G.compose[(g, h)], z)
    P = FiniteGroupoid(objs, tuple(arrows), source, target, compose, identity, inverse)
    rep = Report()
    reached = set()
    for x in objs:
        for a in G.arrows:
            if G.source[a] == chart[x]:
                reached.add(G.target[a])
            if G.target[a] == chart[x]:
                reached.add(G.source[a])
        reached.add(chart[x])
    missed = sorted(set(G.objects) - reached)
    rep.add("chart map reaches every orbit", not missed, {"missed_objects": missed} or None)
    return P, rep


# ---------------------------------------------------------------------------
# bibundles
# ---------------------------------------------------------------------------

@dataclass
class Bibundle:
    left: FiniteGroupoid       # acts from the left
    right: FiniteGroupoid      # acts from the right
    carrier: tuple[str, ...]
    left_moment: dict[str, str]    # carrier -> left.objects
    right_moment: dict[str, str]   # carrier -> right.objects
    left_action: dict[tuple[str, str], str]   # (h, e), source(h) == J_l(e)
    right_action: dict[tuple[str, str], str]  # (e, g), target(g) == J_r(e)

    def __post_init__(self) -> None:
        self.carrier = tuple(sorted(self.carrier))


def verify_bibundle(E: Bibundle, principal: bool = True) -> Report:
    rep = Report()
    H, G = E.left, E.right
    car = set(E.carrier)

    wit = None
    for e in E.carrier:
        if E.left_moment.get(e) not in set(H.objects) or E.right_moment.get(e) not in set(G.objects):
            wit = {"element": e}
            break
    rep.add("moment maps defined with values in the object sets", wit is None, wit)
    if wit:
        return rep

    want_left = {(h, e) for h in H.arrows for e in E.carrier
                 if H.source[h] == E.left_moment[e]}
    want_right = {(e, g) for e in E.carrier for g in G.arrows
                  if G.target[g] == E.right_moment[e]}
    rep.add("left action defined exactly where the moments allow",
            set(E.left_action) == want_left,
            {"extra": sorted(map(list, set(E.left_action) - want_left))[:3],
             "missing": sorted(map(list, want_left - set(E.left_action)))[:3]})
    rep.add("right action defined exactly where the moments allow",
            set(E.right_action) == want_right,
            {"extra": sorted(map(list, set(E.right_action) - want_right))[:3],
             "missing": sorted(map(list, want_right - set(E.right_action)))[:3]})
    if not rep.ok:
        return rep

    wit = None
    for (h, e), v in sorted(E.left_action.items()):
        if (v not in car or E.left_moment[v] != H.target[h]
                or E.right_moment[v] != E.right_moment[e]):
            wit = {"pair": [h, e], "value": v}
            break
    rep.add("left action moves the left moment by target and fixes the right moment",
            wit is None, wit)

    wit = None
    for (e, g), v in sorted(E.right_action.items()):
        if (v not in car or E.right_moment[v] != G.source[g]
                or E.left_moment[v] != E.left_moment[e]):
            wit = {"pair": [e, g], "value": v}
            break
    rep.add("right action moves the right moment by source and fixes the left moment",
            wit is None, wit)
    if not rep.ok:
        return rep

    wit = None
    for e in E.carrier:
        if (E.left_action[(H.identity[E.left_moment[e]], e)] != e
                or E.right_action[(e, G.identity[E.right_moment[e]])] != e):
            wit = {"element": e}
            break
    rep.add("unit arrows act trivially", wit is None, wit)

    wit = None
    for (h, e) in E.left_action:
        for h2 in H.arrows:
            if H.source[h2] != H.target[h]:
                continue
            if E.left_action[(H.compose[(h2, h)], e)] != E.left_action[(h2, E.left_action[(h, e)])]:
                wit = {"arrows": [h2, h], "element": e}
                break
        if wit:
            break
    rep.add("left action is associative", wit is None, wit)

    wit = None
    for (e, g) in E.right_action:
        for g2 in G.arrows:
            if G.target[g2] != G.source[g]:
                continue
            if E.right_action[(e, G.compose[(g, g2)])] != E.right_action[(E.right_action[(e, g)], g2)]:
                wit = {"element": e, "arrows": [g, g2]}
                break
        if wit:
            break
    rep.add("right action is associative", wit is None, wit)

    wit = None
    for (h, e) in E.left_action:
        for g in G.arrows:
            if G.target[g] != E.right_moment[e]:
                continue
            if (E.right_action[(E.left_action[(h, e)], g)]
                    != E.left_action[(h, E.right_action[(e, g)])]):
                wit = {"left": h, "element": e, "right": g}
                break
        if wit:
            break
    rep.add("left and right actions commute", wit is None, wit)

    if principal:
        hit = {E.left_moment[e] for e in E.carrier}
        missed = sorted(set(H.objects) - hit)
        rep.add("left moment map is surjective", not missed, {"missed": missed})
        wit = None
        for e in E.carrier:
            for e2 in E.carrier:
                if E.left_moment[e] != E.left_moment[e2]:
                    continue
                movers = [g for (f, g), v in E.right_action.items()
                          if f == e and v == e2]
                if len(movers) != 1:
                    wit = {"pair": [e, e2], "arrows": movers}
                    break
            if wit:
                break
        rep.add("right action is free and transitive on left-moment fibers",
                wit is None, wit)
    return rep


def is_biprincipal(E: Bibundle) -> Report:
    """Principal on both sides: a Morita equivalence witness."""
    rep = verify_bibundle(E, principal=True)
    hit = {E.right_moment[e] for e in E.carrier}
    missed = sorted(set(E.right.objects) - hit)
    rep.add("right moment map is surjective", not missed, {"missed": missed})
    wit = None
    for e in E.carrier:
        for e2 in E.carrier:
            if E.right_moment[e] != E.right_moment[e2]:
                continue
            movers = [h for (h, f), v in E.left_action.items()
                      if f == e and v == e2]
            if len(movers) != 1:
                wit = {"pair": [e, e2], "arrows": movers}
                break
        if wit:
            break
    rep.add("left action is free and transitive on right-moment fibers",
            wit is None, wit)
    return rep


def identity_bibundle(G: FiniteGroupoid) -> Bibundle:
    return Bibundle(
        G, G, G.arrows,
        dict(G.target), dict(G.source),
        {(h, e): G.compose[(h, e)] for h in G.arrows for e in G.arrows
         if G.source[h] == G.target[e]},
        {(e, g): G.compose[(e, g)] for e in G.arrows for g in G.arrows
         if G.target[g] == G.source[e]})


def functor_bibundle(F_obj: dict[str, str], F_arr: dict[str, str],
                     A: FiniteGroupoid, B: FiniteGroupoid) -> Bibundle:
    """The bibundle presenting a functor A -> B: pairs (a-object, B-arrow
    into its image)."""
    carrier, jl, jr = [], {}, {}
    for o in A.objects:
        for b in B.arrows:
            if B.target[b] == F_obj[o]:
                e = tid(o, b)
                carrier.append(e)
                jl[e], jr[e] = o, B.source[b]
    left_action, right_action = {}, {}
    for e in carrier:
        o, b = untid(e)
        for al in A.arrows:
            if A.source[al] == o:
                left_action[(al, e)] = tid(A.target[al], B.compose[(F_arr[al], b)])
        for g in B.arrows:
            if B.target[g] == B.source[b]:
                right_action[(e, g)] = tid(o, B.compose[(b, g)])
    return Bibundle(A, B, tuple(carrier), jl, jr, left_action, right_action)


# ---------------------------------------------------------------------------
# composition (orbit quotient)
# ---------------------------------------------------------------------------

class UnionFind:
    def __init__(self, items: Iterable) -> None:
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass
class ComposedBibundle(Bibundle):
    class_of: dict[tuple[str, str], str] = field(default_factory=dict)
    members: dict[str, list[tuple[str, str]]] = field(default_factory=dict)


def compose_bibundles(E: Bibundle, F: Bibundle,
                      reverse_order: bool = False) -> ComposedBibundle:
    """Quotient of matched pairs by the diagonal middle action,
    (e.b, f) ~ (e, b.f).  Class IDs name the least pair representative
    (the greatest with reverse_order, for order-independence tests)."""
    if E.right != F.left:
        raise ValueError("middle groupoids of a composition must coincide")
    B = E.right
    pre = [(e, f) for e in E.carrier for f in F.carrier
           if E.right_moment[e] == F.left_moment[f]]
    uf = UnionFind(pre)
    by_jr: dict[str, list[str]] = {}
    for e in E.carrier:
        by_jr.setdefault(E.right_moment[e], []).append(e)
    by_jl: dict[str, list[str]] = {}
    for f in F.carrier:
        by_jl.setdefault(F.left_moment[f], []).append(f)
    for b in B.arrows:
        for e in by_jr.get(B.target[b], ()):
            eb = E.right_action[(e, b)]
            for f in by_jl.get(B.source[b], ()):
                uf.union((e, F.left_action[(b, f)]), (eb, f))
    pick = max if reverse_order else min
    classes = uf.classes()
    members: dict[str, list[tuple[str, str]]] = {}
    class_of: dict[tuple[str, str], str] = {}
    carrier, jl, jr = [], {}, {}
    for mem_list in classes.values():
        rep = pick(mem_list)
        cid = tid(*rep)
        carrier.append(cid)
        members[cid] = sorted(mem_list)
        for m in mem_list:
            class_of[m] = cid
        jl[cid] = E.left_moment[rep[0]]
        jr[cid] = F.right_moment[rep[1]]
    left_action, right_action = {}, {}
    for cid in carrier:
        e, f = members[cid][0]
        for h in E.left.arrows:
            if E.left.source[h] == jl[cid]:
                left_action[(h, cid)] = class_of[(E.left_action[(h, e)], f)]
        for g in F.right.arrows:
            if F.right.target[g] == jr[cid]:
                right_action[(cid, g)] = class_of[(e, F.right_action[(f, g)])]
    return ComposedBibundle(E.left, F.right, tuple(carrier), jl, jr,
                            left_action, right_action,
                            class_of=class_of, members=members)


def naive_orbit_classes(E: Bibundle, F: Bibundle) -> list[tuple[tuple[str, str], ...]]:
    """Oracle for the quotient in compose_bibundles: closure of the pairwise
    relation without union-find."""
    B = E.right
    pre = [(e, f) for e in E.carrier for f in F.carrier
           if E.right_moment[e] == F.left_moment[f]]
    related = {p: {p} for p in pre}
    for b in B.arrows:
        for e in E.carrier:
            if E.right_moment[e] != B.target[b]:
                continue
            for f in F.carrier:
                if F.left_moment[f] != B.source[b]:
                    continue
                p, q = (e, F.left_action[(b, f)]), (E.right_action[(e, b)], f)
                related[p].add(q)
                related[q].add(p)
    changed = True
    while changed:
        changed = False
        for p in pre:
            new = set()
            for q in related[p]:
                new |= related[q]
            if not new <= related[p]:
                related[p] |= new
                changed = True
    seen, out = set(), []
    for p in pre:
        cls = tuple(sorted(related[p]))
        if cls not in seen:
            seen.add(cls)
            out.append(cls)
    return sorted(out)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

@dataclass
class BibundleMorphism:
    source: Bibundle
    target: Bibundle
    mapping: dict[str, str]


def verify_bibundle_morphism(phi: BibundleMorphism,
                             expect_bijective: bool = True) -> Report:
    rep = Report()
    E, F = phi.source, phi.target
    rep.add("source and target share the acting groupoids",
            E.left == F.left and E.right == F.right, None)
    wit = None
    for e in E.carrier:
        v = phi.mapping.get(e)
        if v is None or v not in set(F.carrier):
            wit = {"element": e, "value": v}
            break
        if F.left_moment[v] != E.left_moment[e] or F.right_moment[v] != E.right_moment[e]:
            wit = {"element": e, "value": v, "problem": "moments differ"}
            break
    rep.add("total with matching moment maps", wit is None, wit)
    if not rep.ok:
        return rep
    wit = None
    for (h, e), v in sorted(E.left_action.items()):
        if phi.mapping[v] != F.left_action[(h, phi.mapping[e])]:
            wit = {"left": h, "element": e}
            break
    rep.add("commutes with the left action", wit is None, wit)
    wit = None
    for (e, g), v in sorted(E.right_action.items()):
        if phi.mapping[v] != F.right_action[(phi.mapping[e], g)]:
            wit = {"element": e, "right": g}
            break
    rep.add("commutes with the right action", wit is None, wit)
    if expect_bijective:
        inj = len(set(phi.mapping.values())) == len(E.carrier)
        surj = set(phi.mapping.values()) == set(F.carrier)
        rep.add("bijective on carriers", inj and surj,
                None if inj and surj else {"injective": inj, "surjective": surj})
    return rep


def invert_morphism(phi: BibundleMorphism) -> BibundleMorphism:
    inv = {v: k for k, v in phi.mapping.items()}
    if len(inv) != len(phi.mapping):
        raise ValueError("morphism is not injective")
    return BibundleMorphism(phi.target, phi.source, inv)


def compose_morphisms(psi: BibundleMorphism, phi: BibundleMorphism) -> BibundleMorphism:
    """psi after phi."""
    if phi.target is not psi.source and phi.target != psi.source:
        raise ValueError("morphisms do not compose")
    return BibundleMorphism(phi.source, psi.target,
                            {e: psi.mapping[v] for e, v in phi.mapping.items()})


def morphisms_equal(a: BibundleMorphism, b: BibundleMorphism) -> bool:
    return a.mapping == b.mapping


def bibundle_morphism_search(E: Bibundle, F: Bibundle) -> Optional[BibundleMorphism]:
    """First equivariant moment-preserving map E -> F in canonical order."""
    if E.left != F.left or E.right != F.right:
        return None
    order = list(E.carrier)
    assign: dict[str, str] = {}

    def consistent(e: str, x: str) -> bool:
        if F.left_moment[x] != E.left_moment[e] or F.right_moment[x] != E.right_moment[e]:
            return False
        for (h, e2), v in E.left_action.items():
            if e2 in assign and v == e and F.left_action[(h, assign[e2])] != x:
                return False
            if e2 == e and v in assign and F.left_action[(h, x)] != assign[v]:
                return False
        for (e2, g), v in E.right_action.items():
            if e2 in assign and v == e and F.right_action[(assign[e2], g)] != x:
                return False
            if e2 == e and v in assign and F.right_action[(x, g)] != assign[v]:
                return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        e = order[k]
        for x in F.carrier:
            if consistent(e, x):
                assign[e] = x
                if extend(k + 1):
                    return True
                del assign[e]
        return False

    if extend(0):
        return BibundleMorphism(E, F, dict(assign))
    return None


def q_map(src: ComposedBibundle, tgt: ComposedBibundle,
          fn: Callable[[tuple[str, str]], tuple[str, str]],
          name: str = "quotient map") -> BibundleMorphism:
    """Morphism between orbit quotients defined on representatives; checks
    that every member of a class lands in the same target class."""
    mapping: dict[str, str] = {}
    for cid, mems in src.members.items():
        images = set()
        for m in mems:
            im = fn(m)
            cls = tgt.class_of.get(im)
            if cls is None:
                raise ValueError(f"{name}: image {im!r} of {m!r} is not in the target")
            images.add(cls)
        if len(images) != 1:
            raise ValueError(f"{name}: not constant on the class of {cid!r}: {sorted(images)}")
        mapping[cid] = images.pop()
    return BibundleMorphism(src, tgt, mapping)


# ---------------------------------------------------------------------------
# fibered chains over a common base
# ---------------------------------------------------------------------------

def chain_groupoid(factors: list[FiniteGroupoid], smaps: list[dict],
                   tmaps: list[dict]) -> FiniteGroupoid:
    """Iterated fiber product of groupoids over a base set: tuples whose
    neighbouring components match under the given base maps (s of one factor
    against t of the next)."""
    n = len(factors)
    objs = []
    for combo in itertools.product(*[g.objects for g in factors]):
        if all(smaps[i][combo[i]] == tmaps[i + 1][combo[i + 1]] for i in range(n - 1)):
            objs.append(tid(*combo))
    objset = set(objs)
    arrows, source, target, compose, identity, inverse = [], {}, {}, {}, {}, {}
    for combo in itertools.product(*[g.arrows for g in factors]):
        st = tid(*[factors[i].source[combo[i]] for i in range(n)])
        tt = tid(*[factors[i].target[combo[i]] for i in range(n)])
        if st in objset and tt in objset:
            a = tid(*combo)
            arrows.append(a)
            source[a], target[a] = st, tt
            inverse[a] = tid(*[factors[i].inverse[combo[i]] for i in range(n)])
    for a in arrows:
        ca = untid(a)
        for b in arrows:
            cb = untid(b)
            if source[a] == target[b]:
                compose[(a, b)] = tid(*[factors[i].compose[(ca[i], cb[i])]
                                        for i in range(n)])
    for o in objs:
        identity[o] = tid(*[factors[i].identity[untid(o)[i]] for i in range(n)])
    return FiniteGroupoid(tuple(objs), tuple(arrows), source, target,
                          compose, identity, inverse)


def chain_tensor(bundles: list[Bibundle], arities: list[tuple[int, int]],
                 left: FiniteGroupoid, right: FiniteGroupoid) -> Bibundle:
    """Side-by-side product of bibundles between chain groupoids.  Each slot
    consumes arities[i][0] components of a left chain arrow and produces
    arities[i][1] components of a right chain arrow; moments are flattened
    accordingly."""
    def expand(val: str, k: int) -> tuple[str, ...]:
        return (val,) if k == 1 else untid(val)

    lobj, robj = set(left.objects), set(right.objects)
    carrier, jl, jr = [], {}, {}
    for combo in itertools.product(*[b.carrier for b in bundles]):
        flat_l, flat_r = [], []
        for i, b in enumerate(bundles):
            flat_l.extend(expand(b.left_moment[combo[i]], arities[i][0]))
            flat_r.extend(expand(b.right_moment[combo[i]], arities[i][1]))
        lid, rid = tid(*flat_l), tid(*flat_r)
        if lid in lobj and rid in robj:
            e = tid(*combo)
            carrier.append(e)
            jl[e], jr[e] = lid, rid
    left_action, right_action = {}, {}
    for e in carrier:
        combo = untid(e)
        for h in left.arrows:
            if left.source[h] != jl[e]:
                continue
            parts = untid(h)
            out, pos = [], 0
            for i, b in enumerate(bundles):
                k = arities[i][0]
                sub = parts[pos:pos + k]
                pos += k
                act = sub[0] if k == 1 else tid(*sub)
                out.append(b.left_action[(act, combo[i])])
            left_action[(h, e)] = tid(*out)
        for g in right.arrows:
            if right.target[g] != jr[e]:
                continue
            parts = untid(g)
            out, pos = [], 0
            for i, b in enumerate(bundles):
                k = arities[i][1]
                sub = parts[pos:pos + k]
                pos += k
                act = sub[0] if k == 1 else tid(*sub)
                out.append(b.right_action[(combo[i], act)])
            right_action[(e, g)] = tid(*out)
    return Bibundle(left, right, tuple(carrier), jl, jr, left_action, right_action)


# ---------------------------------------------------------------------------
# adjoining strict units along a bibundle
# ---------------------------------------------------------------------------

def adjoin_strict_unit(G: FiniteGroupoid,
                       E: Bibundle) -> tuple[FiniteGroupoid, Bibundle]:
    """Enlarge G by the objects of a unit groupoid M acting on the left of a
    right-principal bibundle E: (M unit) -> G.  Returns the enlarged groupoid
    G' (objects tagged "o:" for G-objects, "u:" for M-points) together with
    the Morita bibundle between G' and G that restricts to E over M."""
    M = E.left
    if set(M.arrows) != set(M.objects):
        raise ValueError("left groupoid of the unit bibundle must be a unit groupoid")
    rep = verify_bibundle(E, principal=True)
    if not rep.ok:
        raise ValueError(f"unit bibundle is not right-principal: {rep.first_failure()}")

    def og(x: str) -> str:
        return f"o:{x}"

    def um(m: str) -> str:
        return f"u:{m}"

    def mover(e: str, f: str) -> str:
        """The unique g with e.g = f (same left-moment fiber)."""
        for g in G.arrows:
            if G.target[g] == E.right_moment[e] and E.right_action[(e, g)] == f:
                return g
        raise ValueError(f"no translation from {e!r} to {f!r}")

    fibers: dict[str, list[str]] = {}
    for e in E.carrier:
        fibers.setdefault(E.left_moment[e], []).append(e)

    # orbit classes of pairs (f_target, f_source) with equal right moments
    pair_rep: dict[tuple[str, str], tuple[str, str]] = {}
    def cls(fp: str, f: str) -> tuple[str, str]:
        key = (fp, f)
        if key in pair_rep:
            return pair_rep[key]
        orbit = []
        for g in G.arrows:
            if G.target[g] == E.right_moment[f]:
                orbit.append((E.right_action[(fp, g)], E.right_action[(f, g)]))
        rep_pair = min(orbit)
        for p in orbit:
            pair_rep[p] = rep_pair
        return rep_pair

    objects = [og(x) for x in G.objects] + [um(m) for m in M.objects]
    arrows: list[str] = []
    source: dict[str, str] = {}
    target: dict[str, str] = {}
    inverse: dict[str, str] = {}
    for g in G.arrows:
        a = f"g:{g}"
        arrows.append(a)
        source[a], target[a] = og(G.source[g]), og(G.target[g])
        inverse[a] = f"g:{G.inverse[g]}"
    for e in E.carrier:
        b = f"e:{e}"   # from the G-object under e to its M-point
        a = f"i:{e}"   # the inverse direction
        arrows.extend([b, a])
        source[b], target[b] = og(E.right_moment[e]), um(E.left_moment[e])
        source[a], target[a] = um(E.left_moment[e]), og(E.right_moment[e])
        inverse[b], inverse[a] = a, b
    cls_ids: dict[tuple[str, str], str] = {}
    for m in M.objects:
        for m2 in M.objects:
            for f in fibers[m]:
                for fp in fibers[m2]:
                    if E.right_moment[f] != E.right_moment[fp]:
                        continue
                    r = cls(fp, f)
                    if r not in cls_ids:
                        a = f"c:{tid(*r)}"
                        cls_ids[r] = a
                        arrows.append(a)
                        source[a] = um(E.left_moment[r[1]])
                        target[a] = um(E.left_moment[r[0]])
                        inverse[a] = f"c:{tid(r[1], r[0])}"
    # fix inverses of class arrows to use canonical representatives
    for r, a in cls_ids.items():
        inverse[a] = cls_ids[cls(r[1], r[0])]

    identity = {og(x): f"g:{G.identity[x]}" for x in G.objects}
    for m in M.objects:
        f = fibers[m][0]
        identity[um(m)] = cls_ids[cls(f, f)]

    def comp(a: str, b: str) -> str:
        ka, va = a.split(":", 1)
        kb, vb = b.split(":", 1)
        if ka == "g" and kb == "g":
            return f"g:{G.compose[(va, vb)]}"
        if ka == "g" and kb == "i":
            # gamma after (m -> J_r(e)): move e by the inverse arrow
            return f"i:{E.right_action[(vb, G.inverse[va])]}"
        if ka == "e" and kb == "g":
            return f"e:{E.right_action[(va, vb)]}"
        if ka == "e" and kb == "i":
            return f"c:{tid(*cls(va, vb))}"
        if ka == "i" and kb == "e":
            return f"g:{mover(va, vb)}"
        if ka == "i" and kb == "c":
            fp, f = untid(vb)
            g = mover(va, fp)
            return f"i:{E.right_action[(f, G.inverse[g])]}"
        if ka == "c" and kb == "e":
            fp, f = untid(va)
            g = mover(f, vb)
            return f"e:{E.right_action[(fp, g)]}"
        if ka == "c" and kb == "c":
            f1p, f1 = untid(va)
            f2p, f2 = untid(vb)
            g = mover(f1, f2p)
            return f"c:{tid(*cls(E.right_action[(f1p, g)], f2))}"
        raise ValueError(f"not composable: {a!r} after {b!r}")

    compose = {}
    for a in arrows:
        for b in arrows:
            if source[a] == target[b]:
                compose[(a, b)] = comp(a, b)
    Gp = FiniteGroupoid(tuple(objects), tuple(arrows), source, target,
                        compose, identity, inverse)

    # Morita bibundle: arrows of G' out of the G-part, G' acting on the left
    carrier = tuple(a for a in arrows if a.split(":", 1)[0] in ("g", "e"))
    jl = {a: target[a] for a in carrier}
    jr = {a: source[a][2:] for a in carrier}
    left_action = {(h, a): compose[(h, a)] for h in arrows for a in carrier
                   if source[h] == target[a]}
    right_action = {(a, g): compose[(a, f"g:{g}")] for a in carrier for g in G.arrows
                    if og(G.target[g]) == source[a]}
    F = Bibundle(Gp, G, carrier, jl, jr, left_action, right_action)
    return Gp, F
