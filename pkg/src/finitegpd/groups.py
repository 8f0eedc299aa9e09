"""Small finite groups used by fixtures (multiplication given by tables)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass
class FiniteGroup:
    elements: tuple[str, ...]
    mul: dict[tuple[str, str], str]
    identity: str

    def inverse(self, a: str) -> str:
        for b in self.elements:
            if self.mul[(a, b)] == self.identity:
                return b
        raise ValueError(f"no inverse for {a!r}")

    def is_abelian(self) -> bool:
        return all(self.mul[(a, b)] == self.mul[(b, a)]
                   for a in self.elements for b in self.elements)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(("1",), {("1", "1"): "1"}, "1")


def cyclic_group(n: int) -> FiniteGroup:
    els = tuple(str(i) for i in range(n))
    mul = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
    return FiniteGroup(els, mul, "0")


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of 0..n-1 written one-line ("120" sends 0->1, 1->2, 2->0)."""
    perms = list(itertools.permutations(range(n)))
    name = {p: "".join(map(str, p)) for p in perms}
    mul = {}
    for p in perms:
        for q in perms:
            comp = tuple(p[q[i]] for i in range(n))  # apply q first, then p
            mul[(name[p], name[q])] = name[comp]
    return FiniteGroup(tuple(sorted(name.values())), mul, name[tuple(range(n))])
