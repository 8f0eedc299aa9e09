"""JSON documents for every object the command line handles.

A document is a JSON object with "format_version", "kind" and a per-kind
payload.  Emission is canonical: sorted keys, no floats, a trailing
newline — identical objects serialize to identical bytes.  Pair-keyed
tables (composition, actions) use "a|b" keys, so cell identifiers must not
contain the bar character.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Callable

from .bibundle import Bibundle, FiniteGroupoid
from .equivalence import StrictTwoGroupoidMap
from .simplicial import TruncatedSimplicialSet
from .stacky import StackyGroupoidData
from .twogroupoid import TwoGroupoidData

FORMAT_VERSION = "1"

KINDS = ("simplicial", "two_groupoid", "groupoid", "bibundle", "stacky", "map")


class DocumentError(ValueError):
    """Schema violation, carrying the JSON path of the offending field."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class Document:
    kind: str
    value: Any


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _need(obj: dict, key: str, typ, path: str):
    if key not in obj:
        raise DocumentError(f"{path}.{key}", "missing field")
    v = obj[key]
    if not isinstance(v, typ):
        raise DocumentError(f"{path}.{key}",
                            f"expected {typ.__name__}, got {type(v).__name__}")
    return v


def _id_list(obj: dict, key: str, path: str) -> tuple[str, ...]:
    v = _need(obj, key, list, path)
    for i, c in enumerate(v):
        if not isinstance(c, str):
            raise DocumentError(f"{path}.{key}[{i}]", "identifiers are strings")
        if "|" in c:
            raise DocumentError(f"{path}.{key}[{i}]",
                                "identifiers must not contain '|'")
    if len(set(v)) != len(v):
        raise DocumentError(f"{path}.{key}", "duplicate identifier")
    return tuple(v)


def _total_map(obj: dict, key: str, dom, cod, path: str) -> dict[str, str]:
    v = _need(obj, key, dict, path)
    for c in dom:
        if c not in v:
            raise DocumentError(f"{path}.{key}.{c}", "map not total")
    for c, img in v.items():
        if c not in dom:
            raise DocumentError(f"{path}.{key}.{c}", "key outside the domain")
        if img not in cod:
            raise DocumentError(f"{path}.{key}.{c}",
                                f"dangling identifier {img!r}")
    return dict(v)


def _pair_table(obj: dict, key: str, cod, path: str,
                arity: int = 2) -> dict[tuple, str]:
    v = _need(obj, key, dict, path)
    out = {}
    for k, img in v.items():
        parts = k.split("|")
        if len(parts) != arity:
            raise DocumentError(f"{path}.{key}.{k}",
                                f"key must have {arity} '|'-separated parts")
        if img not in cod:
            raise DocumentError(f"{path}.{key}.{k}",
                                f"dangling identifier {img!r}")
        out[tuple(parts) if arity > 2 else (parts[0], parts[1])] = img
    return out


def _emit_pairs(table: dict) -> dict[str, str]:
    return {"|".join(k): v for k, v in table.items()}


# ---------------------------------------------------------------------------
# per-kind payloads
# ---------------------------------------------------------------------------

def _groupoid_payload(G: FiniteGroupoid) -> dict:
    return {
        "objects": list(G.objects), "arrows": list(G.arrows),
        "source": G.source, "target": G.target,
        "compose": _emit_pairs(G.compose),
        "identity": G.identity, "inverse": G.inverse,
    }


def _parse_groupoid(obj: dict, path: str) -> FiniteGroupoid:
    objects = _id_list(obj, "objects", path)
    arrows = _id_list(obj, "arrows", path)
    G = FiniteGroupoid(
        objects, arrows,
        _total_map(obj, "source", set(arrows), set(objects), path),
        _total_map(obj, "target", set(arrows), set(objects), path),
        _pair_table(obj, "compose", set(arrows), path),
        _total_map(obj, "identity", set(objects), set(arrows), path),
        _total_map(obj, "inverse", set(arrows), set(arrows), path))
    for (a, b) in G.compose:
        if a not in set(arrows) or b not in set(arrows):
            raise DocumentError(f"{path}.compose.{a}|{b}", "dangling identifier")
    return G


def _two_groupoid_payload(X: TwoGroupoidData) -> dict:
    return {
        "points": list(X.X0), "arrows": list(X.X1), "triangles": list(X.X2),
        "d1_0": X.d1_0, "d1_1": X.d1_1,
        "d2_0": X.d2_0, "d2_1": X.d2_1, "d2_2": X.d2_2,
        "s0_0": X.s0_0, "s1_0": X.s1_0, "s1_1": X.s1_1,
        "m": [_emit_pairs(t) for t in X.m],
    }


def _parse_two_groupoid(obj: dict, path: str) -> TwoGroupoidData:
    X0 = _id_list(obj, "points", path)
    X1 = _id_list(obj, "arrows", path)
    X2 = _id_list(obj, "triangles", path)
    s0, s1, s2 = set(X0), set(X1), set(X2)
    ms = _need(obj, "m", list, path)
    if len(ms) != 4:
        raise DocumentError(f"{path}.m", "expected four filler tables")
    tables = tuple(_pair_table({"m": t}, "m", s2, f"{path}.m[{j}]", arity=3)
                   for j, t in enumerate(ms))
    X = TwoGroupoidData(
        X0, X1, X2,
        _total_map(obj, "d1_0", s1, s0, path),
        _total_map(obj, "d1_1", s1, s0, path),
        _total_map(obj, "d2_0", s2, s1, path),
        _total_map(obj, "d2_1", s2, s1, path),
        _total_map(obj, "d2_2", s2, s1, path),
        _total_map(obj, "s0_0", s0, s1, path),
        _total_map(obj, "s1_0", s1, s2, path),
        _total_map(obj, "s1_1", s1, s2, path),
        tables)
    for j, table in enumerate(X.m):
        for horn in table:
            for h in horn:
                if h not in s2:
                    raise DocumentError(f"{path}.m[{j}].{'|'.join(horn)}",
                                        f"dangling identifier {h!r}")
    return X


def _simplicial_payload(S: TruncatedSimplicialSet) -> dict:
    return {
        "level": S.level,
        "cells": [list(cs) for cs in S.cells],
        "face": {f"{n},{i}": mp for (n, i), mp in sorted(S.face.items())},
        "degeneracy": {f"{n},{i}": mp
                       for (n, i), mp in sorted(S.degeneracy.items())},
    }


def _parse_simplicial(obj: dict, path: str) -> TruncatedSimplicialSet:
    level = _need(obj, "level", int, path)
    raw = _need(obj, "cells", list, path)
    if len(raw) != level + 1:
        raise DocumentError(f"{path}.cells", "expected one list per level")
    cells = [_id_list({"c": cs}, "c", f"{path}.cells[{n}]")
             for n, cs in enumerate(raw)]

    def op_maps(key: str, pairs: list[tuple[int, int]], down: bool):
        raw_maps = _need(obj, key, dict, path)
        out = {}
        for n, i in pairs:
            k = f"{n},{i}"
            if k not in raw_maps:
                raise DocumentError(f"{path}.{key}.{k}", "missing operator")
            cod = set(cells[n - 1 if down else n + 1])
            out[(n, i)] = _total_map(raw_maps, k, set(cells[n]), cod,
                                     f"{path}.{key}")
        return out

    face = op_maps("face", [(n, i) for n in range(1, level + 1)
                            for i in range(n + 1)], down=True)
    degeneracy = op_maps("degeneracy", [(n, i) for n in range(level)
                                        for i in range(n + 1)], down=False)
    return TruncatedSimplicialSet(level, cells, face, degeneracy)


def _bibundle_payload(E: Bibundle) -> dict:
    return {
        "left": _groupoid_payload(E.left),
        "right": _groupoid_payload(E.right),
        "carrier": list(E.carrier),
        "left_moment": E.left_moment, "right_moment": E.right_moment,
        "left_action": _emit_pairs(E.left_action),
        "right_action": _emit_pairs(E.right_action),
    }


def _parse_bibundle(obj: dict, path: str) -> Bibundle:
    left = _parse_groupoid(_need(obj, "left", dict, path), f"{path}.left")
    right = _parse_groupoid(_need(obj, "right", dict, path), f"{path}.right")
    carrier = _id_list(obj, "carrier", path)
    cs = set(carrier)
    E = Bibundle(
        left, right, carrier,
        _total_map(obj, "left_moment", cs, set(left.objects), path),
        _total_map(obj, "right_moment", cs, set(right.objects), path),
        _pair_table(obj, "left_action", cs, path),
        _pair_table(obj, "right_action", cs, path))
    for (h, e) in E.left_action:
        if h not in set(left.arrows) or e not in cs:
            raise DocumentError(f"{path}.left_action.{h}|{e}",
                                "dangling identifier")
    for (e, g) in E.right_action:
        if e not in cs or g not in set(right.arrows):
            raise DocumentError(f"{path}.right_action.{e}|{g}",
                                "dangling identifier")
    return E


def _stacky_payload(S: StackyGroupoidData) -> dict:
    return {
        "points": list(S.M),
        "groupoid": _groupoid_payload(S.G),
        "s_map": S.s_map, "t_map": S.t_map, "e": S.e,
        "multiplication": _bibundle_payload(S.E),
        "associator": S.a,
        "left_unitor": S.b_l, "right_unitor": S.b_r,
    }


def _parse_stacky(obj: dict, path: str) -> StackyGroupoidData:
    M = _id_list(obj, "points", path)
    G = _parse_groupoid(_need(obj, "groupoid", dict, path), f"{path}.groupoid")
    E = _parse_bibundle(_need(obj, "multiplication", dict, path),
                        f"{path}.multiplication")
    a = _need(obj, "associator", dict, path)
    arrows = set(G.arrows)
    return StackyGroupoidData(
        M, G,
        _total_map(obj, "s_map", set(G.objects), set(M), path),
        _total_map(obj, "t_map", set(G.objects), set(M), path),
        _total_map(obj, "e", set(M), set(G.objects), path),
        E, dict(a),
        _total_map(obj, "left_unitor", set(obj["left_unitor"]), arrows, path),
        _total_map(obj, "right_unitor", set(obj["right_unitor"]), arrows, path))


def _map_payload(f: StrictTwoGroupoidMap) -> dict:
    return {
        "source": _two_groupoid_payload(f.source),
        "target": _two_groupoid_payload(f.target),
        "f0": f.f0, "f1": f.f1, "f2": f.f2,
    }


def _parse_map(obj: dict, path: str) -> StrictTwoGroupoidMap:
    src = _parse_two_groupoid(_need(obj, "source", dict, path), f"{path}.source")
    tgt = _parse_two_groupoid(_need(obj, "target", dict, path), f"{path}.target")
    return StrictTwoGroupoidMap(
        src, tgt,
        _total_map(obj, "f0", set(src.X0), set(tgt.X0), path),
        _total_map(obj, "f1", set(src.X1), set(tgt.X1), path),
        _total_map(obj, "f2", set(src.X2), set(tgt.X2), path))


_EMITTERS: dict[str, Callable[[Any], dict]] = {
    "simplicial": _simplicial_payload,
    "two_groupoid": _two_groupoid_payload,
    "groupoid": _groupoid_payload,
    "bibundle": _bibundle_payload,
    "stacky": _stacky_payload,
    "map": _map_payload,
}

_PARSERS: dict[str, Callable[[dict, str], Any]] = {
    "simplicial": _parse_simplicial,
    "two_groupoid": _parse_two_groupoid,
    "groupoid": _parse_groupoid,
    "bibundle": _parse_bibundle,
    "stacky": _parse_stacky,
    "map": _parse_map,
}

_KIND_OF_TYPE = {
    TruncatedSimplicialSet: "simplicial",
    TwoGroupoidData: "two_groupoid",
    FiniteGroupoid: "groupoid",
    Bibundle: "bibundle",
    StackyGroupoidData: "stacky",
    StrictTwoGroupoidMap: "map",
}


def kind_of(value: Any) -> str:
    for typ, kind in _KIND_OF_TYPE.items():
        if isinstance(value, typ):
            return kind
    raise DocumentError("$", f"cannot serialize {type(value).__name__}")


def emit(value: Any) -> str:
    """Canonical JSON for any supported object, with a trailing newline."""
    kind = kind_of(value)
    doc = {"format_version": FORMAT_VERSION, "kind": kind,
           "payload": _EMITTERS[kind](value)}
    return json.dumps(doc, sort_keys=True, separators=(",", ": "),
                      indent=1) + "\n"


def parse(text: str) -> Document:
    """Validated document, or a DocumentError naming the offending path."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"malformed JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DocumentError("$", "document must be a JSON object")
    version = _need(raw, "format_version", str, "$")
    if version != FORMAT_VERSION:
        raise DocumentError("$.format_version",
                            f"unsupported version {version!r}")
    kind = _need(raw, "kind", str, "$")
    if kind not in KINDS:
        raise DocumentError("$.kind", f"unknown kind {kind!r}")
    payload = _need(raw, "payload", dict, "$")
    return Document(kind, _PARSERS[kind](payload, "$.payload"))
