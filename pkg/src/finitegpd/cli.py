"""Command-line verification and construction for finite higher groupoids.

Exit codes: 0 when every check passes, 1 when a check fails (the report
names the violated law and a witness), 2 on input or schema errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

from .bibundle import (Bibundle, compose_bibundles,
                       group_groupoid, pair_groupoid, is_biprincipal,
                       verify_bibundle, verify_groupoid)
from .equivalence import (bounded_one_morita_search,
                          fiber_product_two_groupoid, is_equivalence,
                          is_one_equivalence, verify_strict_map)
from .groups import cyclic_group
from .report import Report
from .serialize import Document, DocumentError, emit, parse
from .simplicial import verify_n_groupoid, verify_simplicial
from .stacky import (from_ordinary_groupoid,
                     from_two_groupoid, inverse_bibundle, to_two_groupoid,
                     verify_stacky)
from .twogroupoid import (cech_groupoid,
                          crossed_module_fixture, groupoid_nerve,
                          trivial_action, trivial_boundary, truncate_to_data,
                          two_groupoid_to_simplicial, verify_two_groupoid)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(path: str, want: Optional[str] = None) -> Document:
    doc = parse(_read(path))
    if want is not None and doc.kind != want:
        raise DocumentError("$.kind", f"expected a {want} document, "
                                      f"got {doc.kind}")
    return doc


def _finish(report: Report, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.as_dict(), sort_keys=True, indent=1))
    else:
        print(report.render())
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_check(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    kind = (args.as_kind or doc.kind).replace("-", "_")
    if kind != doc.kind:
        raise DocumentError("$.kind", f"document is {doc.kind}, not {kind}")
    v = doc.value
    if kind == "simplicial":
        rep = verify_simplicial(v)
        if rep.ok and args.n_groupoid is not None:
            up_to = args.up_to if args.up_to is not None else v.level
            rep.extend(verify_n_groupoid(v, args.n_groupoid, up_to))
    elif kind == "two_groupoid":
        rep = verify_two_groupoid(v)
    elif kind == "groupoid":
        rep = verify_groupoid(v)
    elif kind == "bibundle":
        rep = verify_bibundle(v)
        if rep.ok:
            rep.extend(is_biprincipal(v), prefix="biprincipality: ")
    elif kind == "stacky":
        rep = verify_stacky(v)
    elif kind == "map":
        rep = verify_strict_map(v)
    else:
        raise DocumentError("$.kind", f"unknown kind {kind!r}")
    return _finish(rep, args.json)


def _cmd_nerve(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    if doc.kind == "groupoid":
        X = groupoid_nerve(doc.value)
    elif doc.kind == "two_groupoid":
        X = doc.value
    else:
        raise DocumentError("$.kind", "nerve expects a groupoid or "
                                      "two_groupoid document")
    _write(args.output, emit(two_groupoid_to_simplicial(X, level=args.level)))
    return 0


def _cmd_truncate(args: argparse.Namespace) -> int:
    doc = _load(args.file, "simplicial")
    _write(args.output, emit(truncate_to_data(doc.value)))
    return 0


def _cmd_to_stacky(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    if doc.kind == "two_groupoid":
        S = from_two_groupoid(doc.value)
    elif doc.kind == "groupoid":
        S = from_ordinary_groupoid(doc.value)
    else:
        raise DocumentError("$.kind", "to-stacky expects a two_groupoid or "
                                      "groupoid document")
    _write(args.output, emit(S))
    return 0


def _cmd_from_stacky(args: argparse.Namespace) -> int:
    doc = _load(args.file, "stacky")
    _write(args.output, emit(to_two_groupoid(doc.value)))
    return 0


def _cmd_equiv(args: argparse.Namespace) -> int:
    doc = _load(args.file, "map")
    if args.one:
        rep = is_one_equivalence(doc.value)
    else:
        rep = is_equivalence(doc.value, args.degree)
    return _finish(rep, args.json)


def _cmd_fiber_product(args: argparse.Namespace) -> int:
    f = _load(args.map1, "map").value
    g = _load(args.map2, "map").value
    Z, pZ, pW = fiber_product_two_groupoid(f, g, degree=args.degree)
    _write(args.output, emit(Z))
    rep = verify_two_groupoid(Z)
    rep.add("the first projection is an equivalence",
            is_equivalence(pZ, args.degree).ok)
    rep.add("the second projection is an equivalence",
            is_equivalence(pW, args.degree).ok)
    return _finish(rep, args.json)


def _cmd_compose_bibundle(args: argparse.Namespace) -> int:
    E = _load(args.e1, "bibundle").value
    F = _load(args.e2, "bibundle").value
    C = compose_bibundles(E, F)
    _write(args.output, emit(Bibundle(C.left, C.right, C.carrier,
                                      C.left_moment, C.right_moment,
                                      C.left_action, C.right_action)))
    return 0


def _cmd_inverse_bibundle(args: argparse.Namespace) -> int:
    doc = _load(args.file, "stacky")
    _write(args.output, emit(inverse_bibundle(doc.value)))
    return 0


def _cmd_morita_search(args: argparse.Namespace) -> int:
    X = _load(args.x, "two_groupoid").value
    Y = _load(args.y, "two_groupoid").value
    wit = bounded_one_morita_search(X, Y, args.bound)
    if wit is None:
        print(f"no span of pointwise-bijective equivalences found with at "
              f"most {args.bound} arrows in the apex")
        return 1
    print("found a span of equivalences with bijective object components:")
    print(emit(wit["right"]), end="")
    return 0


def _fixture(name: str) -> Any:
    parts = name.split(":")
    if parts[0] == "point" and len(parts) == 1:
        G = pair_groupoid(["*"])
        return groupoid_nerve(G)
    if parts[0] == "pair" and len(parts) == 2:
        k = int(parts[1])
        return pair_groupoid([f"p{i}" for i in range(k)])
    if parts[0] == "group" and len(parts) == 3 and parts[1] == "cyclic":
        return group_groupoid(cyclic_group(int(parts[2])))
    if parts[0] == "xmod" and parts[1:] == ["Z2Z2"]:
        g = cyclic_group(2)
        return crossed_module_fixture(g, g, trivial_boundary(g, g),
                                      trivial_action(g, g))
    if parts[0] == "cech" and len(parts) == 1:
        return cech_groupoid({"U": ["a", "b"], "V": ["b", "c"]})[0]
    if parts[0] == "ordinary-groupoid" and len(parts) == 1:
        return from_ordinary_groupoid(pair_groupoid(["p", "q"]))
    raise DocumentError("$", f"unknown fixture {name!r}; available: point, "
                             "pair:k, group:cyclic:m, xmod:Z2Z2, cech, "
                             "ordinary-groupoid")


def _cmd_fixture(args: argparse.Namespace) -> int:
    _write(args.output, emit(_fixture(args.name)))
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gpdcheck",
        description="verify and transform finite higher-groupoid documents")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check", _cmd_check, help="run the verifier for a document")
    sp.add_argument("file")
    sp.add_argument("--as", dest="as_kind", default=None,
                    choices=["simplicial", "two-groupoid", "groupoid",
                             "bibundle", "stacky", "map"])
    sp.add_argument("--n-groupoid", type=int, default=None,
                    help="also check the Kan conditions of an n-groupoid")
    sp.add_argument("--up-to", type=int, default=None)
    sp.add_argument("--json", action="store_true")

    sp = add("nerve", _cmd_nerve,
             help="simplicial nerve of a groupoid or 2-groupoid")
    sp.add_argument("file")
    sp.add_argument("-N", "--level", type=int, required=True)
    sp.add_argument("-o", "--output", default=None)

    sp = add("truncate", _cmd_truncate,
             help="2-groupoid data of a simplicial document")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default=None)

    sp = add("to-stacky", _cmd_to_stacky,
             help="stacky presentation of a 2-groupoid or ordinary groupoid")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default=None)

    sp = add("from-stacky", _cmd_from_stacky,
             help="2-groupoid of a stacky presentation")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default=None)

    sp = add("equiv", _cmd_equiv, help="check a strict map for equivalence")
    sp.add_argument("file")
    sp.add_argument("--one", action="store_true",
                    help="also require a bijective object component")
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--json", action="store_true")

    sp = add("fiber-product", _cmd_fiber_product,
             help="fiber product of two equivalences over a common target")
    sp.add_argument("map1")
    sp.add_argument("map2")
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--json", action="store_true")

    sp = add("compose-bibundle", _cmd_compose_bibundle,
             help="tensor two bibundles over the middle groupoid")
    sp.add_argument("e1")
    sp.add_argument("e2")
    sp.add_argument("-o", "--output", default=None)

    sp = add("inverse-bibundle", _cmd_inverse_bibundle,
             help="inversion bibundle of a stacky presentation")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default=None)

    sp = add("fixture", _cmd_fixture, help="emit a built-in example document")
    sp.add_argument("name")
    sp.add_argument("-o", "--output", default=None)

    sp = add("morita-search", _cmd_morita_search,
             help="bounded search for a span of equivalences")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--bound", type=int, default=16)

    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
