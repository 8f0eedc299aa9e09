import json

import pytest

from finitegpd.bibundle import identity_bibundle
from finitegpd.cli import main
from finitegpd.equivalence import nerve_map
from finitegpd.serialize import DocumentError, emit, parse
from finitegpd.simplicial import standard_simplex
from finitegpd.stacky import from_ordinary_groupoid
from finitegpd.twogroupoid import two_groupoid_to_simplicial


@pytest.fixture()
def cech_projection_file(cech, points_groupoid, tmp_path):
    C, om, am = cech
    p = nerve_map(C, points_groupoid, om, am)
    path = tmp_path / "proj.json"
    path.write_text(emit(p))
    return str(path)


def test_emit_parse_round_trip_all_kinds(xmod, pair3, cech, points_groupoid):
    values = [
        standard_simplex(2, 2),
        xmod,
        pair3,
        identity_bibundle(pair3),
        from_ordinary_groupoid(pair3),
        nerve_map(cech[0], points_groupoid, cech[1], cech[2]),
    ]
    for v in values:
        text = emit(v)
        assert text == emit(parse(text).value)
        assert text.endswith("\n")
        # canonical form: re-serializing the JSON with sorted keys is stable
        assert json.dumps(json.loads(text), sort_keys=True) == \
            json.dumps(json.loads(text), sort_keys=True)


def test_parse_errors_name_the_path():
    with pytest.raises(DocumentError) as err:
        parse("{not json")
    assert err.value.path == "$"
    doc = json.loads(emit(standard_simplex(1, 1)))
    doc["payload"]["face"]["1,0"]["01"] = "missing"
    with pytest.raises(DocumentError) as err:
        parse(json.dumps(doc))
    assert "face" in err.value.path
    doc = json.loads(emit(standard_simplex(1, 1)))
    doc["kind"] = "nonsense"
    with pytest.raises(DocumentError) as err:
        parse(json.dumps(doc))
    assert err.value.path == "$.kind"


def test_fixture_check_pipelines(tmp_path, capsys):
    for name, expect_kind in [("point", "two_groupoid"),
                              ("pair:3", "groupoid"),
                              ("group:cyclic:2", "groupoid"),
                              ("xmod:Z2Z2", "two_groupoid"),
                              ("cech", "groupoid"),
                              ("ordinary-groupoid", "stacky")]:
        out = tmp_path / "doc.json"
        assert main(["fixture", name, "-o", str(out)]) == 0
        assert parse(out.read_text()).kind == expect_kind
        assert main(["check", str(out)]) == 0
        assert capsys.readouterr().out.strip().endswith("result: PASS")


def test_nerve_truncate_pipeline(tmp_path, capsys):
    g = tmp_path / "g.json"
    n = tmp_path / "n.json"
    t = tmp_path / "t.json"
    assert main(["fixture", "group:cyclic:3", "-o", str(g)]) == 0
    assert main(["nerve", str(g), "-N", "4", "-o", str(n)]) == 0
    assert main(["check", str(n), "--n-groupoid", "1", "--up-to", "4"]) == 0
    assert main(["truncate", str(n), "-o", str(t)]) == 0
    assert main(["check", str(t)]) == 0
    capsys.readouterr()


def test_stacky_round_trip_pipeline(tmp_path, capsys):
    x = tmp_path / "x.json"
    s = tmp_path / "s.json"
    b = tmp_path / "b.json"
    assert main(["fixture", "xmod:Z2Z2", "-o", str(x)]) == 0
    assert main(["to-stacky", str(x), "-o", str(s)]) == 0
    assert main(["check", str(s)]) == 0
    assert main(["from-stacky", str(s), "-o", str(b)]) == 0
    assert main(["check", str(b)]) == 0
    assert main(["inverse-bibundle", str(s), "-o", str(tmp_path / "i.json")]) == 0
    assert main(["check", str(tmp_path / "i.json")]) == 0
    capsys.readouterr()


def test_equiv_command(cech_projection_file, capsys):
    assert main(["equiv", cech_projection_file, "--degree", "1"]) == 0
    assert main(["equiv", cech_projection_file, "--one"]) == 1
    out = capsys.readouterr().out
    assert "object component" in out


def test_fiber_product_command(cech_projection_file, tmp_path, capsys):
    out = tmp_path / "fp.json"
    code = main(["fiber-product", cech_projection_file, cech_projection_file,
                 "-o", str(out)])
    assert code == 0
    assert parse(out.read_text()).kind == "two_groupoid"
    capsys.readouterr()


def test_compose_bibundle_command(pair3, tmp_path, capsys):
    e = tmp_path / "e.json"
    out = tmp_path / "c.json"
    e.write_text(emit(identity_bibundle(pair3)))
    assert main(["compose-bibundle", str(e), str(e), "-o", str(out)]) == 0
    assert main(["check", str(out)]) == 0
    capsys.readouterr()


def test_morita_search_command(tmp_path, capsys):
    x = tmp_path / "x.json"
    assert main(["fixture", "xmod:Z2Z2", "-o", str(x)]) == 0
    assert main(["morita-search", str(x), str(x), "--bound", "4"]) == 0
    capsys.readouterr()


def test_corrupted_document_exits_one(tmp_path, capsys):
    x = tmp_path / "x.json"
    assert main(["fixture", "xmod:Z2Z2", "-o", str(x)]) == 0
    doc = json.loads(x.read_text())
    key = sorted(doc["payload"]["m"][1])[0]
    vals = doc["payload"]["triangles"]
    doc["payload"]["m"][1][key] = next(
        v for v in vals if v != doc["payload"]["m"][1][key])
    x.write_text(json.dumps(doc))
    assert main(["check", str(x)]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "witness" in out


def test_schema_error_exits_two(tmp_path, capsys):
    x = tmp_path / "x.json"
    x.write_text('{"format_version": "1", "kind": "groupoid", "payload": {}}')
    assert main(["check", str(x)]) == 2
    assert "$.payload" in capsys.readouterr().err


def test_stdin_input(monkeypatch, capsys, tmp_path):
    import io
    x = tmp_path / "x.json"
    assert main(["fixture", "pair:2", "-o", str(x)]) == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(x.read_text()))
    assert main(["check", "-"]) == 0
    capsys.readouterr()


def test_deterministic_emission(xmod):
    assert emit(xmod) == emit(xmod)
    S = two_groupoid_to_simplicial(xmod, level=3)
    assert emit(S) == emit(S)


def test_unknown_fixture_exits_two(capsys):
    assert main(["fixture", "bogus"]) == 2
    assert "unknown fixture" in capsys.readouterr().err


def test_unit_groupoid_doc(points_groupoid, tmp_path, capsys):
    p = tmp_path / "u.json"
    p.write_text(emit(points_groupoid))
    assert main(["check", str(p), "--as", "groupoid"]) == 0
    capsys.readouterr()
