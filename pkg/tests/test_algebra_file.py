import json
from fractions import Fraction as F

import pytest
from hypothesis import given

from gaugecocycles import catalogue
from gaugecocycles.algebra_file import (
    bundled_path,
    format_linear,
    load_algebra,
    parse,
    parse_json,
    parse_linear,
    parse_text,
    write_json,
    write_text,
)
from gaugecocycles.errors import ParseError
from gaugecocycles.lie_core import LieAlgebra, validate

from conftest import vectors

LABELS = {"h": 0, "e": 1, "f": 2}


def same(a, b):
    assert a.algebra.labels == b.algebra.labels
    assert a.algebra.structure == b.algebra.structure
    assert {k: v.phi for k, v in a.automorphisms.items()} == {k: v.phi for k, v in b.automorphisms.items()}
    assert {k: v.order for k, v in a.automorphisms.items()} == {k: v.order for k, v in b.automorphisms.items()}


@pytest.mark.parametrize("name", sorted(catalogue.CATALOGUE))
def test_round_trip_text_and_json(name):
    data = catalogue.load(name)
    same(parse_text(write_text(data)), data)
    same(parse_json(write_json(data)), data)
    same(parse(write_json(data)), data)


@pytest.mark.parametrize("name", sorted(catalogue.CATALOGUE))
def test_bundled_files_match_catalogue(name):
    same(load_algebra(name), catalogue.load(name))
    same(load_algebra(f"{name}.alg"), catalogue.load(name))
    assert bundled_path(name) is not None


def test_round_trip_keeps_non_antisymmetric_tensor():
    c = [[[F(0)] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][0] = F(1)
    c[1][0][0] = F(3)
    c[0][0][1] = F(1, 2)
    data = catalogue.AlgebraData(LieAlgebra(("a", "b"), tuple(tuple(map(tuple, r)) for r in c), "broken"))
    same(parse_text(write_text(data)), data)
    same(parse_json(write_json(data)), data)


@given(vectors(3))
def test_linear_expressions_round_trip(v):
    assert tuple(parse_linear(format_linear(v, ("h", "e", "f")), LABELS)) == v


def test_parse_linear_forms():
    assert parse_linear("2 e - 1/2 f", LABELS) == [0, 2, F(-1, 2)]
    assert parse_linear("-h + 3*e", LABELS) == [-1, 3, 0]
    assert parse_linear("0", LABELS) == [0, 0, 0]
    assert parse_linear("e + e", LABELS) == [0, 2, 0]


@pytest.mark.parametrize("bad", ["2 q", "e f", "", "1/0 e", "e +", "3"])
def test_parse_linear_errors(bad):
    with pytest.raises(ParseError):
        parse_linear(bad, LABELS)


def test_text_format_features():
    text = """
    # sl2 with its inner flip
    name: demo
    basis: h, e, f
    [h, e] = 2 e
    [h, f] = -2 f
    [e, f] = h   # trailing comment
    automorphism flip order 2
      e -> -e
      f -> -f
    end
    """
    data = parse_text(text)
    assert data.algebra.name == "demo"
    assert validate(data.algebra).ok
    assert data.automorphisms["flip"].phi == ((1, 0, 0), (0, -1, 0), (0, 0, -1))
    same(data, catalogue.load("sl2r"))


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("[a, b] = a\n", "before basis"),
        ("basis: a b\n[a, c] = a\n", "unknown basis element"),
        ("basis: a b\n[a, b] = a\n[a, b] = b\n", "given twice"),
        ("basis: a a\n", "duplicate"),
        ("basis: a b\nautomorphism s order 2\n a -> b\n", "not closed"),
        ("basis: a b\nautomorphism s order 2\n a = b\nend\n", "expected"),
        ("basis: a b\nwhat is this\n", "line 2"),
        ("basis: a b\nautomorphism s order 2\nend\nautomorphism s order 2\nend\n", "declared twice"),
    ],
)
def test_text_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_text(text)


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"basis": ["a"], "dim": 2},
        {"basis": ["a", "b"], "brackets": [{"i": "a", "j": "b", "result": [["c", "1"]]}]},
        {"basis": ["a", "b"], "brackets": [{"i": "a", "j": "b"}]},
        {"basis": ["a"], "automorphisms": [{"name": "s", "order": 2, "matrix": [[1, 0]]}]},
    ],
)
def test_json_errors(obj):
    with pytest.raises(ParseError):
        parse_json(json.dumps(obj))
    with pytest.raises(ParseError):
        parse_json("{not json")


def test_load_from_path(tmp_path):
    p = tmp_path / "mine.json"
    p.write_text(write_json(catalogue.load("su2")))
    same(load_algebra(p), catalogue.load("su2"))
    q = tmp_path / "anon.alg"
    q.write_text("basis: x y\n[x, y] = x\n")
    assert load_algebra(q).algebra.name == "anon"
    with pytest.raises(ParseError, match="no such file"):
        load_algebra(tmp_path / "missing.alg")
