import io
import json

import pytest
from hypothesis import given, strategies as st

from strategies import digraphs, graphs, rooted_trees
from subdivcolor import io as sio
from subdivcolor.digraph import Coloring
from subdivcolor.generators import gen_ham_dicycle_digraph, gen_outtree_digraph, gen_tournament, Instance
from subdivcolor.subdivisions import PatternSpec, two_blocks_certificate


@given(digraphs(max_n=9))
def test_digraph_round_trip(D):
    assert sio.digraph_from_json(json.loads(json.dumps(sio.digraph_to_json(D)))) == D


@given(graphs(max_n=9))
def test_graph_round_trip(G):
    assert sio.graph_from_json(sio.graph_to_json(G)) == G


@given(rooted_trees(max_n=12))
def test_tree_round_trip(T):
    assert sio.tree_from_json(sio.tree_to_json(T)) == T


def test_coloring_round_trip():
    c = Coloring((1, 3, 2), 4)
    assert sio.coloring_from_json(sio.coloring_to_json(c)) == c


@pytest.mark.parametrize("inst", [
    gen_ham_dicycle_digraph(7, 0.3, 1),
    gen_outtree_digraph(9, "random", 0.3, 2),
    Instance(gen_tournament(5, 3), "tournament", None, 3),
])
def test_instance_round_trip(inst):
    doc = json.loads(sio.dumps(sio.instance_to_json(inst)))
    assert doc["format"] == sio.FORMAT
    assert sio.instance_from_json(doc) == inst


def test_instance_hash_is_stable_and_sensitive():
    a = sio.instance_to_json(gen_ham_dicycle_digraph(7, 0.3, 1))
    b = sio.instance_to_json(gen_ham_dicycle_digraph(7, 0.3, 2))
    assert sio.instance_hash(a) == sio.instance_hash(dict(reversed(list(a.items()))))
    assert sio.instance_hash(a) != sio.instance_hash(b)
    assert len(sio.instance_hash(a)) == 16


@pytest.mark.parametrize("text,spec", [
    ("C(2,3)", PatternSpec.two_blocks(3, 2)),
    ("B(1,2;3)", PatternSpec.bispindle(1, 2, 3)),
    (" C(1, 2, 1, 2) ", PatternSpec.cycle(1, 2, 1, 2)),
])
def test_parse_spec(text, spec):
    assert sio.parse_spec(text) == spec
    assert sio.parse_spec(sio.format_spec(spec)) == spec


@pytest.mark.parametrize("text", ["D(1,2)", "C(1)", "B(1,2)", "C(a,b)", "C(1,2,3)"])
def test_parse_spec_rejects(text):
    with pytest.raises(ValueError):
        sio.parse_spec(text)


def test_certificate_from_wrapped_document():
    cert = two_blocks_certificate([0, 1, 4], [0, 2, 4])
    assert sio.certificate_from_json({"certificate": cert.to_json()}) == cert
    assert sio.certificate_from_json(cert.to_json()) == cert


def test_read_json_errors(tmp_path, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(sio.InvalidInput):
        sio.read_json(str(bad))
    with pytest.raises(sio.InvalidInput):
        sio.read_json(str(tmp_path / "missing.json"))
    monkeypatch.setattr("sys.stdin", io.StringIO('{"n": 1}'))
    assert sio.read_json("-") == {"n": 1}


def test_csv_encodes_nested_values():
    text = sio.to_csv([{"a": 1, "b": [1, 2]}, {"a": 2, "c": "x"}])
    lines = text.splitlines()
    assert lines[0] == "a,b,c"
    assert lines[1] == '1,"[1, 2]",'
    assert lines[2] == "2,,x"
