import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from subdivcolor.digraph import Coloring, Graph, chromatic_number_exact, is_proper
from subdivcolor.generators import gen_star_tree_instance, min_star_size, random_nosecant_instance, random_tree
from subdivcolor.secancy import SecantPairError
from subdivcolor.star_trees import (
    ClassificationMismatch,
    CounterexampleReport,
    color_normal_nosecant,
    color_normal_nosecant_general,
    color_star0,
    color_star1,
    color_whip,
    flatten_to_star_like,
    mapped_edges,
    non_tree_edges,
    order_preserved,
    path_order,
)
from subdivcolor.trees import RootedTree, classify_star, is_normal, is_saturated, saturate


def tree_graph(T):
    return Graph(T.n, frozenset(T.edges()))


def whip():
    # handle 0-1-2, then node 2 with leaves 3, 4, 5
    return RootedTree(0, (-1, 0, 1, 2, 2, 2))


def spider():
    # center 0 with legs 1-2, 3-4, 5-6
    return RootedTree(0, (-1, 0, 1, 0, 3, 0, 5))


def star1():
    # center 0 with three branches, each ending in a node with two leaves
    parent = [-1, 0, 0, 0]
    for b in (1, 2, 3):
        parent += [b, b]
    return RootedTree(0, tuple(parent))


def test_whip_tree_only():
    T = whip()
    c = color_whip(tree_graph(T), T)
    assert is_proper(saturate(tree_graph(T), T), c) and c.palette <= 4


def test_whip_with_jumps():
    T = whip()
    G = saturate(tree_graph(T).with_edges([(0, 2), (0, 4)]), T)
    c = color_whip(G, T)
    assert is_proper(G, c) and c.palette <= 4


def test_spider_is_star0():
    T = spider()
    assert classify_star(T).level == 0
    G = tree_graph(T).with_edges([(0, 2)])
    c = color_star0(G, T)
    assert is_proper(G, c) and c.palette <= 4


def test_star1_tree_only():
    T = star1()
    assert classify_star(T).level == 1
    c = color_star1(tree_graph(T), T)
    assert is_proper(tree_graph(T), c) and c.palette <= 4


def test_wrong_class_is_rejected():
    with pytest.raises(ClassificationMismatch):
        color_star1(tree_graph(spider()), spider())
    with pytest.raises(ClassificationMismatch):
        color_star0(tree_graph(star1()), star1())
    with pytest.raises(ClassificationMismatch):
        color_whip(tree_graph(spider()), spider())


def test_secant_jumps_are_rejected():
    T = RootedTree(0, (-1, 0, 1, 2, 3, 3, 3))
    G = tree_graph(T).with_edges([(0, 2), (1, 3)])
    with pytest.raises(SecantPairError):
        color_star0(G, T)


def test_non_normal_tree_is_rejected():
    T = spider()
    with pytest.raises(ValueError):
        color_star0(tree_graph(T).with_edges([(2, 4)]), T)


def test_path_order_walks_the_path():
    T = RootedTree(2, (1, 2, -1, 0))
    assert path_order(T) == [2, 1, 0, 3]
    with pytest.raises(ValueError):
        path_order(spider())


@pytest.mark.parametrize("cls", ["whip", "star0", "star1"])
@settings(max_examples=40)
@given(seed=st.integers(0, 10**6), extra=st.integers(0, 8), density=st.floats(0.0, 0.8))
def test_dedicated_colorers_within_four(cls, seed, extra, density):
    size = (4 if cls == "whip" else min_star_size(int(cls[4:]))) + extra
    G, T = gen_star_tree_instance(cls, size, seed, density)
    color = {"whip": color_whip, "star0": color_star0, "star1": color_star1}[cls]
    c = color(G, T)
    assert is_proper(G, c) and c.palette <= 4


@settings(max_examples=40)
@given(st.integers(2, 12), st.integers(0, 10**6), st.floats(0.0, 0.8))
def test_general_search_agrees_with_exact_chromatic_number(n, seed, density):
    rng = random.Random(seed)
    T = random_tree(n, rng)
    G = random_nosecant_instance(T, rng, density)
    chi, _ = chromatic_number_exact(G)
    res = color_normal_nosecant_general(G, T)
    assert isinstance(res, Coloring) and is_proper(G, res)
    assert chi <= 4 and res.palette <= 4
    if chi <= 2:
        assert res.palette == chi or G.n == 1


def test_general_on_tree_alone_uses_two_colors():
    T = spider()
    assert color_normal_nosecant_general(tree_graph(T), T).palette == 2


@settings(max_examples=40)
@given(st.integers(2, 14), st.integers(0, 10**6))
def test_dispatch_routes(n, seed):
    rng = random.Random(seed)
    T = random_tree(n, rng)
    G = random_nosecant_instance(T, rng, 0.4)
    c, route = color_normal_nosecant(G, T)
    assert is_proper(G, c) and c.palette <= 4
    cls = classify_star(T)
    expected = f"star{cls.level}" if cls.is_star and cls.level in (0, 1) else "search"
    assert route == expected


def test_counterexample_report_json():
    K5 = Graph(5, frozenset((u, v) for u in range(5) for v in range(u + 1, 5)))
    T = RootedTree(0, (-1, 0, 1, 2, 3))
    doc = CounterexampleReport(K5, T, 17).to_json()
    assert doc["verdict"] == "no-4-coloring" and doc["search_nodes"] == 17
    assert json.loads(json.dumps(doc))["tree"]["parent"] == [-1, 0, 1, 2, 3]


@settings(max_examples=40)
@given(st.integers(2, 14), st.integers(0, 10**6), st.floats(0.0, 0.6))
def test_flatten_postconditions(n, seed, density):
    rng = random.Random(seed)
    T = random_tree(n, rng)
    G = random_nosecant_instance(T, rng, density)
    F = flatten_to_star_like(G, T)
    assert F.star.is_star and classify_star(F.tree).is_star
    assert order_preserved(T, F.tree, F.correspondence)
    assert mapped_edges(non_tree_edges(G, T), F.correspondence) == non_tree_edges(F.graph, F.tree)
    assert is_normal(F.graph, F.tree)
    c, _ = color_normal_nosecant(F.graph, F.tree)
    back = Coloring.of([c.colors[F.correspondence[v]] for v in range(G.n)])
    assert is_proper(G, back)


def test_flatten_leaf_without_sisters():
    # root 0 has child 1 which is a node with children 2, 3 (leaves) and 4 -> 5
    T = RootedTree(0, (-1, 0, 1, 1, 1, 4))
    G = saturate(tree_graph(T).with_edges([(1, 5)]), T)
    F = flatten_to_star_like(G, T)
    assert F.star.is_star
    assert len(non_tree_edges(F.graph, F.tree)) == len(non_tree_edges(G, T))


def test_flatten_requires_saturation():
    T = RootedTree(0, (-1, 0, 1, 2))
    G = tree_graph(T).with_edges([(0, 3)])
    assert not is_saturated(G, T)
    with pytest.raises(ValueError):
        flatten_to_star_like(G, T)
    assert flatten_to_star_like(G, T, require_saturated=False).star.is_star
