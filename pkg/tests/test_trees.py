import random

import pytest
from hypothesis import given, strategies as st

from oracles import chain_secant_pairs
from strategies import graphs, rooted_trees
from subdivcolor.digraph import Digraph, Graph
from subdivcolor.generators import gen_outtree_digraph, random_nosecant_instance, star_tree
from subdivcolor.secancy import SecantPairError
from subdivcolor.trees import (
    RootedTree,
    classify_star,
    dfs_normal_tree,
    first_tree_secant,
    is_maximal_out_tree,
    is_normal,
    is_out_tree_of,
    is_saturated,
    jump_taxonomy,
    make_maximal_out_tree,
    rewire_to_maximal,
    saturate,
    secant_pairs_wrt_tree,
    tree_jumps,
)


def tree(parent, root=0):
    return RootedTree(root, tuple(parent))


def test_tree_rejects_cycles():
    with pytest.raises(ValueError):
        RootedTree(0, (-1, 2, 1))


def test_basic_queries():
    T = tree([-1, 0, 1, 1, 0])
    assert T.levels == (0, 1, 2, 2, 1)
    assert T.lca(2, 3) == 1 and T.lca(2, 4) == 0
    assert T.path_between(0, 3) == [0, 1, 3]
    assert T.is_ancestor(1, 3) and not T.comparable(2, 4)
    assert T.subtree(1) == {1, 2, 3}


@given(graphs(min_n=1, max_n=9), st.integers(0, 8))
def test_dfs_tree_is_normal(G, r):
    if not G.is_connected():
        return
    T = dfs_normal_tree(G, r % G.n)
    assert T.root == r % G.n and is_normal(G, T)


def test_non_normal_tree_detected():
    G = Graph(3, frozenset({(0, 1), (0, 2), (1, 2)}))
    assert not is_normal(G, tree([-1, 0, 0]))


@given(rooted_trees(max_n=10), st.randoms(use_true_random=False))
def test_tree_secancy_agrees_three_ways(T, rnd):
    G = random_nosecant_instance(T, random.Random(rnd.random()), 0.0, saturated=False)
    extra = [(a, b) for b in range(T.n) for a in T.ancestors(b)[:-2] if rnd.random() < 0.3]
    G = G.with_edges(extra)
    chain = chain_secant_pairs(G, T)
    assert secant_pairs_wrt_tree(G, T) == chain
    assert (first_tree_secant(G, T) is None) == (not chain)


@given(rooted_trees(max_n=11), st.integers(0, 10_000), st.floats(0, 1))
def test_saturation_properties(T, seed, density):
    G = random_nosecant_instance(T, random.Random(seed), density, saturated=False)
    H = saturate(G, T)
    assert G.edges <= H.edges
    assert is_normal(H, T) and first_tree_secant(H, T) is None
    assert is_saturated(H, T)
    assert saturate(H, T) == H


def test_saturate_rejects_secant_input():
    T = tree([-1, 0, 1, 2, 3])
    G = Graph(5, frozenset(T.edges() | {(0, 2), (1, 3)}))
    with pytest.raises(SecantPairError):
        saturate(G, T)


def test_saturation_of_a_path_adds_nested_chords():
    T = tree([-1, 0, 1, 2])
    H = saturate(T.graph(), T)
    # shallowest first: 0-2 then 0-3; 1-3 would cross 0-2
    assert set(H.edges) - T.edges() == {(0, 2), (0, 3)}


def test_out_tree_and_maximality():
    D = Digraph(4, frozenset({(0, 1), (0, 2), (2, 3), (3, 1)}))
    T = RootedTree(0, (-1, 0, 0, 2), directed=True)
    assert is_out_tree_of(D, T)
    assert not is_maximal_out_tree(D, T)  # 3 -> 1 goes up to a non-ancestor
    M, steps = rewire_to_maximal(D, T)
    assert steps == [(3, 1, 1, 3)]
    assert is_maximal_out_tree(D, M) and M.parent[1] == 3


@pytest.mark.parametrize("seed", range(30))
def test_rewiring_monotone_on_random_instances(seed):
    rng = random.Random(seed)
    inst = gen_outtree_digraph(rng.randint(2, 20), "random", 0.3, seed)
    M, steps = rewire_to_maximal(inst.digraph, inst.structure)
    assert is_maximal_out_tree(inst.digraph, M)
    assert all(new > old for _, _, old, new in steps)
    assert len(steps) <= inst.digraph.n ** 2
    assert make_maximal_out_tree(inst.digraph, M) == M


@pytest.mark.parametrize("parent,kind,level", [
    ([-1, 0, 1, 2], "path", None),
    ([-1, 0, 0, 0], "whip", 0),
    ([-1, 0, 1, 1, 1], "whip", 0),
    ([-1, 0, 0, 0, 1], "star", 0),
    ([-1, 0, 0, 0, 1, 1, 2, 2, 3, 3], "star", 1),
    ([-1, 0, 0, 0, 1, 1, 2, 2], "other", None),
])
def test_star_classification(parent, kind, level):
    cls = classify_star(tree(parent))
    assert cls.kind == kind and cls.level == level


@pytest.mark.parametrize("level", [0, 1, 2])
def test_star_generator_classes(level):
    rng = random.Random(level)
    for n in range(1 + 3 * (2 ** (level + 1) - 1), 26):
        cls = classify_star(star_tree(level, n, rng))
        assert cls.is_star and cls.level == level


def test_jump_taxonomy_marks_minimal_and_higher():
    T = tree([-1, 0, 1, 2, 3])
    G = Graph(5, frozenset(T.edges() | {(0, 4), (1, 3)}))
    tax = jump_taxonomy(G, T)
    by = {(j.lower, j.upper): j for j in tax.jumps}
    assert by[(1, 3)].minimal and not by[(0, 4)].minimal
    assert by[(1, 3)].higher and not by[(0, 4)].higher
    assert {(j.lower, j.upper) for j in tax.over(2)} == {(0, 4), (1, 3)}
    assert tree_jumps(G, T) == [(0, 4), (1, 3)]
