import pytest
from hypothesis import given, settings, strategies as st

from oracles import has_bispindle, has_two_blocks_cycle
from subdivcolor.digraph import Coloring, Digraph, is_proper, underlying_graph
from subdivcolor.generators import (
    gen_ham_dicycle_digraph,
    gen_ham_dipath_digraph,
    gen_outtree_digraph,
    gen_random_digraph,
)
from subdivcolor.structural import (
    ColorOrCertificate,
    color_hamcycle_b1free,
    color_hamcycle_bispindlefree,
    color_hamdipath_c2free,
    color_outtree_c2free,
    color_pathcover_c2free,
    greedy_dipath_cover,
)
from subdivcolor.subdivisions import (
    PatternSpec,
    find_bispindle,
    find_two_blocks_cycle,
    validate_certificate,
)
from subdivcolor.trees import RootedTree


def dipath(n, extra=()):
    return Digraph(n, frozenset(zip(range(n), range(1, n))) | frozenset(extra))


def dicycle(n, extra=()):
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)) | frozenset(extra))


def assert_sound(D, res: ColorOrCertificate):
    if res.is_coloring:
        assert is_proper(underlying_graph(D), res.coloring)
        assert res.coloring.palette <= res.bound
    else:
        assert validate_certificate(D, res.certificate, res.spec)


def test_result_holds_exactly_one_outcome():
    with pytest.raises(ValueError):
        ColorOrCertificate(PatternSpec.two_blocks(1, 1), 3)
    res = ColorOrCertificate(PatternSpec.two_blocks(1, 1), 3, coloring=Coloring.of([1]))
    assert res.to_json()["result"] == "coloring"


# --- Hamiltonian dipath ------------------------------------------------------


def test_bare_dipath_gets_few_colors():
    res = color_hamdipath_c2free(dipath(9), range(9), 2, 2)
    assert res.is_coloring and res.coloring.palette <= 6


def test_crossing_chords_on_a_dipath_give_certificate():
    D = dipath(9, [(0, 4), (2, 6)])
    res = color_hamdipath_c2free(D, range(9), 2, 2)
    assert not res.is_coloring
    assert validate_certificate(D, res.certificate, PatternSpec.two_blocks(2, 2))


@pytest.mark.parametrize("arcs", [[(0, 4), (2, 6)], [(4, 0), (2, 6)], [(0, 4), (6, 2)], [(4, 0), (6, 2)]])
def test_all_chord_orientations_close_a_cycle(arcs):
    D = dipath(9, arcs)
    res = color_hamdipath_c2free(D, range(9), 2, 2)
    assert not res.is_coloring
    assert validate_certificate(D, res.certificate, PatternSpec.two_blocks(2, 2))


def test_hamdipath_rejects_non_path():
    with pytest.raises(ValueError):
        color_hamdipath_c2free(dipath(4), [0, 2, 1, 3], 2, 2)


@settings(max_examples=40)
@given(st.integers(2, 9), st.integers(1, 3), st.integers(1, 3), st.floats(0.0, 0.6), st.integers(0, 10**6))
def test_hamdipath_dichotomy_against_oracle(n, k1, k2, density, seed):
    inst = gen_ham_dipath_digraph(n, density, seed)
    res = color_hamdipath_c2free(inst.digraph, inst.structure, k1, k2)
    assert_sound(inst.digraph, res)
    if not has_two_blocks_cycle(inst.digraph, k1, k2):
        assert res.is_coloring


@settings(max_examples=30)
@given(st.integers(10, 14), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_hamdipath_dichotomy_larger(n, k1, k2, seed):
    inst = gen_ham_dipath_digraph(n, 0.15, seed)
    res = color_hamdipath_c2free(inst.digraph, inst.structure, k1, k2)
    assert_sound(inst.digraph, res)
    if find_two_blocks_cycle(inst.digraph, k1, k2) is None:
        assert res.is_coloring


@given(st.integers(1, 14), st.floats(0.0, 0.6), st.integers(0, 10**6))
def test_dipath_cover_partitions_vertices(n, density, seed):
    D = gen_random_digraph(n, density, seed).digraph
    cover = greedy_dipath_cover(D)
    assert sorted(v for p in cover for v in p) == list(range(D.n))
    for p in cover:
        assert all(D.has_arc(u, v) for u, v in zip(p, p[1:]))


@settings(max_examples=40)
@given(st.integers(2, 9), st.integers(1, 3), st.integers(1, 3), st.floats(0.0, 0.5), st.integers(0, 10**6))
def test_pathcover_dichotomy(n, k1, k2, density, seed):
    D = gen_random_digraph(n, density, seed).digraph
    res = color_pathcover_c2free(D, k1, k2)
    assert_sound(D, res)
    if not has_two_blocks_cycle(D, k1, k2):
        assert res.is_coloring


# --- Hamiltonian dicycle -----------------------------------------------------


def test_crossing_chords_on_a_dicycle_give_bispindle():
    D = dicycle(10, [(2, 6), (4, 8)])
    res = color_hamcycle_bispindlefree(D, range(10), 2, 2, 2)
    assert not res.is_coloring
    assert validate_certificate(D, res.certificate, PatternSpec.bispindle(2, 2, 2))


@pytest.mark.parametrize("arcs", [[(2, 6), (4, 8)], [(6, 2), (4, 8)], [(2, 6), (8, 4)], [(6, 2), (8, 4)]])
def test_all_cycle_chord_orientations(arcs):
    D = dicycle(10, arcs)
    res = color_hamcycle_bispindlefree(D, range(10), 2, 2, 2)
    assert not res.is_coloring
    assert validate_certificate(D, res.certificate, PatternSpec.bispindle(2, 2, 2))


def test_bare_dicycle_colored_within_bound():
    res = color_hamcycle_bispindlefree(dicycle(7), range(7), 1, 1, 1)
    assert res.is_coloring and res.coloring.palette <= 4


@settings(max_examples=40)
@given(st.integers(3, 8), st.integers(1, 2), st.integers(1, 2), st.integers(1, 2),
       st.floats(0.0, 0.6), st.integers(0, 10**6))
def test_bispindle_dichotomy_against_oracle(n, k1, k2, k3, density, seed):
    inst = gen_ham_dicycle_digraph(n, density, seed)
    res = color_hamcycle_bispindlefree(inst.digraph, inst.structure, k1, k2, k3)
    assert_sound(inst.digraph, res)
    if not has_bispindle(inst.digraph, k1, k2, k3):
        assert res.is_coloring


def test_far_chord_gives_b1_certificate():
    D = dicycle(8, [(0, 4)])
    res = color_hamcycle_b1free(D, range(8), 3, 3)
    assert not res.is_coloring
    assert validate_certificate(D, res.certificate, PatternSpec.bispindle(3, 1, 3))


def test_short_cycle_gets_distinct_colors():
    res = color_hamcycle_b1free(dicycle(5), range(5), 3, 2)
    assert res.is_coloring and res.coloring.used() == 5 and res.bound == 5


def test_b1_requires_k_at_least_two():
    with pytest.raises(ValueError):
        color_hamcycle_b1free(dicycle(3), range(3), 1, 1)


@settings(max_examples=40)
@given(st.integers(3, 12), st.integers(1, 3), st.integers(1, 3), st.floats(0.0, 0.5), st.integers(0, 10**6))
def test_b1_dichotomy(n, k1, k3, density, seed):
    if max(k1, k3) < 2:
        k1 = 2
    inst = gen_ham_dicycle_digraph(n, density, seed)
    res = color_hamcycle_b1free(inst.digraph, inst.structure, k1, k3)
    assert_sound(inst.digraph, res)
    if res.is_coloring and n > 2 * max(k1, k3) - 1:
        assert underlying_graph(inst.digraph).max_degree() <= 2 * max(k1, k3) - 2
    if find_bispindle(inst.digraph, k1, 1, k3) is None:
        assert res.is_coloring


# --- spanning out-trees ------------------------------------------------------


def test_outtree_chords_on_a_path_tree():
    T = RootedTree(0, (-1, 0, 1, 2, 3, 4, 5), directed=True)
    D = Digraph(7, frozenset(T.arcs()) | {(0, 4), (2, 6)})
    res = color_outtree_c2free(D, T, 2, 2)
    assert not res.is_coloring
    assert validate_certificate(D, res.certificate, PatternSpec.two_blocks(2, 2))


def test_outtree_cross_arc_between_branches():
    # branches 0-1-2 and 0-3-4-5-6; the arc 2->6 joins them
    T = RootedTree(0, (-1, 0, 1, 0, 3, 4, 5), directed=True)
    D = Digraph(7, frozenset(T.arcs()) | {(2, 6)})
    res = color_outtree_c2free(D, T, 2, 2)
    assert not res.is_coloring
    assert validate_certificate(D, res.certificate, PatternSpec.two_blocks(2, 2))


def test_outtree_alone_is_two_colorable_within_bound():
    T = RootedTree(0, (-1, 0, 0, 1, 1, 2), directed=True)
    res = color_outtree_c2free(Digraph(6, frozenset(T.arcs())), T, 2, 2)
    assert res.is_coloring and res.coloring.palette <= 8


def test_outtree_requires_k2_at_least_two():
    T = RootedTree(0, (-1, 0), directed=True)
    with pytest.raises(ValueError):
        color_outtree_c2free(Digraph(2, frozenset(T.arcs())), T, 2, 1)


@settings(max_examples=40)
@given(st.integers(2, 9), st.integers(2, 3), st.integers(2, 3), st.floats(0.0, 0.6),
       st.sampled_from(["random", "path"]), st.integers(0, 10**6))
def test_outtree_dichotomy_against_oracle(n, k1, k2, density, shape, seed):
    inst = gen_outtree_digraph(n, shape, density, seed)
    res = color_outtree_c2free(inst.digraph, inst.structure, k1, k2)
    assert_sound(inst.digraph, res)
    if not has_two_blocks_cycle(inst.digraph, k1, k2):
        assert res.is_coloring


@settings(max_examples=30)
@given(st.integers(10, 16), st.integers(2, 3), st.integers(2, 3), st.integers(0, 10**6))
def test_outtree_dichotomy_larger(n, k1, k2, seed):
    inst = gen_outtree_digraph(n, "random", 0.15, seed)
    res = color_outtree_c2free(inst.digraph, inst.structure, k1, k2)
    assert_sound(inst.digraph, res)
    if find_two_blocks_cycle(inst.digraph, k1, k2) is None:
        assert res.is_coloring
