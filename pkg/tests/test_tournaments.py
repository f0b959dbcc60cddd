import pytest
from hypothesis import given, settings, strategies as st

from subdivcolor.digraph import Digraph
from subdivcolor.generators import gen_tournament
from subdivcolor.subdivisions import PatternSpec, validate_certificate
from subdivcolor.tournaments import build_cycle_subdivision, find_two_blocks_path


def transitive(n):
    return Digraph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def check_two_blocks_path(T, q1, q2, k1, k2):
    assert len(q1) == k1 + 1 and len(q2) == k2 + 1
    assert q1[0] == q2[0]
    assert not set(q1[1:]) & set(q2[1:])
    for q in (q1, q2):
        assert len(set(q)) == len(q)
        assert all(T.has_arc(u, v) for u, v in zip(q, q[1:]))


def test_transitive_tournament_of_order_four():
    T = transitive(4)
    q1, q2 = find_two_blocks_path(T, 2, 1)
    check_two_blocks_path(T, q1, q2, 2, 1)


def test_two_blocks_path_argument_checks():
    with pytest.raises(ValueError):
        find_two_blocks_path(transitive(3), 1, 1)
    with pytest.raises(ValueError):
        find_two_blocks_path(transitive(3), 2, 1)
    with pytest.raises(ValueError):
        find_two_blocks_path(Digraph(4, frozenset({(0, 1)})), 2, 1)


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 3), st.integers(0, 10**6))
def test_two_blocks_path_in_random_tournaments(k1, k2, spare, seed):
    if k1 + k2 < 3:
        k1 = 2
    T = gen_tournament(k1 + k2 + 1 + spare, seed)
    q1, q2 = find_two_blocks_path(T, k1, k2)
    check_two_blocks_path(T, q1, q2, k1, k2)


def test_transitive_cycle_subdivision():
    ks = (1, 2, 2, 1)
    T = transitive(2 + sum(ks))
    cert, rep = build_cycle_subdivision(T, ks)
    assert validate_certificate(T, cert, PatternSpec.cycle(*ks))
    assert rep.non_dilated >= 2


@settings(max_examples=60)
@given(st.lists(st.integers(1, 3), min_size=4, max_size=8).filter(lambda ks: len(ks) % 2 == 0),
       st.integers(0, 3), st.integers(0, 10**6), st.booleans())
def test_cycle_subdivision_in_random_tournaments(ks, spare, seed, shuffle):
    ks = list(ks)
    for i in range(0, len(ks), 2):
        if ks[i] + ks[i + 1] < 3:
            ks[i] = 2
    m = len(ks) // 2
    T = gen_tournament(m + sum(ks) + spare, seed)
    cert, rep = build_cycle_subdivision(T, ks, seed=seed if shuffle else None)
    spec = PatternSpec.cycle(*ks)
    assert validate_certificate(T, cert, spec)
    assert rep.non_dilated >= m
    # each connector lengthens exactly one block by one arc
    total = sum(len(b) - 1 for b in cert.paths)
    assert total == sum(ks) + m


def test_cycle_subdivision_argument_checks():
    with pytest.raises(ValueError):
        build_cycle_subdivision(transitive(10), (2, 1))
    with pytest.raises(ValueError):
        build_cycle_subdivision(transitive(10), (1, 1, 2, 1))
    with pytest.raises(ValueError):
        build_cycle_subdivision(transitive(7), (2, 1, 2, 1))
