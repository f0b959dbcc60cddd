"""Oriented cycles with many exact blocks inside tournaments.

A tournament of order ``m + k_1 + ... + k_2m`` is cut into ``m`` disjoint
subtournaments; each yields two dipaths out of a common source, and the
terminal vertices of neighbouring pairs are joined by the tournament arc
between them. Each joining arc lengthens exactly one of the two blocks it
touches, so at least ``m`` blocks keep their pattern length.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .digraph import Digraph
from .subdivisions import (
    MULTI_BLOCK,
    DilationReport,
    PatternSpec,
    SubdivisionCertificate,
    dilation_report,
)


class SearchExhausted(RuntimeError):
    """No two-blocks path found where one is guaranteed to exist."""


def _dipaths_of_length(D: Digraph, start: int, k: int, banned: int):
    """All dipaths with exactly ``k`` arcs from ``start`` avoiding ``banned``."""
    path = [start]

    def rec(mask):
        if len(path) == k + 1:
            yield list(path)
            return
        for w in D.out_adj[path[-1]]:
            if not mask >> w & 1:
                path.append(w)
                yield from rec(mask | 1 << w)
                path.pop()

    yield from rec(banned | 1 << start)


def find_two_blocks_path(T: Digraph, k1: int, k2: int) -> tuple[list[int], list[int]]:
    """Dipaths of lengths exactly ``k1`` and ``k2`` sharing only their first vertex."""
    if min(k1, k2) < 1 or k1 + k2 < 3:
        raise ValueError("needs k1, k2 >= 1 and k1 + k2 >= 3")
    if T.n < k1 + k2 + 1:
        raise ValueError("tournament too small")
    if not T.is_tournament():
        raise ValueError("not a tournament")
    sources = sorted(range(T.n), key=lambda v: (-len(T.out_adj[v]), v))
    for s in sources:
        for q1 in _dipaths_of_length(T, s, k1, 0):
            used = 0
            for v in q1:
                used |= 1 << v
            for q2 in _dipaths_of_length(T, s, k2, used & ~(1 << s)):
                return q1, q2
    raise SearchExhausted(f"no two-blocks path P({k1},{k2}) in a tournament of order {T.n}")


def build_cycle_subdivision(T: Digraph, ks: Sequence[int], seed: Optional[int] = None
                            ) -> tuple[SubdivisionCertificate, DilationReport]:
    """Subdivision of ``C(k_1, ..., k_2m)`` with at least ``m`` non-dilated blocks.

    Subtournaments take the lowest free vertex indices unless ``seed`` is
    given, in which case the vertex order is shuffled first.
    """
    spec = PatternSpec.cycle(*ks)
    ks = list(spec.params)
    m = len(ks) // 2
    if m < 2:
        raise ValueError("needs m >= 2")
    if any(ks[2 * i] + ks[2 * i + 1] < 3 for i in range(m)):
        raise ValueError("each pair k_{2i-1} + k_{2i} must be at least 3")
    if not T.is_tournament():
        raise ValueError("not a tournament")
    if T.n < m + sum(ks):
        raise ValueError(f"tournament order {T.n} below {m + sum(ks)}")
    pool = list(range(T.n))
    if seed is not None:
        random.Random(seed).shuffle(pool)

    blocks: list[list[int]] = []
    start = 0
    for i in range(m):
        a, b = ks[2 * i], ks[2 * i + 1]
        chunk = pool[start:start + a + b + 1]
        start += a + b + 1
        sub, verts = T.induced(chunk)
        q1, q2 = find_two_blocks_path(sub, a, b)
        blocks.append([verts[v] for v in q1])
        blocks.append([verts[v] for v in q2])

    # block 2i+1 (0-based odd) ends at x_{2i}; block 2i+2 is traversed backward from x_{2i+1}
    for i in range(m):
        fwd, back = blocks[2 * i + 1], blocks[(2 * i + 2) % (2 * m)]
        xa, xb = fwd[-1], back[-1]
        if T.has_arc(xa, xb):
            fwd.append(xb)
        else:
            back.append(xa)

    directions = tuple("backward" if i % 2 == 0 else "forward" for i in range(2 * m))
    cert = SubdivisionCertificate(MULTI_BLOCK, None, None, tuple(map(tuple, blocks)), directions)
    report = dilation_report(cert, spec, T)
    if report.non_dilated < m:
        raise AssertionError("connector accounting violated")
    return cert, report
