"""Linear vertex orderings, jumps, secant pairs and the no-secant 3-colorer."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .digraph import Coloring, Graph

Edge = tuple[int, int]


class SecantPairError(ValueError):
    """A no-secant precondition failed; ``pair`` holds two interleaving jumps."""

    def __init__(self, pair):
        super().__init__(f"secant pair present: {pair}")
        self.pair = pair


@dataclass(frozen=True)
class VertexOrdering:
    order: tuple

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        if len(set(order)) != len(order):
            raise ValueError("ordering repeats a vertex")
        object.__setattr__(self, "order", order)

    @cached_property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.order)}

    def __len__(self):
        return len(self.order)

    def restrict(self, vertices: Iterable[int]) -> "VertexOrdering":
        keep = set(vertices)
        return VertexOrdering(tuple(v for v in self.order if v in keep))


def _check_cover(G: Graph, L: VertexOrdering) -> None:
    if sorted(L.order) != list(range(G.n)):
        raise ValueError("ordering does not cover the vertex set")


def _jumps_by_position(edges: Iterable[Edge], pos: dict) -> list[tuple[int, int, Edge]]:
    out = []
    for u, v in edges:
        i, j = pos[u], pos[v]
        if i > j:
            i, j = j, i
        if j - i > 1:
            out.append((i, j, (u, v)))
    return out


def jumps(G: Graph, L: VertexOrdering) -> set[Edge]:
    _check_cover(G, L)
    return {e for _, _, e in _jumps_by_position(G.edges, L.position)}


def interleave(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """True iff position intervals ``a=(l,m)`` and ``b=(p,q)`` cross strictly."""
    (l, m), (p, q) = a, b
    return l < p < m < q or p < l < q < m


def _secant_pairs(edges: Iterable[Edge], pos: dict, first_only: bool = False) -> set:
    js = sorted(_jumps_by_position(edges, pos))
    found = set()
    for a, b in combinations(js, 2):
        if interleave(a[:2], b[:2]):
            found.add(tuple(sorted((a[2], b[2]))))
            if first_only:
                break
    return found


def secant_pairs(G: Graph, L: VertexOrdering) -> set[tuple[Edge, Edge]]:
    """All unordered pairs of jumps that interleave along ``L``."""
    _check_cover(G, L)
    return _secant_pairs(G.edges, L.position)


def first_secant_pair(G: Graph, L: VertexOrdering) -> Optional[tuple[Edge, Edge]]:
    _check_cover(G, L)
    found = _secant_pairs(G.edges, L.position, first_only=True)
    return next(iter(found)) if found else None


def degeneracy(G: Graph) -> tuple[int, VertexOrdering]:
    """Smallest-last elimination; ties broken by lowest vertex index."""
    deg = [G.degree(v) for v in range(G.n)]
    alive = set(range(G.n))
    order = []
    d = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        d = max(d, deg[v])
        order.append(v)
        alive.remove(v)
        for w in G.adj[v]:
            if w in alive:
                deg[w] -= 1
    return d, VertexOrdering(tuple(order))


def no_secant_elimination(G: Graph, L: VertexOrdering) -> list[int]:
    """Elimination order in which each vertex has at most two later neighbours.

    With jumps present, the vertex right after the lower end of a shortest jump
    is removed; without jumps the remaining graph is a union of paths and the
    first remaining vertex is removed.
    """
    remaining = list(L.order)
    alive = set(remaining)
    adj = G.adj
    elim = []
    while remaining:
        pos = {v: i for i, v in enumerate(remaining)}
        best = None
        for v in remaining:
            i = pos[v]
            for w in adj[v]:
                if w in alive:
                    j = pos[w]
                    if j - i > 1 and (best is None or (j - i, i) < best):
                        best = (j - i, i)
        idx = 0 if best is None else best[1] + 1
        v = remaining.pop(idx)
        alive.remove(v)
        if sum(1 for w in adj[v] if w in alive) > 2:
            raise RuntimeError(f"vertex {v} has more than two live neighbours; ordering has secant pairs")
        elim.append(v)
    return elim


def greedy_back_insertion(G: Graph, elim: Sequence[int]) -> Coloring:
    colors = [0] * G.n
    for v in reversed(elim):
        taken = {colors[w] for w in G.adj[v]}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    return Coloring.of(colors) if G.n else Coloring((), 0)


def color_no_secant(G: Graph, L: VertexOrdering, trusted: bool = False) -> Coloring:
    """Proper coloring with at most 3 colors of a graph whose ordering has no secant pairs."""
    _check_cover(G, L)
    if not trusted:
        pair = first_secant_pair(G, L)
        if pair is not None:
            raise SecantPairError(pair)
    c = greedy_back_insertion(G, no_secant_elimination(G, L))
    return Coloring(c.colors, 3) if G.n else c
