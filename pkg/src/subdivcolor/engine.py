"""Coloring combinators and primitive colorers."""

from __future__ import annotations

from typing import Optional, Sequence

from .digraph import Coloring, Digraph, Graph, is_proper


class ImproperColoring(ValueError):
    pass


def graph_union(G1: Graph, G2: Graph) -> Graph:
    """Union on vertex set ``range(max(n1, n2))``."""
    return Graph(max(G1.n, G2.n), G1.edges | G2.edges)


def _require_proper(G: Graph, c: Coloring, name: str) -> None:
    if not is_proper(G, c):
        raise ImproperColoring(f"{name} is not a proper coloring")


def product_union_coloring(G1: Graph, c1: Coloring, G2: Graph, c2: Coloring) -> Coloring:
    """Pair coloring of ``G1 ∪ G2``; pairs ``(a, b)`` are flattened to ``(a-1)*p2 + b``.

    A vertex missing from one graph takes color 1 in that coordinate.
    """
    _require_proper(G1, c1, "first coloring")
    _require_proper(G2, c2, "second coloring")
    n = max(G1.n, G2.n)
    p1, p2 = max(c1.palette, 1), max(c2.palette, 1)
    out = []
    for v in range(n):
        a = c1.colors[v] if v < G1.n else 1
        b = c2.colors[v] if v < G2.n else 1
        out.append((a - 1) * p2 + b)
    return Coloring(tuple(out), p1 * p2)


def unflatten(color: int, palette2: int) -> tuple[int, int]:
    return (color - 1) // palette2 + 1, (color - 1) % palette2 + 1


def partition_sum_coloring(G: Graph, parts: Sequence[tuple[Sequence[int], Coloring]]) -> Coloring:
    """Color each part from its own palette block; palettes add up.

    ``parts`` holds ``(vertices, coloring)`` with the coloring indexed like
    ``vertices`` and proper on the induced subgraph.
    """
    seen = sorted(v for vs, _ in parts for v in vs)
    if seen != list(range(G.n)):
        raise ValueError("parts do not partition the vertex set")
    colors = [0] * G.n
    offset = 0
    for vs, c in parts:
        sub, _ = G.induced(vs)
        _require_proper(sub, c, "part coloring")
        for v, col in zip(vs, c.colors):
            colors[v] = offset + col
        offset += c.palette
    return Coloring(tuple(colors), offset)


class CycleError(ValueError):
    pass


def topological_order(D: Digraph) -> list[int]:
    indeg = [len(a) for a in D.in_adj]
    stack = [v for v in range(D.n) if indeg[v] == 0]
    order = []
    while stack:
        u = stack.pop()
        order.append(u)
        for w in D.out_adj[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(order) != D.n:
        raise CycleError("digraph has a directed cycle")
    return order


def gallai_roy_coloring(D: Digraph) -> Coloring:
    """Color each vertex by the order of the longest dipath starting at it."""
    order = topological_order(D)
    colors = [1] * D.n
    for u in reversed(order):
        for w in D.out_adj[u]:
            colors[u] = max(colors[u], colors[w] + 1)
    return Coloring.of(colors)


def longest_dipath_from(D: Digraph, c: Coloring, v: int) -> list[int]:
    """Walk down the Gallai-Roy colors from ``v``: a dipath of order ``c[v]``."""
    path = [v]
    while c.colors[path[-1]] > 1:
        u = path[-1]
        path.append(next(w for w in D.out_adj[u] if c.colors[w] == c.colors[u] - 1))
    return path


def _components(G: Graph, removed: set) -> list[set]:
    comps = []
    seen = set(removed)
    for s in range(G.n):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        stack = [s]
        while stack:
            for w in G.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def clique_cutset_combine(G: Graph, S: Sequence[int],
                          blocks: Sequence[tuple[Sequence[int], Coloring]]) -> Coloring:
    """Glue block colorings along a clique cut-set ``S``.

    Each block is ``(vertices, coloring)`` with ``vertices ⊇ S`` and
    ``vertices - S`` a union of components of ``G - S``; the blocks must
    account for every component and there must be at least two of them.
    Block colorings are permuted so they agree on ``S``; the palette is the
    largest block palette.
    """
    S = list(S)
    Sset = set(S)
    if any(not G.has_edge(a, b) for i, a in enumerate(S) for b in S[i + 1:]):
        raise ValueError("S is not a clique")
    comps = _components(G, Sset)
    if len(comps) < 2:
        raise ValueError("S is not a cut-set")
    if len(blocks) < 2:
        raise ValueError("need at least two blocks")
    owner = {}
    for i, comp in enumerate(comps):
        for v in comp:
            owner[v] = i
    used_comps: set = set()
    for vs, _ in blocks:
        rest = set(vs) - Sset
        if not Sset <= set(vs):
            raise ValueError("block does not contain S")
        ids = {owner[v] for v in rest}
        if used_comps & ids or any(not comps[i] <= rest for i in ids):
            raise ValueError("blocks do not split along components of G - S")
        used_comps |= ids
    if len(used_comps) != len(comps):
        raise ValueError("blocks do not cover G - S")
    palette = max(c.palette for _, c in blocks)
    if palette < len(S):
        raise ValueError("palettes smaller than |S|")

    colors = [0] * G.n
    ref: Optional[dict] = None
    for vs, c in blocks:
        sub, _ = G.induced(vs)
        _require_proper(sub, c, "block coloring")
        local = dict(zip(vs, c.colors))
        if ref is None:
            ref = {s: local[s] for s in S}
            perm = {k: k for k in range(1, palette + 1)}
        else:
            perm = {local[s]: ref[s] for s in S}
            free_src = [k for k in range(1, palette + 1) if k not in perm]
            free_dst = [k for k in range(1, palette + 1) if k not in perm.values()]
            perm.update(zip(free_src, free_dst))
        for v in vs:
            colors[v] = perm[local[v]]
    return Coloring(tuple(colors), palette)


def greedy_coloring(G: Graph, order: Optional[Sequence[int]] = None) -> Coloring:
    """First-fit coloring; at most ``Δ+1`` colors for any order."""
    order = range(G.n) if order is None else order
    colors = [0] * G.n
    for v in order:
        taken = {colors[w] for w in G.adj[v]}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    return Coloring.of(colors) if G.n else Coloring((), 0)
