"""Colorers for digraphs with a spanning Hamiltonian dipath, dicycle or out-tree.

Each colorer either returns a proper coloring within its bound or a
forbidden subdivision found where the bound's argument would break down.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .digraph import (
    Coloring,
    Digraph,
    Graph,
    is_hamiltonian_dicycle,
    is_hamiltonian_dipath,
    is_proper,
    underlying_graph,
)
from .engine import (
    gallai_roy_coloring,
    greedy_coloring,
    longest_dipath_from,
    partition_sum_coloring,
    product_union_coloring,
)
from .secancy import VertexOrdering, _secant_pairs, color_no_secant
from .star_trees import color_normal_nosecant
from .subdivisions import (
    PatternSpec,
    SubdivisionCertificate,
    bispindle_certificate,
    two_blocks_certificate,
    validate_certificate,
)
from .trees import RootedTree, first_tree_secant, is_out_tree_of, make_maximal_out_tree


@dataclass(frozen=True)
class ColorOrCertificate:
    """Exactly one of ``coloring`` (within ``bound``) or ``certificate`` is set."""

    spec: PatternSpec
    bound: int
    coloring: Optional[Coloring] = None
    certificate: Optional[SubdivisionCertificate] = None
    routes: tuple = ()

    def __post_init__(self):
        if (self.coloring is None) == (self.certificate is None):
            raise ValueError("exactly one of coloring and certificate must be set")

    @property
    def is_coloring(self) -> bool:
        return self.coloring is not None

    def to_json(self) -> dict:
        out = {"spec": self.spec.to_json(), "bound": self.bound}
        if self.coloring is not None:
            out.update(result="coloring", colors=list(self.coloring.colors),
                       palette=self.coloring.palette, used=self.coloring.used())
        else:
            out.update(result="certificate", certificate=self.certificate.to_json())
        if self.routes:
            out["routes"] = list(self.routes)
        return out


class InvalidCertificate(RuntimeError):
    """A constructed certificate failed validation; indicates a bug, never expected."""


def _checked(D: Digraph, cert: SubdivisionCertificate, spec: PatternSpec) -> SubdivisionCertificate:
    verdict = validate_certificate(D, cert, spec)
    if not verdict:
        raise InvalidCertificate(f"{verdict.reason}: {cert.to_json()}")
    return cert


def _coloring_result(G: Graph, c: Coloring, spec: PatternSpec, bound: int, routes=()) -> ColorOrCertificate:
    if not is_proper(G, c) or c.palette > bound:
        raise AssertionError(f"coloring outside its guarantee (palette {c.palette}, bound {bound})")
    return ColorOrCertificate(spec, bound, coloring=c, routes=tuple(routes))


def _class_secant(D: Digraph, members: Sequence[int], pos: dict) -> Optional[tuple]:
    inside = set(members)
    edges = [(u, v) for u, v in underlying_graph(D).edges if u in inside and v in inside]
    found = _secant_pairs(edges, pos, first_only=True)
    return next(iter(found)) if found else None


def _interleaved(pos: dict, e1, e2) -> tuple[int, int, int, int, tuple, tuple]:
    """Positions ``l < p < m < q`` with ``e1 = {l, m}`` and ``e2 = {p, q}``."""
    a = sorted((pos[e1[0]], pos[e1[1]]))
    b = sorted((pos[e2[0]], pos[e2[1]]))
    if a > b:
        a, b, e1, e2 = b, a, e2, e1
    return a[0], b[0], a[1], b[1], e1, e2


def _forward(D: Digraph, pos: dict, e) -> bool:
    u, v = e
    if pos[u] > pos[v]:
        u, v = v, u
    return D.has_arc(u, v)


def crossing_chords_certificate(D: Digraph, R: Sequence[int], e1, e2) -> SubdivisionCertificate:
    """Two-blocks cycle from two interleaving chords of the dipath ``R``."""
    pos = {v: i for i, v in enumerate(R)}
    l, p, m, q, e1, e2 = _interleaved(pos, e1, e2)

    def seg(i, j):
        return list(R[i:j + 1])

    f1, f2 = _forward(D, pos, e1), _forward(D, pos, e2)
    if f1 and f2:
        return two_blocks_certificate([R[l]] + seg(m, q), seg(l, p) + [R[q]])
    if not f1 and not f2:
        return two_blocks_certificate([R[m]] + seg(l, p), seg(m, q) + [R[p]])
    if f1:
        return two_blocks_certificate([R[l]] + seg(m, q) + [R[p]], seg(l, p))
    return two_blocks_certificate([R[m]] + seg(l, p) + [R[q]], seg(m, q))


def _normalize(k1: int, k2: int) -> tuple[int, int]:
    if min(k1, k2) < 1:
        raise ValueError("path lengths must be positive")
    return max(k1, k2), min(k1, k2)


# --- Hamiltonian dipath -----------------------------------------------------------


def color_hamdipath_c2free(D: Digraph, P: Sequence[int], k1: int, k2: int) -> ColorOrCertificate:
    """At most ``3*k1`` colors, or a two-blocks cycle ``C(k1, k2)`` subdivision.

    Vertices are split by position modulo ``k1``; each class, ordered along
    ``P``, is 3-colored unless two of its chords interleave.
    """
    k1, k2 = _normalize(k1, k2)
    P = list(P)
    if not is_hamiltonian_dipath(D, P):
        raise ValueError("P is not a Hamiltonian dipath of D")
    spec = PatternSpec.two_blocks(k1, k2)
    G = underlying_graph(D)
    pos = {v: i for i, v in enumerate(P)}
    parts = []
    for i in range(min(k1, D.n)):
        members = P[i::k1]
        pair = _class_secant(D, members, {v: pos[v] for v in members})
        if pair is not None:
            cert = crossing_chords_certificate(D, P, *pair)
            return ColorOrCertificate(spec, 3 * k1, certificate=_checked(D, cert, spec))
        sub, _ = G.induced(members)
        parts.append((members, color_no_secant(sub, VertexOrdering(tuple(range(len(members)))), trusted=True)))
    return _coloring_result(G, partition_sum_coloring(G, parts), spec, 3 * k1)


def greedy_dipath_cover(D: Digraph) -> list[list[int]]:
    """Vertex-disjoint dipaths covering ``D``, grown greedily at both ends."""
    left = set(range(D.n))
    cover = []
    while left:
        start = min(left, key=lambda v: (sum(u in left for u in D.in_adj[v]), v))
        path = [start]
        left.discard(start)
        grown = True
        while grown:
            grown = False
            nxt = [w for w in D.out_adj[path[-1]] if w in left]
            if nxt:
                w = min(nxt, key=lambda u: (sum(t in left for t in D.out_adj[u]) == 0, u))
                path.append(w)
                left.discard(w)
                grown = True
            prv = [w for w in D.in_adj[path[0]] if w in left]
            if prv:
                path.insert(0, min(prv))
                left.discard(path[0])
                grown = True
        cover.append(path)
    return cover


def color_pathcover_c2free(D: Digraph, k1: int, k2: int) -> ColorOrCertificate:
    """Color each path of a dipath cover with the Hamiltonian-dipath colorer, palettes disjoint."""
    k1, k2 = _normalize(k1, k2)
    spec = PatternSpec.two_blocks(k1, k2)
    cover = greedy_dipath_cover(D)
    bound = 3 * len(cover) * k1
    G = underlying_graph(D)
    parts = []
    for path in cover:
        sub, verts = D.induced(sorted(path))
        local = {v: i for i, v in enumerate(verts)}
        res = color_hamdipath_c2free(sub, [local[v] for v in path], k1, k2)
        if not res.is_coloring:
            c = res.certificate
            cert = SubdivisionCertificate(c.kind, verts[c.x], verts[c.y],
                                          tuple(tuple(verts[v] for v in p) for p in c.paths), c.directions)
            return ColorOrCertificate(spec, bound, certificate=_checked(D, cert, spec))
        parts.append((verts, res.coloring))
    return _coloring_result(G, partition_sum_coloring(G, parts), spec, bound, [f"cover:{len(cover)}"])


# --- Hamiltonian dicycle -----------------------------------------------------------


def _cycle_certificate(D: Digraph, C: Sequence[int], e1, e2) -> SubdivisionCertificate:
    pos = {v: i for i, v in enumerate(C)}
    l, p, m, q, e1, e2 = _interleaved(pos, e1, e2)

    def seg(i, j):
        return list(C[i:j + 1])

    wrap = list(C[q:]) + list(C[:l + 1])
    f1, f2 = _forward(D, pos, e1), _forward(D, pos, e2)
    if f1 and f2:
        return bispindle_certificate(seg(l, p) + [C[q]], [C[l]] + seg(m, q), wrap)
    if f1:
        return bispindle_certificate([C[q]] + seg(p, m), wrap + [C[m]], seg(m, q))
    if f2:
        return bispindle_certificate(seg(p, m) + [C[l]], [C[p]] + wrap, seg(l, p))
    return bispindle_certificate([C[m]] + seg(l, p), seg(m, q) + [C[p]], seg(p, m))


def color_hamcycle_bispindlefree(D: Digraph, C: Sequence[int], k1: int, k2: int, k3: int) -> ColorOrCertificate:
    """At most ``4k`` colors, ``k = max(k1, k2, k3)``, or a ``B(k1, k2; k3)`` subdivision."""
    spec = PatternSpec.bispindle(k1, k2, k3)
    k = max(k1, k2, k3)
    C = list(C)
    if not is_hamiltonian_dicycle(D, C):
        raise ValueError("C is not a Hamiltonian dicycle of D")
    G = underlying_graph(D)
    pos = {v: i for i, v in enumerate(C)}
    parts = []
    for i in range(min(k, D.n)):
        members = C[i + k::k]
        pair = _class_secant(D, members, {v: pos[v] for v in members})
        if pair is not None:
            cert = _cycle_certificate(D, C, *pair)
            return ColorOrCertificate(spec, 4 * k, certificate=_checked(D, cert, spec))
        sub, _ = G.induced(members)
        c = color_no_secant(sub, VertexOrdering(tuple(range(len(members)))), trusted=True)
        parts.append(([C[i]] + members, Coloring((4,) + c.colors, 4)))
    return _coloring_result(G, partition_sum_coloring(G, parts), spec, 4 * k)


def color_hamcycle_b1free(D: Digraph, C: Sequence[int], k1: int, k3: int) -> ColorOrCertificate:
    """At most ``2k - 1`` colors, ``k = max(k1, k3) >= 2``, or a ``B(k1, 1; k3)`` subdivision.

    Each vertex may only be adjacent to its ``k - 1`` nearest cycle
    neighbours on either side; a farther neighbour closes the bispindle.
    """
    k = max(k1, k3)
    if k < 2:
        raise ValueError("needs max(k1, k3) >= 2")
    spec = PatternSpec.bispindle(k1, 1, k3)
    C = list(C)
    if not is_hamiltonian_dicycle(D, C):
        raise ValueError("C is not a Hamiltonian dicycle of D")
    n = D.n
    G = underlying_graph(D)
    if n <= 2 * k - 1:
        return _coloring_result(G, Coloring(tuple(range(1, n + 1)), n), spec, 2 * k - 1, ["distinct"])
    pos = {v: i for i, v in enumerate(C)}
    for s in range(n):
        x = C[s]
        for w in sorted(G.adj[x]):
            t = (pos[w] - s) % n
            if k <= t <= n - k:
                rot = C[s:] + C[:s]
                around, back = rot[:t + 1], rot[t:] + [x]
                if D.has_arc(x, w):
                    cert = bispindle_certificate(around, [x, w], back)
                else:
                    cert = bispindle_certificate(back, [w, x], around)
                return ColorOrCertificate(spec, 2 * k - 1, certificate=_checked(D, cert, spec))
    c = greedy_coloring(G)
    return _coloring_result(G, Coloring(c.colors, 2 * k - 1), spec, 2 * k - 1, ["greedy"])


# --- spanning out-trees ----------------------------------------------------------


def _tree_chord_certificate(D: Digraph, T: RootedTree, j1, j2) -> SubdivisionCertificate:
    deepest = max((j1[1], j2[1]), key=lambda v: T.levels[v])
    R = T.path_between(T.root, deepest)
    return crossing_chords_certificate(D, R, j1, j2)


def _transversal_certificate(T: RootedTree, path: Sequence[int]) -> SubdivisionCertificate:
    """Two-blocks cycle from a dipath of non-tree-comparable forward arcs."""
    last = path[-1]
    anc = [j for j in range(len(path) - 1) if T.is_ancestor(path[j], last)]
    if anc:
        a = max(anc)
        x = T.lca(path[a], path[a + 1])
        return two_blocks_certificate(
            T.path_between(x, path[a + 1]) + list(path[a + 2:]),
            T.path_between(x, last),
        )
    x = T.lca(path[0], last)
    return two_blocks_certificate(T.path_between(x, last), T.path_between(x, path[0]) + list(path[1:]))


def color_outtree_c2free(D: Digraph, T: RootedTree, k1: int, k2: int) -> ColorOrCertificate:
    """At most ``4*k1*(k2-1)`` colors, or a ``C(k1, k2)`` subdivision.

    The tree is first made maximal. Vertices are split by level modulo
    ``k1``; inside a class, arcs between tree-comparable vertices are
    4-colored through the tree (no interleaving chords allowed) and the rest,
    all pointing down the tree, get a longest-dipath coloring with fewer than
    ``k2`` colors. The two colorings are multiplied per class.
    """
    k1, k2 = _normalize(k1, k2)
    if k2 < 2:
        raise ValueError("needs min(k1, k2) >= 2")
    if not is_out_tree_of(D, T):
        raise ValueError("T is not a spanning out-tree of D")
    spec = PatternSpec.two_blocks(k1, k2)
    bound = 4 * k1 * (k2 - 1)
    T = make_maximal_out_tree(D, T)
    lv = T.levels
    G = underlying_graph(D)
    tree_edges = T.edges()
    parts, routes = [], []
    for i in range(k1):
        members = [v for v in range(D.n) if lv[v] % k1 == i]
        if not members:
            continue
        inside = set(members)
        arcs = [(u, v) for u, v in D.sorted_arcs() if u in inside and v in inside]
        a1 = [e for e in arcs if T.comparable(*e)]
        a2 = [e for e in arcs if not T.comparable(*e)]

        g1 = Graph(D.n, frozenset(tree_edges) | frozenset((min(e), max(e)) for e in a1))
        pair = first_tree_secant(g1, T)
        if pair is not None:
            cert = _tree_chord_certificate(D, T, *pair)
            return ColorOrCertificate(spec, bound, certificate=_checked(D, cert, spec))
        c1_full, route = color_normal_nosecant(g1, T)
        routes.append(route)

        d2 = Digraph(D.n, frozenset(a2))
        gr = gallai_roy_coloring(d2)
        if gr.palette >= k2:
            top = next(v for v in range(D.n) if gr.colors[v] >= k2)
            path = longest_dipath_from(d2, gr, top)[:k2]
            cert = _transversal_certificate(T, path)
            return ColorOrCertificate(spec, bound, certificate=_checked(D, cert, spec))

        local1, _ = Graph(D.n, frozenset((min(e), max(e)) for e in a1)).induced(members)
        local2, _ = Graph(D.n, frozenset((min(e), max(e)) for e in a2)).induced(members)
        c1 = Coloring(tuple(c1_full.colors[v] for v in members), 4)
        c2 = Coloring(tuple(gr.colors[v] for v in members), k2 - 1)
        parts.append((members, product_union_coloring(local1, c1, local2, c2)))
    return _coloring_result(G, partition_sum_coloring(G, parts), spec, bound, routes)
