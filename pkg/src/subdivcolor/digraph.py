"""Digraphs, graphs, colorings and the exhaustive oracles used as ground truth.

Vertices are dense integer indices ``0..n-1``. Every object here is immutable
after construction, so all functions are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

DEFAULT_ORACLE_LIMIT = 20
DEFAULT_HAM_LIMIT = 20


class ScaleExceeded(ValueError):
    """Raised when an exhaustive routine is asked to run above its vertex limit."""


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Digraph:
    """Loop-free digraph on ``0..n-1``.

    Digons are rejected unless ``allow_digons`` is set; the instances studied
    here are orientations of simple graphs.
    """

    n: int
    arcs: frozenset = field(default_factory=frozenset)
    allow_digons: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc {(u, v)} out of range for n={self.n}")
            if not self.allow_digons and (v, u) in arcs:
                raise ValueError(f"digon between {u} and {v}")

    @classmethod
    def permissive(cls, n: int, arcs: Iterable) -> "Digraph":
        return cls(n, frozenset(map(tuple, arcs)), allow_digons=True)

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(a)) for a in out)

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        inn = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            inn[v].append(u)
        return tuple(tuple(sorted(a)) for a in inn)

    @cached_property
    def out_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in a) for a in self.out_adj)

    @cached_property
    def in_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in a) for a in self.in_adj)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def induced(self, vertices: Sequence[int]) -> tuple["Digraph", list[int]]:
        """Induced subdigraph, relabelled; returns it with the local-to-global map."""
        verts = list(vertices)
        local = {v: i for i, v in enumerate(verts)}
        arcs = [(local[u], local[v]) for u, v in self.arcs if u in local and v in local]
        return Digraph(len(verts), frozenset(arcs), self.allow_digons), verts

    def subdigraph(self, arcs: Iterable) -> "Digraph":
        """Spanning subdigraph on the given arc subset."""
        arcs = frozenset(arcs)
        if not arcs <= self.arcs:
            raise ValueError("arcs are not a subset of the digraph")
        return Digraph(self.n, arcs, self.allow_digons)

    def is_tournament(self) -> bool:
        return len(self.arcs) == self.n * (self.n - 1) // 2 and all(
            (u, v) in self.arcs or (v, u) in self.arcs for u, v in combinations(range(self.n), 2)
        )


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are stored as ``(min, max)`` pairs."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = set()
        for e in self.edges:
            u, v = tuple(e)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            edges.add(_edge(int(u), int(v)))
        object.__setattr__(self, "edges", frozenset(edges))

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in a) for a in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def with_edges(self, extra: Iterable) -> "Graph":
        return Graph(self.n, self.edges | {_edge(*e) for e in extra})

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        verts = list(vertices)
        local = {v: i for i, v in enumerate(verts)}
        edges = [(local[u], local[v]) for u, v in self.edges if u in local and v in local]
        return Graph(len(verts), frozenset(edges)), verts

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color in ``1..palette``. Properness is checked separately."""

    colors: tuple
    palette: int

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if self.palette < 0:
            raise ValueError("palette must be non-negative")
        for c in colors:
            if not 1 <= c <= self.palette:
                raise ValueError(f"color {c} outside palette 1..{self.palette}")

    @classmethod
    def of(cls, colors: Sequence[int]) -> "Coloring":
        """Coloring whose palette is its largest color."""
        colors = tuple(colors)
        return cls(colors, max(colors, default=0))

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v):
        return self.colors[v]

    def used(self) -> int:
        return len(set(self.colors))


def underlying_graph(D: Digraph) -> Graph:
    return Graph(D.n, frozenset(_edge(u, v) for u, v in D.arcs))


def is_proper(G: Graph, c: Coloring) -> bool:
    if len(c.colors) != G.n:
        raise ValueError(f"coloring covers {len(c.colors)} vertices, graph has {G.n}")
    return all(c.colors[u] != c.colors[v] for u, v in G.edges)


def _check_limit(n: int, limit: int) -> None:
    if n > limit:
        raise ScaleExceeded(f"{n} vertices exceeds the oracle limit {limit}")


def _greedy_clique(G: Graph) -> list[int]:
    best: list[int] = []
    for v in range(G.n):
        clique = [v]
        for w in sorted(G.adj[v], key=lambda u: -G.degree(u)):
            if all(w in G.adj[x] for x in clique):
                clique.append(w)
        if len(clique) > len(best):
            best = clique
    return best


def k_coloring(G: Graph, k: int, node_budget: Optional[int] = None) -> tuple[Optional[list[int]], int]:
    """Backtracking search for a proper ``k``-coloring.

    Vertices are taken in descending-degree order and a new color class is
    opened only as the next unused index (symmetry breaking). Returns the
    coloring (or ``None``) together with the number of search nodes visited.
    Raises ``TimeoutError`` if ``node_budget`` is exhausted.
    """
    n = G.n
    if n == 0:
        return [], 0
    if k <= 0:
        return None, 0
    order = sorted(range(n), key=lambda v: (-G.degree(v), v))
    colors = [0] * n
    nodes = 0
    adj = G.adj

    def rec(i: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise TimeoutError("coloring search budget exhausted")
        if i == n:
            return True
        v = order[i]
        forbidden = {colors[w] for w in adj[v]}
        for c in range(1, min(used + 1, k) + 1):
            if c in forbidden:
                continue
            colors[v] = c
            if rec(i + 1, max(used, c)):
                return True
        colors[v] = 0
        return False

    found = rec(0, 0)
    return (list(colors) if found else None), nodes


def chromatic_number_exact(G: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> tuple[int, Coloring]:
    """Exact chromatic number with an optimal witness coloring."""
    _check_limit(G.n, limit)
    if G.n == 0:
        return 0, Coloring((), 0)
    k = max(1, len(_greedy_clique(G)))
    while True:
        sol, _ = k_coloring(G, k)
        if sol is not None:
            return k, Coloring(tuple(sol), k)
        k += 1


def independence_number(G: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Size of a maximum independent set (bitmask branch and bound)."""
    _check_limit(G.n, limit)
    adj = G.adj_mask

    def rec(cand: int) -> int:
        if cand == 0:
            return 0
        v = (cand & -cand).bit_length() - 1
        if bin(cand).count("1") == 1:
            return 1
        # branch: take v, or drop v (only useful if v has a neighbour in cand)
        take = 1 + rec(cand & ~adj[v] & ~(1 << v))
        if cand & adj[v] == 0:
            return take
        return max(take, rec(cand & ~(1 << v)))

    return rec((1 << G.n) - 1)


def is_strong(D: Digraph) -> bool:
    if D.n <= 1:
        return True

    def reach(adj) -> int:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen)

    return reach(D.out_adj) == D.n and reach(D.in_adj) == D.n


def is_dipath(D: Digraph, seq: Sequence[int]) -> bool:
    return len(set(seq)) == len(seq) and all(D.has_arc(u, v) for u, v in zip(seq, seq[1:]))


def is_hamiltonian_dipath(D: Digraph, seq: Sequence[int]) -> bool:
    return len(seq) == D.n and sorted(seq) == list(range(D.n)) and is_dipath(D, seq)


def is_hamiltonian_dicycle(D: Digraph, seq: Sequence[int]) -> bool:
    return (
        D.n >= 2
        and is_hamiltonian_dipath(D, seq)
        and D.has_arc(seq[-1], seq[0])
    )


def tournament_hamiltonian_dipath(D: Digraph) -> list[int]:
    """Insertion construction: every tournament has a Hamiltonian dipath."""
    path: list[int] = []
    for v in range(D.n):
        if not path or D.has_arc(v, path[0]):
            path.insert(0, v)
            continue
        if D.has_arc(path[-1], v):
            path.append(v)
            continue
        # path[0] -> v and v -> path[-1]: some consecutive pair brackets v
        lo, hi = 0, len(path) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if D.has_arc(path[mid], v):
                lo = mid
            else:
                hi = mid
        path.insert(hi, v)
    return path


def _ham_search(D: Digraph, cycle: bool) -> Optional[list[int]]:
    n = D.n
    full = (1 << n) - 1
    out = D.out_adj
    starts = [0] if cycle else range(n)
    for s in starts:
        path = [s]

        def rec(mask: int) -> bool:
            if mask == full:
                return not cycle or D.has_arc(path[-1], s)
            for w in out[path[-1]]:
                if not mask >> w & 1:
                    path.append(w)
                    if rec(mask | 1 << w):
                        return True
                    path.pop()
            return False

        if rec(1 << s):
            return path
    return None


def find_hamiltonian_dipath(D: Digraph, limit: int = DEFAULT_HAM_LIMIT) -> Optional[list[int]]:
    if D.n == 0:
        return []
    if D.is_tournament():
        return tournament_hamiltonian_dipath(D)
    _check_limit(D.n, limit)
    return _ham_search(D, cycle=False)


def find_hamiltonian_dicycle(D: Digraph, limit: int = DEFAULT_HAM_LIMIT) -> Optional[list[int]]:
    if D.n < 2:
        return None
    _check_limit(D.n, limit)
    return _ham_search(D, cycle=True)
