"""Rooted spanning trees: normal trees, out-trees, tree-relative secancy,
saturation and the star^i-like classification."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .digraph import Digraph, Graph
from .secancy import Edge, SecantPairError, _secant_pairs, interleave


@dataclass(frozen=True)
class RootedTree:
    """Spanning tree given by parent links; ``parent[root] == -1``.

    ``directed`` marks the out-tree reading (arcs parent -> child); the
    structure is the same in both readings.
    """

    root: int
    parent: tuple
    directed: bool = False

    def __post_init__(self):
        parent = tuple(int(p) for p in self.parent)
        object.__setattr__(self, "parent", parent)
        n = len(parent)
        if not 0 <= self.root < n:
            raise ValueError("root out of range")
        if parent[self.root] != -1:
            raise ValueError("root must have parent -1")
        for v, p in enumerate(parent):
            if v != self.root and not 0 <= p < n:
                raise ValueError(f"vertex {v} has invalid parent {p}")
        # every vertex must reach the root without revisiting
        self.levels  # noqa: B018 - validates acyclicity

    @classmethod
    def from_edges(cls, n: int, root: int, edges: Iterable, directed: bool = False) -> "RootedTree":
        nb = [[] for _ in range(n)]
        for u, v in edges:
            nb[u].append(v)
            nb[v].append(u)
        parent = [-2] * n
        parent[root] = -1
        q = deque([root])
        while q:
            u = q.popleft()
            for w in sorted(nb[u]):
                if parent[w] == -2:
                    parent[w] = u
                    q.append(w)
        if -2 in parent:
            raise ValueError("edges do not span a tree")
        return cls(root, tuple(parent), directed)

    @property
    def n(self) -> int:
        return len(self.parent)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(v)
        return tuple(tuple(c) for c in ch)

    @cached_property
    def levels(self) -> tuple[int, ...]:
        lv = [-1] * self.n
        lv[self.root] = 0
        for v in range(self.n):
            chain = []
            u = v
            while lv[u] < 0:
                chain.append(u)
                u = self.parent[u]
                if len(chain) > self.n:
                    raise ValueError("parent links contain a cycle")
            for w in reversed(chain):
                lv[w] = lv[self.parent[w]] + 1
        return tuple(lv)

    @cached_property
    def anc_mask(self) -> tuple[int, ...]:
        """Bitmask of the ancestors of each vertex, the vertex included."""
        masks = [0] * self.n
        for v in sorted(range(self.n), key=lambda u: self.levels[u]):
            p = self.parent[v]
            masks[v] = (masks[p] if p >= 0 else 0) | (1 << v)
        return tuple(masks)

    def _check(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise KeyError(f"vertex {x} not in tree")

    def level(self, x: int) -> int:
        self._check(x)
        return self.levels[x]

    def ancestors(self, x: int) -> list[int]:
        """Vertices of T[root, x], root first."""
        self._check(x)
        path = []
        while x >= 0:
            path.append(x)
            x = self.parent[x]
        return path[::-1]

    def subtree(self, x: int) -> set[int]:
        self._check(x)
        out = {x}
        stack = [x]
        while stack:
            for c in self.children[stack.pop()]:
                out.add(c)
                stack.append(c)
        return out

    def is_ancestor(self, a: int, b: int) -> bool:
        """``a <=_T b``."""
        return bool(self.anc_mask[b] >> a & 1)

    def comparable(self, a: int, b: int) -> bool:
        return self.is_ancestor(a, b) or self.is_ancestor(b, a)

    def lca(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        while self.levels[x] > self.levels[y]:
            x = self.parent[x]
        while self.levels[y] > self.levels[x]:
            y = self.parent[y]
        while x != y:
            x, y = self.parent[x], self.parent[y]
        return x

    def path_between(self, a: int, b: int) -> list[int]:
        """T[a, b] for ``a <=_T b``, listed from ``a`` down to ``b``."""
        if not self.is_ancestor(a, b):
            raise ValueError(f"{a} is not an ancestor of {b}")
        out = []
        while b != a:
            out.append(b)
            b = self.parent[b]
        out.append(a)
        return out[::-1]

    def edges(self) -> set[Edge]:
        return {(min(v, p), max(v, p)) for v, p in enumerate(self.parent) if p >= 0}

    def arcs(self) -> set[tuple[int, int]]:
        return {(p, v) for v, p in enumerate(self.parent) if p >= 0}

    def graph(self) -> Graph:
        return Graph(self.n, frozenset(self.edges()))

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (1 if self.parent[v] >= 0 else 0)

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if not self.children[v]]

    def root_paths(self) -> list[list[int]]:
        """Root-to-leaf paths (leaves in the rooted sense)."""
        return [self.ancestors(v) for v in self.leaves()]

    def with_parent(self, updates: dict) -> "RootedTree":
        parent = list(self.parent)
        for v, p in updates.items():
            parent[v] = p
        return RootedTree(self.root, tuple(parent), self.directed)


def _check_spanning(G: Graph, T: RootedTree) -> None:
    if T.n != G.n:
        raise ValueError(f"tree spans {T.n} vertices, graph has {G.n}")
    missing = T.edges() - G.edges
    if missing:
        raise ValueError(f"tree edges {sorted(missing)[:3]} missing from graph")


def is_normal(G: Graph, T: RootedTree) -> bool:
    _check_spanning(G, T)
    return all(T.comparable(u, v) for u, v in G.edges)


def _require_normal(G: Graph, T: RootedTree) -> None:
    if not is_normal(G, T):
        raise ValueError("tree is not normal in the graph")


def dfs_normal_tree(G: Graph, root: int = 0) -> RootedTree:
    """Depth-first spanning tree; DFS trees are normal."""
    if not 0 <= root < max(G.n, 1):
        raise ValueError("root out of range")
    if not G.is_connected():
        raise ValueError("graph is disconnected")
    parent = [-2] * G.n
    parent[root] = -1
    stack = [(root, iter(sorted(G.adj[root])))]
    while stack:
        u, it = stack[-1]
        for w in it:
            if parent[w] == -2:
                parent[w] = u
                stack.append((w, iter(sorted(G.adj[w]))))
                break
        else:
            stack.pop()
    return RootedTree(root, tuple(parent))


# --- out-trees ---------------------------------------------------------------


def is_out_tree_of(D: Digraph, T: RootedTree) -> bool:
    return T.n == D.n and all(D.has_arc(p, v) for p, v in T.arcs())


def _violating_arc(D: Digraph, T: RootedTree) -> Optional[tuple[int, int]]:
    lv = T.levels
    for x, y in D.sorted_arcs():
        if lv[x] >= lv[y] and not T.is_ancestor(y, x):
            return x, y
    return None


def rewire_to_maximal(D: Digraph, T: RootedTree) -> tuple[RootedTree, list[tuple[int, int, int, int]]]:
    """Rehang vertices until every level-non-increasing arc points to an ancestor.

    Returns the maximal out-tree and the steps ``(x, y, old_level, new_level)``
    where ``y`` was rehung below ``x``. Levels never decrease along the way and
    the rehung vertex always gains depth.
    """
    if not is_out_tree_of(D, T):
        raise ValueError("tree is not a spanning out-tree of the digraph")
    T = RootedTree(T.root, T.parent, directed=True)
    steps = []
    bound = D.n * D.n
    while True:
        arc = _violating_arc(D, T)
        if arc is None:
            return T, steps
        x, y = arc
        old = T.levels
        T = T.with_parent({y: x})
        new = T.levels
        if not new[y] > old[y] or any(a < b for a, b in zip(new, old)):
            raise RuntimeError("rewiring step decreased a level")
        steps.append((x, y, old[y], new[y]))
        if len(steps) > bound:
            raise RuntimeError("rewiring did not terminate within n^2 steps")


def make_maximal_out_tree(D: Digraph, T: RootedTree) -> RootedTree:
    return rewire_to_maximal(D, T)[0]


def is_maximal_out_tree(D: Digraph, T: RootedTree) -> bool:
    return is_out_tree_of(D, T) and _violating_arc(D, T) is None


# --- tree-relative secancy -----------------------------------------------------


def _oriented(T: RootedTree, e: Edge) -> tuple[int, int]:
    u, v = e
    return (u, v) if T.is_ancestor(u, v) else (v, u)


def tree_jumps(G: Graph, T: RootedTree) -> list[tuple[int, int]]:
    """Comparable non-tree edges as ``(lower, upper)`` pairs."""
    lv = T.levels
    out = []
    for e in sorted(G.edges):
        a, b = _oriented(T, e)
        if T.is_ancestor(a, b) and lv[b] - lv[a] > 1:
            out.append((a, b))
    return out


def secant_pairs_wrt_tree(G: Graph, T: RootedTree) -> set[tuple[Edge, Edge]]:
    """Edge pairs secant along some root-starting path of ``T``."""
    _require_normal(G, T)
    found = set()
    for path in T.root_paths():
        on = set(path)
        pos = {v: i for i, v in enumerate(path)}
        found |= _secant_pairs([e for e in G.edges if e[0] in on and e[1] in on], pos)
    return found


def jumps_secant(T: RootedTree, j1: tuple[int, int], j2: tuple[int, int]) -> bool:
    """Whether two ``(lower, upper)`` jumps lie on one root path and interleave."""
    (a, b), (c, d) = j1, j2
    if not T.comparable(b, d):
        return False
    lv = T.levels
    return interleave((lv[a], lv[b]), (lv[c], lv[d]))


def first_tree_secant(G: Graph, T: RootedTree) -> Optional[tuple[tuple[int, int], tuple[int, int]]]:
    js = tree_jumps(G, T)
    for j1, j2 in combinations(js, 2):
        if jumps_secant(T, j1, j2):
            return j1, j2
    return None


def has_tree_secant(G: Graph, T: RootedTree) -> bool:
    return first_tree_secant(G, T) is not None


def saturate(G: Graph, T: RootedTree) -> Graph:
    """Add comparable non-edges, shallowest first, while no secant pair appears."""
    _require_normal(G, T)
    pair = first_tree_secant(G, T)
    if pair is not None:
        raise SecantPairError(pair)
    lv = T.levels
    js = tree_jumps(G, T)
    cands = []
    for b in range(T.n):
        for a in T.ancestors(b)[:-2]:
            if not G.has_edge(a, b):
                cands.append((lv[a], lv[b], a, b))
    added = []
    for _, _, a, b in sorted(cands):
        if not any(jumps_secant(T, (a, b), j) for j in js):
            js.append((a, b))
            added.append((a, b))
    return G.with_edges(added)


def is_saturated(G: Graph, T: RootedTree) -> bool:
    if not is_normal(G, T) or has_tree_secant(G, T):
        return False
    js = tree_jumps(G, T)
    for b in range(T.n):
        for a in T.ancestors(b)[:-2]:
            if not G.has_edge(a, b) and not any(jumps_secant(T, (a, b), j) for j in js):
                return False
    return True


# --- star^i-like classification ----------------------------------------------


@dataclass(frozen=True)
class StarClass:
    """``kind`` is one of ``whip``, ``star``, ``path``, ``other``.

    ``level`` is ``i`` for star^i-like trees (0 for whips), else ``None``.
    ``nodes`` are the vertices of tree degree greater than 2.
    """

    kind: str
    level: Optional[int]
    nodes: tuple = field(default=())
    center: Optional[int] = None

    @property
    def is_star(self) -> bool:
        return self.kind in ("whip", "star")


def _undirected_adj(T: RootedTree) -> list[list[int]]:
    nb = [[] for _ in range(T.n)]
    for u, v in T.edges():
        nb[u].append(v)
        nb[v].append(u)
    return nb


def leaf_node_depths(T: RootedTree, center: int) -> dict:
    """For each tree leaf, the number of nodes on its path from ``center``."""
    nb = _undirected_adj(T)
    is_node = [len(a) > 2 for a in nb]
    depth = {center: int(is_node[center])}
    q = deque([center])
    out = {}
    while q:
        u = q.popleft()
        if len(nb[u]) == 1 and u != center:
            out[u] = depth[u]
        for w in nb[u]:
            if w not in depth:
                depth[w] = depth[u] + int(is_node[w])
                q.append(w)
    return out


def classify_star(T: RootedTree) -> StarClass:
    nb = _undirected_adj(T)
    nodes = tuple(v for v in range(T.n) if len(nb[v]) > 2)
    if not nodes:
        return StarClass("path", None, nodes)
    for c in nodes:
        depths = set(leaf_node_depths(T, c).values())
        if len(depths) == 1:
            level = depths.pop() - 1
            if level == 0 and all(not T.children[ch] for ch in T.children[c]):
                return StarClass("whip", 0, nodes, c)
            return StarClass("star", level, nodes, c)
    return StarClass("other", None, nodes)


# --- jump taxonomy -------------------------------------------------------------


@dataclass(frozen=True)
class Jump:
    lower: int
    upper: int
    minimal: bool
    higher: bool


@dataclass(frozen=True)
class JumpTaxonomy:
    tree: RootedTree
    jumps: tuple

    def over(self, x: int) -> list[Jump]:
        """Jumps ``yz`` with ``y <=_T x <=_T z``."""
        T = self.tree
        return [j for j in self.jumps if T.is_ancestor(j.lower, x) and T.is_ancestor(x, j.upper)]


def jump_taxonomy(G: Graph, T: RootedTree) -> JumpTaxonomy:
    _require_normal(G, T)
    js = tree_jumps(G, T)
    lv = T.levels
    top = max((lv[a] for a, _ in js), default=None)
    out = []
    for a, b in js:
        span = set(T.path_between(a, b))
        minimal = not any((c, d) != (a, b) and c in span and d in span for c, d in js)
        out.append(Jump(a, b, minimal, lv[a] == top))
    return JumpTaxonomy(T, tuple(out))
