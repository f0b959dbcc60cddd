"""4-colorers for graphs with a normal spanning tree and no tree-secant edges.

Whips, star^0-like and star^1-like trees have proof-backed colorers built
from clique cut-set decompositions and contractions onto Hamiltonian paths.
Anything else goes through an exact 4-coloring search, which doubles as the
counterexample scanner for the 4-color conjecture on such graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .digraph import Coloring, Graph, k_coloring
from .engine import clique_cutset_combine
from .secancy import SecantPairError, VertexOrdering, color_no_secant
from .trees import (
    RootedTree,
    StarClass,
    classify_star,
    first_tree_secant,
    is_normal,
    is_saturated,
    saturate,
    tree_jumps,
)


class ClassificationMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CounterexampleReport:
    """A normal-tree, no-secant instance with no proper 4-coloring."""

    instance: Graph
    tree: RootedTree
    search_nodes: int
    verdict: str = "no-4-coloring"

    def to_json(self) -> dict:
        return {
            "instance": {"n": self.instance.n, "edges": [list(e) for e in sorted(self.instance.edges)]},
            "tree": {"root": self.tree.root, "parent": list(self.tree.parent)},
            "search_nodes": self.search_nodes,
            "verdict": self.verdict,
        }


class ConjectureCounterexample(RuntimeError):
    def __init__(self, report: CounterexampleReport):
        super().__init__("no 4-coloring exists for a normal-tree instance without secant edges")
        self.report = report


# --- small structural helpers ---------------------------------------------------


def _sub(G: Graph, T: RootedTree, keep: Sequence[int], reparent: Optional[dict] = None):
    """Induced instance on ``keep`` with optional parent overrides (``-1`` makes a root)."""
    reparent = reparent or {}
    local = {v: i for i, v in enumerate(keep)}
    Gs, _ = G.induced(keep)
    parent = []
    for v in keep:
        p = reparent.get(v, T.parent[v])
        parent.append(-1 if p < 0 else local[p])
    return Gs, RootedTree(parent.index(-1), tuple(parent)), list(keep)


def _contract(G: Graph, T: RootedTree, groups: Sequence[set]):
    """Contract each vertex group to one vertex.

    Group members must hang from a single common parent outside the group
    (or contain the root). Kept vertices come first in index order, then one
    new vertex per group. Returns the instance and the old->new index map.
    """
    grouped = {v: gi for gi, g in enumerate(groups) for v in g}
    kept = [v for v in range(G.n) if v not in grouped]
    image = {v: i for i, v in enumerate(kept)}
    for v, gi in grouped.items():
        image[v] = len(kept) + gi
    n2 = len(kept) + len(groups)
    parent = [-1] * n2
    root = image[T.root]
    for v in kept:
        p = T.parent[v]
        parent[image[v]] = -1 if p < 0 else image[p]
    for gi, g in enumerate(groups):
        outside = {T.parent[v] for v in g if T.parent[v] not in g}
        if len(outside) > 1:
            raise ValueError("group does not hang from a single parent")
        p = outside.pop() if outside else -1
        parent[len(kept) + gi] = -1 if p < 0 else image[p]
    edges = {(image[u], image[v]) for u, v in G.edges if image[u] != image[v]}
    return Graph(n2, frozenset(edges)), RootedTree(root, tuple(parent)), image


def path_order(T: RootedTree) -> list[int]:
    """Vertices of a path-shaped tree from one end to the other (root end preferred)."""
    nb = [[] for _ in range(T.n)]
    for u, v in T.edges():
        nb[u].append(v)
        nb[v].append(u)
    if any(len(a) > 2 for a in nb):
        raise ValueError("tree is not a path")
    ends = [v for v in range(T.n) if len(nb[v]) <= 1]
    start = T.root if T.root in ends else min(ends)
    order, prev = [start], None
    while len(order) < T.n:
        u = order[-1]
        nxt = next(w for w in nb[u] if w != prev)
        prev = u
        order.append(nxt)
    return order


def _color_path_instance(G: Graph, T: RootedTree) -> Coloring:
    return color_no_secant(G, VertexOrdering(tuple(path_order(T))))


def _jump_inside(G: Graph, T: RootedTree, inside: set) -> Optional[tuple[int, int]]:
    for a, b in tree_jumps(G, T):
        if a in inside and b in inside:
            return a, b
    return None


def _cut_on_jump(G: Graph, T: RootedTree, y: int, z: int, recurse) -> Coloring:
    """Split on the clique cut-set {y, z}: the path T[y, z] and the rest with z under y."""
    span = T.path_between(y, z)
    interior = set(span[1:-1])
    g1, t1, v1 = _sub(G, T, span, {y: -1})
    c1 = _color_path_instance(g1, t1)
    keep = [v for v in range(G.n) if v not in interior]
    g2, t2, v2 = _sub(G, T, keep, {z: y})
    c2 = recurse(g2, t2)
    c1 = Coloring(c1.colors, max(c1.palette, 4))
    return clique_cutset_combine(G, [y, z], [(v1, c1), (v2, c2)])


def _two_color_below(T: RootedTree, top: int, first: int, second: int, colors: list) -> None:
    base = T.levels[top]
    for u in T.subtree(top):
        colors[u] = first if (T.levels[u] - base) % 2 == 0 else second


def _nodes(T: RootedTree) -> list[int]:
    return [v for v in range(T.n) if T.degree(v) > 2]


# --- whips ----------------------------------------------------------------------


def _whip(G: Graph, T: RootedTree) -> Coloring:
    (x,) = _nodes(T)
    leaves = set(T.children[x])
    g2, t2, image = _contract(G, T, [leaves])
    c2 = _color_path_instance(g2, t2)
    v = image[next(iter(leaves))]
    colors = [c2.colors[image[u]] for u in range(G.n)]
    for u in leaves:
        colors[u] = c2.colors[v]
    return Coloring(tuple(colors), 3)


def _prepare(G: Graph, T: RootedTree, saturate_first: bool) -> Graph:
    if not is_normal(G, T):
        raise ValueError("tree is not normal in the graph")
    pair = first_tree_secant(G, T)
    if pair is not None:
        raise SecantPairError(pair)
    if saturate_first and not is_saturated(G, T):
        G = saturate(G, T)
    return G


def color_whip(G: Graph, T: RootedTree, saturate_first: bool = True) -> Coloring:
    """3-coloring in which all leaves below the node share one color."""
    if classify_star(T).kind != "whip":
        raise ClassificationMismatch("tree is not a whip")
    H = _prepare(G, T, saturate_first)
    return _whip(H, T)


# --- star^0 ---------------------------------------------------------------------


def _star0(G: Graph, T: RootedTree) -> Coloring:
    (x,) = _nodes(T)
    below = T.subtree(x)
    jump = _jump_inside(G, T, below)
    if jump is not None:
        return _cut_on_jump(G, T, *jump, _star0)
    g2, t2, image = _contract(G, T, [below])
    c2 = _color_path_instance(g2, t2)
    v = image[x]
    colors = [0] * G.n
    for u in range(G.n):
        if u not in below:
            colors[u] = c2.colors[image[u]]
    _two_color_below(T, x, c2.colors[v], 4, colors)
    return Coloring(tuple(colors), 4)


def color_star0(G: Graph, T: RootedTree, saturate_first: bool = True) -> Coloring:
    cls = classify_star(T)
    if not (cls.is_star and cls.level == 0):
        raise ClassificationMismatch(f"tree is {cls.kind} (level {cls.level}), not star^0-like")
    H = _prepare(G, T, saturate_first)
    return _star0(H, T)


# --- star^1 ---------------------------------------------------------------------


def _search4(G: Graph, T: RootedTree) -> Coloring:
    sol, nodes = k_coloring(G, 4)
    if sol is None:
        raise ConjectureCounterexample(CounterexampleReport(G, T, nodes))
    return Coloring(tuple(sol), 4)


def _jump_avoiding_nodes(G: Graph, T: RootedTree) -> Optional[tuple[int, int]]:
    nodes = set(_nodes(T))
    for a, b in tree_jumps(G, T):
        if not nodes & set(T.path_between(a, b)):
            return a, b
    return None


def _whip_core(G: Graph, T: RootedTree) -> Optional[Coloring]:
    """Every subtree below the top node is jump-free: contract them to a whip."""
    nodes = _nodes(T)
    x = min(nodes, key=lambda v: (T.levels[v], v))
    subtrees = [T.subtree(y) for y in T.children[x]]
    if any(_jump_inside(G, T, s) for s in subtrees):
        return None
    g2, t2, image = _contract(G, T, subtrees)
    if classify_star(t2).kind != "whip":
        return None
    c2 = _whip(g2, t2)
    leaf = c2.colors[image[T.children[x][0]]]
    colors = [0] * G.n
    inside = set().union(*subtrees)
    for u in range(G.n):
        if u not in inside:
            colors[u] = c2.colors[image[u]]
    for y in T.children[x]:
        _two_color_below(T, y, leaf, 4, colors)
    return Coloring(tuple(colors), 4)


def _star1(G: Graph, T: RootedTree) -> Coloring:
    jump = _jump_avoiding_nodes(G, T)
    if jump is not None:
        return _cut_on_jump(G, T, *jump, _star1)
    core = _whip_core(G, T)
    if core is not None:
        return core
    return _search4(G, T)


def color_star1(G: Graph, T: RootedTree, saturate_first: bool = True) -> Coloring:
    """Cut-set recursion on jumps over no node; remaining cores by whip contraction or exact search."""
    cls = classify_star(T)
    if not (cls.is_star and cls.level == 1):
        raise ClassificationMismatch(f"tree is {cls.kind} (level {cls.level}), not star^1-like")
    H = _prepare(G, T, saturate_first)
    return _star1(H, T)


# --- general trees --------------------------------------------------------------


def _bipartition(G: Graph) -> Optional[list[int]]:
    colors = [0] * G.n
    for s in range(G.n):
        if colors[s]:
            continue
        colors[s] = 1
        stack = [s]
        while stack:
            u = stack.pop()
            for w in G.adj[u]:
                if not colors[w]:
                    colors[w] = 3 - colors[u]
                    stack.append(w)
                elif colors[w] == colors[u]:
                    return None
    return colors


def color_normal_nosecant_general(G: Graph, T: RootedTree):
    """Exact 4-coloring search; a ``CounterexampleReport`` if none exists."""
    _prepare(G, T, saturate_first=False)
    two = _bipartition(G)
    if two is not None:
        return Coloring(tuple(two), 2) if G.n else Coloring((), 0)
    sol, nodes = k_coloring(G, 4)
    if sol is None:
        return CounterexampleReport(G, T, nodes)
    return Coloring(tuple(sol), 4)


def color_normal_nosecant(G: Graph, T: RootedTree) -> tuple[Coloring, str]:
    """Dispatch on the tree shape; returns the coloring and the route taken.

    Raises ``ConjectureCounterexample`` if the general search fails.
    """
    cls = classify_star(T)
    if cls.is_star and cls.level in (0, 1):
        H = _prepare(G, T, saturate_first=True)
        c = _star0(H, T) if cls.level == 0 else _star1(H, T)
        return c, f"star{cls.level}"
    res = color_normal_nosecant_general(G, T)
    if isinstance(res, CounterexampleReport):
        raise ConjectureCounterexample(res)
    return res, "search"


# --- flattening to star^i-like trees ---------------------------------------------


@dataclass(frozen=True)
class Flattening:
    graph: Graph
    tree: RootedTree
    correspondence: tuple
    star: StarClass


def _best_center(T: RootedTree) -> tuple[int, int]:
    from .trees import leaf_node_depths

    best = None
    for c in _nodes(T):
        depth = max(leaf_node_depths(T, c).values())
        if best is None or (depth, c) < best:
            best = (depth, c)
    return best[1], best[0]


def flatten_to_star_like(G: Graph, T: RootedTree, require_saturated: bool = True) -> Flattening:
    """Embed ``(G, T)`` into an instance whose tree is star^i-like.

    Minimum whips (a node with two leaves) are hung below shallow leaves until
    every leaf sees the same number of nodes from a common center. Original
    vertices keep their indices, so the non-tree edges are unchanged and the
    tree order is preserved.
    """
    if require_saturated and not is_saturated(G, T):
        raise ValueError("instance is not saturated")
    _prepare(G, T, saturate_first=False)
    cls = classify_star(T)
    if cls.is_star:
        return Flattening(G, T, tuple(range(G.n)), cls)

    parent = list(T.parent)
    tree_edges: list = []

    def hang_whip(at: int) -> list[int]:
        w = len(parent)
        parent.extend([at, w, w])
        tree_edges.extend([(at, w), (w, w + 1), (w, w + 2)])
        return [w + 1, w + 2]

    if not cls.nodes:
        end = max(range(T.n), key=lambda v: (T.levels[v], -v))
        hang_whip(end)
        cur = RootedTree(T.root, tuple(parent))
    else:
        cur = T
    from .trees import leaf_node_depths

    center, depth = _best_center(cur)
    pending = [(leaf, d) for leaf, d in leaf_node_depths(cur, center).items() if d < depth]
    while pending:
        leaf, d = pending.pop()
        for new_leaf in hang_whip(leaf):
            if d + 1 < depth:
                pending.append((new_leaf, d + 1))
    T2 = RootedTree(T.root, tuple(parent))
    G2 = Graph(len(parent), G.edges | frozenset((min(e), max(e)) for e in tree_edges))
    return Flattening(G2, T2, tuple(range(G.n)), classify_star(T2))


def order_preserved(T: RootedTree, T2: RootedTree, corr: Sequence[int]) -> bool:
    return all(
        T2.is_ancestor(corr[a], corr[b])
        for a in range(T.n)
        for b in range(T.n)
        if T.is_ancestor(a, b)
    )


def non_tree_edges(G: Graph, T: RootedTree) -> set:
    return set(G.edges) - T.edges()


def mapped_edges(edges: Iterable, corr: Sequence[int]) -> set:
    return {tuple(sorted((corr[u], corr[v]))) for u, v in edges}
