"""Seeded instance generators with planted structure.

Every generator draws from ``random.Random(seed)`` (Mersenne Twister), so an
instance is a pure function of its arguments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .digraph import Digraph, Graph, is_hamiltonian_dicycle, is_hamiltonian_dipath
from .subdivisions import DETECTOR_LIMIT, PatternSpec, find_subdivision
from .trees import RootedTree, classify_star, is_out_tree_of, jumps_secant, saturate

Structure = Union[list, RootedTree, None]


@dataclass(frozen=True)
class Instance:
    """A digraph with the structure it was built around.

    ``kind`` is ``digraph``, ``tournament``, ``dipath``, ``dicycle`` or ``outtree``;
    ``structure`` is the planted vertex sequence or out-tree.
    """

    digraph: Digraph
    kind: str
    structure: Structure = None
    seed: Optional[int] = None

    def planted_arcs(self) -> set:
        s = self.structure
        if self.kind == "dipath":
            return set(zip(s, s[1:]))
        if self.kind == "dicycle":
            return set(zip(s, s[1:] + s[:1]))
        if self.kind == "outtree":
            return s.arcs()
        return set()

    def check(self) -> bool:
        D, s = self.digraph, self.structure
        if self.kind == "tournament":
            return D.is_tournament()
        if self.kind == "dipath":
            return is_hamiltonian_dipath(D, s)
        if self.kind == "dicycle":
            return is_hamiltonian_dicycle(D, s)
        if self.kind == "outtree":
            return is_out_tree_of(D, s)
        return self.kind == "digraph"


def _positive(name: str, value: int, least: int = 1) -> None:
    if value < least:
        raise ValueError(f"{name} must be at least {least}")


def _density(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError("density must lie in [0, 1]")


def gen_tournament(n: int, seed: int) -> Digraph:
    _positive("n", n)
    rng = random.Random(seed)
    arcs = set()
    for u in range(n):
        for v in range(u + 1, n):
            arcs.add((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, frozenset(arcs))


def _extra_arcs(rng: random.Random, n: int, taken: set, density: float) -> set:
    out = set()
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) in taken or (v, u) in taken:
                continue
            if rng.random() < density:
                out.add((u, v) if rng.random() < 0.5 else (v, u))
    return out


def gen_random_digraph(n: int, density: float, seed: int) -> Instance:
    """Random orientation of a random graph, no planted structure."""
    _positive("n", n)
    _density(density)
    rng = random.Random(seed)
    return Instance(Digraph(n, frozenset(_extra_arcs(rng, n, set(), density))), "digraph", None, seed)


def gen_ham_dipath_digraph(n: int, density: float, seed: int) -> Instance:
    _positive("n", n)
    _density(density)
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    base = set(zip(order, order[1:]))
    arcs = base | _extra_arcs(rng, n, base, density)
    return Instance(Digraph(n, frozenset(arcs)), "dipath", order, seed)


def gen_ham_dicycle_digraph(n: int, density: float, seed: int) -> Instance:
    _positive("n", n, 3)
    _density(density)
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    base = set(zip(order, order[1:] + order[:1]))
    arcs = base | _extra_arcs(rng, n, base, density)
    return Instance(Digraph(n, frozenset(arcs)), "dicycle", order, seed)


# --- tree shapes -----------------------------------------------------------------


def _relabel(rng: random.Random, n: int, edges: list, root: int) -> RootedTree:
    perm = list(range(n))
    rng.shuffle(perm)
    return RootedTree.from_edges(n, perm[root], [(perm[u], perm[v]) for u, v in edges])


def random_tree(n: int, rng: random.Random) -> RootedTree:
    """Uniform random recursive tree, randomly labelled and rooted."""
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return _relabel(rng, n, edges, rng.randrange(n))


def path_tree(n: int, rng: random.Random) -> RootedTree:
    return _relabel(rng, n, [(v - 1, v) for v in range(1, n)], rng.randrange(n))


def whip_tree(n: int, rng: random.Random) -> RootedTree:
    """Root, a handle of ``a`` vertices, then a node whose children are all leaves."""
    _positive("size", n, 4)
    handle = rng.randrange(0, n - 2)
    edges = [(v - 1, v) for v in range(1, handle + 1)]
    node = handle
    edges += [(node, v) for v in range(handle + 1, n)]
    return _relabel(rng, n, edges, 0)


def star_tree(level: int, n: int, rng: random.Random) -> RootedTree:
    """A star^i-like tree on exactly ``n`` vertices, randomly rooted.

    Built as a skeleton of nodes and leaves, then padded by subdividing
    random edges (which keeps every leaf's node count from the center).
    """
    if level < 0:
        raise ValueError("level must be non-negative")
    edges: list = []
    count = 1
    leaves = []
    for _ in range(3):
        edges.append((0, count))
        leaves.append(count)
        count += 1
    for _ in range(level):
        nxt = []
        for leaf in leaves:
            for _ in range(2):
                edges.append((leaf, count))
                nxt.append(count)
                count += 1
        leaves = nxt
    if count > n:
        raise ValueError(f"a star^{level}-like tree needs at least {count} vertices")
    while count < n:
        i = rng.randrange(len(edges))
        u, v = edges[i]
        edges[i] = (u, count)
        edges.append((count, v))
        count += 1
    return _relabel(rng, n, edges, rng.randrange(n))


def min_star_size(level: int) -> int:
    return 1 + 3 * (2 ** (level + 1) - 1)


def tree_of_shape(shape: str, n: int, rng: random.Random) -> RootedTree:
    if shape == "random":
        return random_tree(n, rng)
    if shape == "path":
        return path_tree(n, rng)
    if shape == "whip":
        return whip_tree(n, rng)
    if shape.startswith("star"):
        return star_tree(int(shape[4:]), n, rng)
    raise ValueError(f"unknown tree shape {shape!r}")


def gen_outtree_digraph(n: int, shape: str, density: float, seed: int,
                        backward: str = "any") -> Instance:
    """A spanning out-tree of the given shape plus random arcs.

    With ``backward="ancestors"`` every arc that does not go down a level
    points to an ancestor, so the planted tree is already maximal.
    """
    _positive("n", n)
    _density(density)
    if backward not in ("any", "ancestors"):
        raise ValueError("backward must be 'any' or 'ancestors'")
    rng = random.Random(seed)
    T = tree_of_shape(shape, n, rng)
    T = RootedTree(T.root, T.parent, directed=True)
    base = T.arcs()
    lv = T.levels
    arcs = set(base)
    for u, v in sorted(_extra_arcs(rng, n, base, density)):
        if backward == "ancestors" and lv[v] <= lv[u] and not T.is_ancestor(v, u):
            if lv[u] == lv[v]:
                continue
            u, v = v, u
        arcs.add((u, v))
    return Instance(Digraph(n, frozenset(arcs)), "outtree", T, seed)


# --- graphs with a normal tree and no secant jumps ----------------------------------


def random_nosecant_instance(T: RootedTree, rng: random.Random, density: float,
                             saturated: bool = True) -> Graph:
    """Tree edges plus random non-interleaving jumps, optionally saturated."""
    cands = [(a, b) for b in range(T.n) for a in T.ancestors(b)[:-2]]
    rng.shuffle(cands)
    chosen: list = []
    for j in cands:
        if rng.random() < density and not any(jumps_secant(T, j, o) for o in chosen):
            chosen.append(j)
    G = Graph(T.n, frozenset(T.edges()) | frozenset((min(j), max(j)) for j in chosen))
    return saturate(G, T) if saturated else G


def gen_star_tree_instance(cls: str, size: int, seed: int, density: float = 0.3,
                           saturated: bool = True) -> tuple[Graph, RootedTree]:
    """Saturated instance over a tree of class ``whip``, ``star<i>``, ``path`` or ``random``."""
    rng = random.Random(seed)
    T = tree_of_shape(cls, size, rng)
    if cls.startswith("star") and classify_star(T).level != int(cls[4:]):
        raise AssertionError("generated tree has the wrong class")
    return random_nosecant_instance(T, rng, density, saturated), T


def gen_nosecant_ordering_graph(n: int, seed: int, density: float = 0.5) -> tuple[Graph, list]:
    """A graph with a random vertex order in which no two jumps interleave.

    Consecutive vertices are joined with probability 1/2, so the order is
    not always a Hamiltonian path.
    """
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(n - 1):
        if rng.random() < 0.5:
            edges.add((min(order[i], order[i + 1]), max(order[i], order[i + 1])))
    spans = [(i, j) for i in range(n) for j in range(i + 2, n)]
    rng.shuffle(spans)
    chosen: list = []
    for i, j in spans:
        if rng.random() < density and not any(i < p < j < q or p < i < q < j for p, q in chosen):
            chosen.append((i, j))
            u, v = order[i], order[j]
            edges.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(edges)), order


# --- rejection sampling ------------------------------------------------------------


class BudgetExhausted(RuntimeError):
    pass


def gen_subdivision_free(base: Callable[[int], Instance], spec: PatternSpec, seed: int,
                         budget: int = 200, limit: int = DETECTOR_LIMIT) -> Instance:
    """Delete non-planted arcs of detected subdivisions until none is left.

    ``base`` maps a seed to an instance. If a subdivision uses only planted
    arcs, a fresh base instance is drawn. ``budget`` caps detector calls.
    """
    rng = random.Random(seed)
    calls = 0
    while calls < budget:
        inst = base(rng.randrange(2 ** 31))
        if inst.digraph.n > limit:
            raise ValueError("base instance exceeds the exact detector limit")
        planted = inst.planted_arcs()
        arcs = set(inst.digraph.arcs)
        while calls < budget:
            D = Digraph(inst.digraph.n, frozenset(arcs))
            calls += 1
            cert = find_subdivision(D, spec, limit=limit)
            if cert is None:
                return Instance(D, inst.kind, inst.structure, seed)
            removable = sorted(cert.arcs() - planted)
            if not removable:
                break
            arcs.discard(rng.choice(removable))
    raise BudgetExhausted(f"no {spec.kind} free instance within {budget} detector calls")
