"""Forbidden-subdivision patterns, certificates, detectors and dilation accounting.

Detection reduces "dipath of length at least k" to an explicit prefix of k
arcs followed by an arbitrary continuation. With the prefixes fixed, the
continuations only have to satisfy reachability conditions:

* two x->y dipaths: some vertex is reachable from both prefix ends;
* two x->y dipaths plus a y->x dipath: the end of the y->x suffix is
  reachable from both x->y prefix ends.

Both statements are checked in the digraph with the prefix interiors (and x)
deleted, so the search is exact; its cost is the number of prefix tuples.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .digraph import Digraph, ScaleExceeded

TWO_BLOCKS = "two-blocks-cycle"
BISPINDLE = "bispindle"
MULTI_BLOCK = "multi-block-cycle"
KINDS = (TWO_BLOCKS, BISPINDLE, MULTI_BLOCK)

DETECTOR_LIMIT = 30
UNKNOWN = "unknown"


@dataclass(frozen=True)
class PatternSpec:
    """Forbidden oriented cycle.

    Two-blocks cycles are normalised to ``k1 >= k2`` and bispindles to
    ``k1 >= k2`` on the two x->y branches; ``k3`` is the y->x branch.
    """

    kind: str
    params: tuple

    def __post_init__(self):
        params = tuple(int(k) for k in self.params)
        if self.kind not in KINDS:
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if any(k < 1 for k in params):
            raise ValueError("pattern parameters must be positive")
        if self.kind == TWO_BLOCKS:
            if len(params) != 2:
                raise ValueError("two-blocks cycle takes (k1, k2)")
            params = tuple(sorted(params, reverse=True))
        elif self.kind == BISPINDLE:
            if len(params) != 3:
                raise ValueError("bispindle takes (k1, k2, k3)")
            params = (max(params[:2]), min(params[:2]), params[2])
        elif len(params) < 2 or len(params) % 2:
            raise ValueError("a multi-block cycle has an even number of blocks")
        object.__setattr__(self, "params", params)

    @classmethod
    def two_blocks(cls, k1: int, k2: int) -> "PatternSpec":
        return cls(TWO_BLOCKS, (k1, k2))

    @classmethod
    def bispindle(cls, k1: int, k2: int, k3: int) -> "PatternSpec":
        return cls(BISPINDLE, (k1, k2, k3))

    @classmethod
    def cycle(cls, *ks: int) -> "PatternSpec":
        return cls(MULTI_BLOCK, tuple(ks))

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": list(self.params)}

    @classmethod
    def from_json(cls, data: dict) -> "PatternSpec":
        return cls(data["kind"], tuple(data["params"]))


@dataclass(frozen=True)
class SubdivisionCertificate:
    """Explicit subdivision of a pattern.

    ``paths`` are vertex sequences listed in arc direction. For two-blocks
    cycles and bispindles ``directions`` holds ``"xy"``/``"yx"`` per path.
    For multi-block cycles the paths are the blocks in cyclic order and
    ``directions`` says whether the cycle traversal runs along each block
    (``"forward"``) or against it (``"backward"``); block 1 is backward, so
    blocks 1 and 2 share their initial vertex.
    """

    kind: str
    x: Optional[int]
    y: Optional[int]
    paths: tuple
    directions: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(tuple(int(v) for v in p) for p in self.paths))
        object.__setattr__(self, "directions", tuple(self.directions))

    def lengths(self) -> list[int]:
        return [len(p) - 1 for p in self.paths]

    def arcs(self) -> set[tuple[int, int]]:
        return {(u, v) for p in self.paths for u, v in zip(p, p[1:])}

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "x": self.x,
            "y": self.y,
            "paths": [list(p) for p in self.paths],
            "directions": list(self.directions),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubdivisionCertificate":
        return cls(data["kind"], data.get("x"), data.get("y"), tuple(map(tuple, data["paths"])),
                   tuple(data.get("directions", ())))


def two_blocks_certificate(p1: Sequence[int], p2: Sequence[int]) -> SubdivisionCertificate:
    return SubdivisionCertificate(TWO_BLOCKS, p1[0], p1[-1], (tuple(p1), tuple(p2)), ("xy", "xy"))


def bispindle_certificate(p1, p2, p3) -> SubdivisionCertificate:
    return SubdivisionCertificate(BISPINDLE, p1[0], p1[-1], (tuple(p1), tuple(p2), tuple(p3)),
                                  ("xy", "xy", "yx"))


# --- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _dipath_problem(D: Digraph, p: Sequence[int]) -> Optional[str]:
    if len(p) < 2:
        return f"path {list(p)} has no arcs"
    if len(set(p)) != len(p):
        return f"path {list(p)} repeats a vertex"
    for u, v in zip(p, p[1:]):
        if not D.has_arc(u, v):
            return f"arc {(u, v)} not in digraph"
    return None


def _interiors_disjoint(paths) -> Optional[str]:
    seen: dict = {}
    for i, p in enumerate(paths):
        for v in p[1:-1]:
            if v in seen:
                return f"vertex {v} is internal to paths {seen[v]} and {i}"
            seen[v] = i
    ends = {p[0] for p in paths} | {p[-1] for p in paths}
    hit = ends & set(seen)
    if hit:
        return f"junction vertex {min(hit)} reused inside a path"
    return None


def _dominates(lengths: Sequence[int], params: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(sorted(lengths, reverse=True), sorted(params, reverse=True)))


def validate_certificate(D: Digraph, cert: SubdivisionCertificate, spec: PatternSpec) -> Verdict:
    if cert.kind != spec.kind:
        return Verdict(False, f"certificate kind {cert.kind} does not match {spec.kind}")
    for p in cert.paths:
        problem = _dipath_problem(D, p)
        if problem:
            return Verdict(False, problem)
    if spec.kind in (TWO_BLOCKS, BISPINDLE):
        want = ("xy", "xy") if spec.kind == TWO_BLOCKS else ("xy", "xy", "yx")
        if cert.directions != want or len(cert.paths) != len(want):
            return Verdict(False, f"expected paths oriented {want}")
        x, y = cert.x, cert.y
        if x == y:
            return Verdict(False, "junctions coincide")
        for p, d in zip(cert.paths, cert.directions):
            s, t = (x, y) if d == "xy" else (y, x)
            if p[0] != s or p[-1] != t:
                return Verdict(False, f"path {list(p)} does not run {s}->{t}")
        if cert.paths[0] == cert.paths[1]:
            return Verdict(False, "the two x->y paths coincide")
        problem = _interiors_disjoint(cert.paths)
        if problem:
            return Verdict(False, problem)
        lens = cert.lengths()
        if not _dominates(lens[:2], spec.params[:2]):
            return Verdict(False, f"x->y lengths {lens[:2]} below {list(spec.params[:2])}")
        if spec.kind == BISPINDLE and lens[2] < spec.params[2]:
            return Verdict(False, f"y->x length {lens[2]} below {spec.params[2]}")
        return Verdict(True)
    return _validate_cycle(cert, spec)


def _validate_cycle(cert: SubdivisionCertificate, spec: PatternSpec) -> Verdict:
    t = len(spec.params)
    if len(cert.paths) != t or len(cert.directions) != t:
        return Verdict(False, f"expected {t} blocks")
    for i, d in enumerate(cert.directions):
        if d != ("backward" if i % 2 == 0 else "forward"):
            return Verdict(False, "block directions must alternate starting with backward")
    # traversal order of each block
    walks = [p if d == "forward" else p[::-1] for p, d in zip(cert.paths, cert.directions)]
    for i in range(t):
        if walks[i][-1] != walks[(i + 1) % t][0]:
            return Verdict(False, f"blocks {i} and {(i + 1) % t} do not meet")
    cycle = [v for w in walks for v in w[:-1]]
    if len(set(cycle)) != len(cycle):
        return Verdict(False, "blocks are not internally disjoint")
    for i, (length, k) in enumerate(zip(cert.lengths(), spec.params)):
        if length < k:
            return Verdict(False, f"block {i} has length {length} < {k}")
    return Verdict(True)


@dataclass(frozen=True)
class DilationReport:
    dilated: tuple
    non_dilated: int

    def to_json(self) -> dict:
        return {"blocks": ["dilated" if d else "exact" for d in self.dilated],
                "non_dilated": self.non_dilated}


def dilation_report(cert: SubdivisionCertificate, spec: PatternSpec,
                    D: Optional[Digraph] = None) -> DilationReport:
    """Mark each block dilated iff strictly longer than its pattern block."""
    verdict = _validate_cycle(cert, spec) if D is None else validate_certificate(D, cert, spec)
    if spec.kind != MULTI_BLOCK or not verdict:
        raise ValueError(f"invalid multi-block certificate: {verdict.reason}")
    dilated = tuple(length > k for length, k in zip(cert.lengths(), spec.params))
    return DilationReport(dilated, sum(not d for d in dilated))


# --- detectors -----------------------------------------------------------------


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reach(adj_mask: Sequence[int], src: int, allowed: int) -> int:
    seen = frontier = 1 << src
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj_mask[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def _bfs_path(adj: Sequence[Sequence[int]], src: int, dst: int, allowed: int) -> list[int]:
    prev = {src: None}
    q = deque([src])
    while q:
        u = q.popleft()
        if u == dst:
            break
        for w in adj[u]:
            if w not in prev and allowed >> w & 1:
                prev[w] = u
                q.append(w)
    path = [dst]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def _prefixes(adj: Sequence[Sequence[int]], x: int, k: int) -> list[tuple[tuple[int, ...], int]]:
    """All simple walks of exactly ``k`` arcs from ``x``, with their vertex masks."""
    out = []
    path = [x]

    def rec(mask: int):
        if len(path) == k + 1:
            out.append((tuple(path), mask))
            return
        for w in adj[path[-1]]:
            if not mask >> w & 1:
                path.append(w)
                rec(mask | 1 << w)
                path.pop()

    rec(1 << x)
    return out


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def tick(self) -> bool:
        self.used += 1
        return self.limit is not None and self.used > self.limit


def _scale(D: Digraph, limit: int, budget: Optional[int]) -> None:
    if D.n > limit and budget is None:
        raise ScaleExceeded(f"{D.n} vertices exceeds the exact detector limit {limit}")


def _share_ok(m1: int, m2: int, x: int, e1: int, e2: int) -> bool:
    """Prefix masks may meet only at ``x`` and, if the ends coincide, at that end."""
    common = m1 & m2
    if e1 == e2:
        return common == (1 << x) | (1 << e1)
    return common == 1 << x


def find_two_blocks_cycle(D: Digraph, k1: int, k2: int, limit: int = DETECTOR_LIMIT,
                          budget: Optional[int] = None):
    """Subdivision of C(k1, k2), ``None`` if there is none.

    Exact up to ``limit`` vertices. With ``budget`` set the search may run
    above the limit and returns ``UNKNOWN`` once the budget is spent.
    """
    spec = PatternSpec.two_blocks(k1, k2)
    k1, k2 = spec.params
    _scale(D, limit, budget)
    out, out_mask = D.out_adj, D.out_mask
    full = (1 << D.n) - 1
    counter = _Budget(budget)
    for x in range(D.n):
        if len(out[x]) < 2:
            continue
        pa = _prefixes(out, x, k1)
        pb = pa if k2 == k1 else _prefixes(out, x, k2)
        for A, am in pa:
            a = A[-1]
            for B, bm in pb:
                b = B[-1]
                if not _share_ok(am, bm, x, a, b) or A == B:
                    continue
                if counter.tick():
                    return UNKNOWN
                if a == b:
                    return two_blocks_certificate(A, B)
                allowed = (full & ~(am | bm)) | (1 << a) | (1 << b)
                common = _reach(out_mask, a, allowed) & _reach(out_mask, b, allowed)
                if common:
                    z = (common & -common).bit_length() - 1
                    pa_ = _bfs_path(out, a, z, allowed)
                    pb_ = _bfs_path(out, b, z, allowed)
                    on_a = {v: i for i, v in enumerate(pa_)}
                    j = next(i for i, v in enumerate(pb_) if v in on_a)
                    w = pb_[j]
                    return two_blocks_certificate(A + tuple(pa_[1:on_a[w] + 1]), B + tuple(pb_[1:j + 1]))
    return None


def find_bispindle(D: Digraph, k1: int, k2: int, k3: int, limit: int = DETECTOR_LIMIT,
                   budget: Optional[int] = None):
    """Subdivision of B(k1, k2; k3), ``None`` if there is none (see ``find_two_blocks_cycle``)."""
    spec = PatternSpec.bispindle(k1, k2, k3)
    k1, k2, k3 = spec.params
    _scale(D, limit, budget)
    out, inn, out_mask = D.out_adj, D.in_adj, D.out_mask
    full = (1 << D.n) - 1
    counter = _Budget(budget)
    for x in range(D.n):
        if len(out[x]) < 2 or not inn[x]:
            continue
        pa = _prefixes(out, x, k1)
        pb = pa if k2 == k1 else _prefixes(out, x, k2)
        # suffixes of the y->x branch, found backwards from x
        pc = [(C[::-1], cm) for C, cm in _prefixes(inn, x, k3)]
        for A, am in pa:
            a = A[-1]
            for C, cm in pc:
                c = C[0]
                if not _share_ok(am, cm, x, a, c):
                    continue
                loose = (full & ~(am | cm)) | (1 << a) | (1 << c)
                if not _reach(out_mask, a, loose) >> c & 1:
                    continue
                for B, bm in pb:
                    b = B[-1]
                    if A == B or not _share_ok(am, bm, x, a, b) or not _share_ok(bm, cm, x, b, c):
                        continue
                    if counter.tick():
                        return UNKNOWN
                    allowed = (full & ~(am | bm | cm)) | (1 << a) | (1 << b) | (1 << c)
                    if not (_reach(out_mask, a, allowed) >> c & 1 and _reach(out_mask, b, allowed) >> c & 1):
                        continue
                    q = _bfs_path(out, a, c, allowed)
                    pb_ = _bfs_path(out, b, c, allowed)
                    on_q = {v: i for i, v in enumerate(q)}
                    j = next(i for i, v in enumerate(pb_) if v in on_q)
                    w = pb_[j]
                    p1 = A + tuple(q[1:on_q[w] + 1])
                    p2 = B + tuple(pb_[1:j + 1])
                    p3 = tuple(q[on_q[w]:]) + C[1:]
                    return bispindle_certificate(p1, p2, p3)
    return None


def find_subdivision(D: Digraph, spec: PatternSpec, limit: int = DETECTOR_LIMIT,
                     budget: Optional[int] = None):
    if spec.kind == TWO_BLOCKS:
        return find_two_blocks_cycle(D, *spec.params, limit=limit, budget=budget)
    if spec.kind == BISPINDLE:
        return find_bispindle(D, *spec.params, limit=limit, budget=budget)
    raise ValueError("no detector for multi-block cycles")

