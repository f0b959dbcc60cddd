"""Bound-verification experiments and the 4-coloring conjecture scan.

Reports are pure functions of their configuration: trial ``i`` draws its
instance from seed ``config.seed * 1_000_003 + i`` and no timings are stored.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .digraph import (
    Graph,
    chromatic_number_exact,
    independence_number,
    is_proper,
    k_coloring,
    underlying_graph,
)
from .generators import (
    gen_ham_dicycle_digraph,
    gen_ham_dipath_digraph,
    gen_nosecant_ordering_graph,
    gen_outtree_digraph,
    gen_random_digraph,
    gen_star_tree_instance,
    gen_subdivision_free,
    min_star_size,
    random_nosecant_instance,
    tree_of_shape,
)
from .io import FORMAT, digraph_to_json, graph_to_json, instance_hash, tree_instance_to_json
from .secancy import VertexOrdering, color_no_secant, degeneracy
from .star_trees import (
    CounterexampleReport,
    _bipartition,
    color_normal_nosecant,
    color_star0,
    color_star1,
)
from .structural import (
    color_hamcycle_b1free,
    color_hamcycle_bispindlefree,
    color_hamdipath_c2free,
    color_outtree_c2free,
    color_pathcover_c2free,
)
from .subdivisions import PatternSpec, validate_certificate
from .trees import classify_star, is_maximal_out_tree, rewire_to_maximal

THEOREMS = ("3k1", "pathcover", "4k", "2k-1", "4k1(k2-1)", "nosecant3", "star0", "star1", "maxtree")

_DEFAULT_GRID = {
    "3k1": [(2, 2), (3, 2), (3, 3), (5, 2)],
    "pathcover": [(2, 2)],
    "4k": [(2, 2, 2), (2, 1, 2), (3, 2, 1), (3, 3, 3)],
    "2k-1": [(2, 2), (3, 1), (3, 3), (2, 3)],
    "4k1(k2-1)": [(2, 2), (3, 2), (3, 3)],
    "nosecant3": [()],
    "star0": [()],
    "star1": [()],
    "maxtree": [()],
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    theorem: str
    trials: int = 10
    seed: int = 0
    grid: tuple = ()
    n_min: int = 5
    n_max: int = 12
    density: Optional[float] = None
    oracle_limit: int = 12
    detector_limit: int = 40
    tree_shapes: tuple = ("star0", "star1")
    workers: int = 1

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ConfigError(f"unknown theorem {self.theorem!r}; choose from {', '.join(THEOREMS)}")
        if self.trials < 0 or self.n_min < 1 or self.n_max < self.n_min:
            raise ConfigError("invalid trial count or size range")
        if self.n_max > self.detector_limit and self.theorem in ("3k1", "pathcover", "4k", "2k-1", "4k1(k2-1)"):
            raise ConfigError("instances must fit within the exact detector limit")
        if not self.grid:
            object.__setattr__(self, "grid", tuple(_DEFAULT_GRID[self.theorem]))
        object.__setattr__(self, "grid", tuple(tuple(g) for g in self.grid))
        object.__setattr__(self, "tree_shapes", tuple(self.tree_shapes))

    def to_json(self) -> dict:
        d = asdict(self)
        d["grid"] = [list(g) for g in self.grid]
        d["tree_shapes"] = list(self.tree_shapes)
        d.pop("workers")
        return d


def trial_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


def _oracle(G: Graph, cfg: ExperimentConfig) -> Optional[int]:
    return chromatic_number_exact(G, limit=cfg.oracle_limit)[0] if G.n <= cfg.oracle_limit else None


def _density(cfg: ExperimentConfig, n: int, default: float) -> float:
    return cfg.density if cfg.density is not None else min(1.0, default / n)


def _colorer_row(D, res, cfg: ExperimentConfig) -> dict:
    G = underlying_graph(D)
    row = {"branch": "coloring" if res.is_coloring else "certificate", "bound": res.bound}
    if res.is_coloring:
        c = res.coloring
        row.update(palette=c.palette, used=c.used(), proper=is_proper(G, c))
        chi = _oracle(G, cfg)
        row["oracle_chi"] = chi
        # instances are sampled subdivision-free, so a certificate would be a violation too
        row["violation"] = not row["proper"] or c.palette > res.bound or (chi is not None and chi > c.used())
    else:
        row["certificate_valid"] = bool(validate_certificate(D, res.certificate, res.spec))
        row["violation"] = True
    if res.routes:
        row["routes"] = list(res.routes)
    return row


def _trial(args) -> dict:
    cfg, i = args
    s = trial_seed(cfg.seed, i)
    rng = random.Random(s)
    params = cfg.grid[i % len(cfg.grid)]
    n = rng.randint(cfg.n_min, cfg.n_max)
    row: dict = {"trial": i, "seed": s, "params": list(params), "n": n}
    th = cfg.theorem

    if th in ("3k1", "pathcover", "4k", "2k-1", "4k1(k2-1)"):
        if th in ("3k1", "pathcover"):
            spec = PatternSpec.two_blocks(*params)
            dens = _density(cfg, n, 3.0)
            if th == "3k1":
                def base(sd):
                    return gen_ham_dipath_digraph(n, dens, sd)
            else:
                def base(sd):
                    return gen_random_digraph(n, dens, sd)
        elif th == "4k":
            spec = PatternSpec.bispindle(*params)
            dens = _density(cfg, n, 3.0)

            def base(sd):
                return gen_ham_dicycle_digraph(n, dens, sd)
        elif th == "2k-1":
            spec = PatternSpec.bispindle(params[0], 1, params[1])
            dens = _density(cfg, n, 3.0)

            def base(sd):
                return gen_ham_dicycle_digraph(max(n, 3), dens, sd)
        else:
            spec = PatternSpec.two_blocks(*params)
            shape = cfg.tree_shapes[i % len(cfg.tree_shapes)]
            n = max(n, min_star_size(int(shape[4:]))) if shape.startswith("star") else n
            row["n"], row["shape"] = n, shape
            dens = _density(cfg, n, 4.0)

            def base(sd):
                return gen_outtree_digraph(n, shape, dens, sd, backward="ancestors")
        inst = gen_subdivision_free(base, spec, s, limit=cfg.detector_limit)
        D = inst.digraph
        row["n"] = D.n
        row["instance"] = instance_hash(digraph_to_json(D))
        if th == "3k1":
            res = color_hamdipath_c2free(D, inst.structure, *params)
        elif th == "pathcover":
            res = color_pathcover_c2free(D, *params)
        elif th == "4k":
            res = color_hamcycle_bispindlefree(D, inst.structure, *params)
        elif th == "2k-1":
            res = color_hamcycle_b1free(D, inst.structure, *params)
            k = max(params)
            delta = underlying_graph(D).max_degree()
            row["max_degree"] = delta
        else:
            res = color_outtree_c2free(D, inst.structure, *params)
            row["tree_class"] = classify_star(inst.structure).kind
        row.update(_colorer_row(D, res, cfg))
        if th == "2k-1":
            row["violation"] = row["violation"] or delta > 2 * k - 2
        if th == "pathcover":
            row["cover"] = int(res.routes[0].split(":")[1]) if res.is_coloring else None
            if D.n <= cfg.oracle_limit:
                row["alpha"] = independence_number(underlying_graph(D), limit=cfg.oracle_limit)
        return row

    if th == "nosecant3":
        G, order = gen_nosecant_ordering_graph(n, s, cfg.density if cfg.density is not None else 0.5)
        row["instance"] = instance_hash(graph_to_json(G))
        d, _ = degeneracy(G)
        c = color_no_secant(G, VertexOrdering(tuple(order)))
        chi = _oracle(G, cfg)
        row.update(degeneracy=d, palette=c.palette, used=c.used(), bound=3, proper=is_proper(G, c),
                   oracle_chi=chi, branch="coloring")
        row["violation"] = d > 2 or not row["proper"] or c.used() > 3 or (chi is not None and chi > 3)
        return row

    if th in ("star0", "star1"):
        n = max(n, min_star_size(int(th[4:])))
        G, T = gen_star_tree_instance(th, n, s, cfg.density if cfg.density is not None else 0.3)
        row["n"] = n
        row["instance"] = instance_hash(tree_instance_to_json(G, T))
        c = (color_star0 if th == "star0" else color_star1)(G, T)
        chi = _oracle(G, cfg)
        row.update(palette=c.palette, used=c.used(), bound=4, proper=is_proper(G, c), oracle_chi=chi,
                   branch="coloring")
        row["violation"] = not row["proper"] or c.used() > 4 or (chi is not None and chi > 4)
        return row

    # maxtree
    inst = gen_outtree_digraph(n, "random", _density(cfg, n, 4.0), s)
    row["instance"] = instance_hash(digraph_to_json(inst.digraph))
    T, steps = rewire_to_maximal(inst.digraph, inst.structure)
    row.update(steps=len(steps), branch="maximal", bound=n * n,
               monotone=all(new > old for _, _, old, new in steps))
    row["violation"] = not (row["monotone"] and is_maximal_out_tree(inst.digraph, T) and len(steps) <= n * n)
    return row


def _summary(rows: list[dict]) -> dict:
    branches: dict = {}
    for r in rows:
        branches[r["branch"]] = branches.get(r["branch"], 0) + 1
    violations = sum(bool(r["violation"]) for r in rows)
    ratios = [r["used"] / r["bound"] for r in rows if "used" in r and r.get("bound")]
    return {
        "trials": len(rows),
        "violations": violations,
        "zero_violations": violations == 0,
        "branches": branches,
        "max_used_over_bound": max(ratios) if ratios else None,
        "max_n": max((r["n"] for r in rows), default=None),
    }


def _map(fn, items, workers: int):
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def run_bound_experiment(config: ExperimentConfig) -> dict:
    rows = _map(_trial, [(config, i) for i in range(config.trials)], config.workers)
    return {"format": FORMAT, "experiment": config.to_json(), "trials": rows, "summary": _summary(rows)}


def default_workers() -> int:
    return os.cpu_count() or 1


# --- conjecture scan ------------------------------------------------------------

FAMILIES = ("random", "whip", "star0", "star1", "star2", "path", "mixed")


@dataclass(frozen=True)
class ScanConfig:
    family: str = "random"
    n_min: int = 4
    n_max: int = 12
    trials: int = 100
    seed: int = 0
    density: float = 0.3
    archive: Optional[str] = None
    workers: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.n_min < 1 or self.n_max < self.n_min or self.trials < 0:
            raise ConfigError("invalid size range or trial count")


def _scan_trial(args) -> tuple[dict, Optional[dict]]:
    cfg, i = args
    s = trial_seed(cfg.seed, i)
    rng = random.Random(s)
    family = cfg.family
    if family == "mixed":
        family = rng.choice(FAMILIES[:-1])
    lo = cfg.n_min
    if family.startswith("star"):
        lo = max(lo, min_star_size(int(family[4:])))
    elif family == "whip":
        lo = max(lo, 4)
    n = rng.randint(lo, max(lo, cfg.n_max))
    T = tree_of_shape(family, n, rng)
    G = random_nosecant_instance(T, rng, cfg.density, saturated=True)
    cls = classify_star(T)
    row = {"trial": i, "seed": s, "family": family, "n": n, "edges": len(G.edges),
           "tree_class": cls.kind if not cls.is_star else f"star{cls.level}",
           "instance": instance_hash(tree_instance_to_json(G, T))}
    if _bipartition(G) is not None:
        row.update(search_nodes=0, colors=2, result="colored")
        return row, None
    sol, nodes = k_coloring(G, 4)
    row["search_nodes"] = nodes
    if sol is None:
        row.update(result="counterexample")
        return row, CounterexampleReport(G, T, nodes).to_json()
    row.update(colors=max(sol), result="colored")
    if cls.is_star and cls.level in (0, 1):
        c, route = color_normal_nosecant(G, T)
        row["dedicated"] = route
        row["dedicated_proper"] = is_proper(G, c) and c.palette <= 4
    return row, None


def scan_conjecture(config: ScanConfig) -> dict:
    """Search every instance for a 4-coloring; archive instances that have none."""
    out = _map(_scan_trial, [(config, i) for i in range(config.trials)], config.workers)
    rows = [r for r, _ in out]
    found = [cx for _, cx in out if cx is not None]
    archived = []
    if found and config.archive:
        os.makedirs(config.archive, exist_ok=True)
        for cx, r in zip(found, [r for r, c in out if c is not None]):
            path = os.path.join(config.archive, f"counterexample-{r['seed']}.json")
            with open(path, "w") as fh:
                json.dump({"format": FORMAT, **cx}, fh, sort_keys=True)
            archived.append(path)
    nodes = [r["search_nodes"] for r in rows]
    summary = {
        "trials": len(rows),
        "counterexamples": len(found),
        "archived": archived,
        "mean_search_nodes": (sum(nodes) / len(nodes)) if nodes else 0,
        "max_search_nodes": max(nodes, default=0),
        "dedicated_failures": sum(r.get("dedicated_proper") is False for r in rows),
        "tree_classes": {c: sum(r["tree_class"] == c for r in rows) for c in sorted({r["tree_class"] for r in rows})},
    }
    cfg = {k: v for k, v in asdict(config).items() if k not in ("workers", "archive", "extra")}
    return {"format": FORMAT, "scan": cfg, "trials": rows, "summary": summary}
