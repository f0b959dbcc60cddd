"""Command-line interface: ``subdivcolor VERB [options]``.

Exit codes: 0 success, 1 property violation or counterexample, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .digraph import (
    DEFAULT_ORACLE_LIMIT,
    ScaleExceeded,
    chromatic_number_exact,
    find_hamiltonian_dicycle,
    find_hamiltonian_dipath,
    is_proper,
    underlying_graph,
)
from .experiments import FAMILIES, ScanConfig, scan_conjecture
from .generators import (
    Instance,
    gen_ham_dicycle_digraph,
    gen_ham_dipath_digraph,
    gen_nosecant_ordering_graph,
    gen_outtree_digraph,
    gen_random_digraph,
    gen_star_tree_instance,
    gen_subdivision_free,
    gen_tournament,
)
from .io import (
    FORMAT,
    InvalidInput,
    certificate_from_json,
    coloring_from_json,
    coloring_to_json,
    dumps,
    format_spec,
    graph_from_json,
    graph_to_json,
    instance_from_json,
    instance_to_json,
    parse_spec,
    read_json,
    to_csv,
    tree_from_json,
    tree_instance_to_json,
    write_text,
)
from .secancy import SecantPairError, VertexOrdering, color_no_secant
from .star_trees import (
    ClassificationMismatch,
    ConjectureCounterexample,
    CounterexampleReport,
    color_normal_nosecant_general,
    color_star0,
    color_star1,
    color_whip,
    flatten_to_star_like,
)
from .structural import (
    color_hamcycle_b1free,
    color_hamcycle_bispindlefree,
    color_hamdipath_c2free,
    color_outtree_c2free,
    color_pathcover_c2free,
)
from .subdivisions import (
    DETECTOR_LIMIT,
    MULTI_BLOCK,
    UNKNOWN,
    dilation_report,
    find_subdivision,
    validate_certificate,
)
from .trees import saturate

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID = 0, 1, 2

GEN_FAMILIES = ("tournament", "digraph", "dipath", "dicycle", "outtree", "tree", "ordering")
METHODS = ("hamdipath", "pathcover", "hamcycle", "b1", "outtree", "whip", "star0", "star1", "general", "nosecant")


def _emit(doc: dict, args) -> None:
    doc = {"format": FORMAT, **doc}
    if args.format == "csv":
        rows = doc.get("trials")
        if not isinstance(rows, list):
            rows = [{k: v for k, v in doc.items() if not isinstance(v, (list, dict))}]
        text = to_csv(rows)
    else:
        text = dumps(doc)
    write_text(text, args.out)


def _load_digraph_instance(path: str) -> Instance:
    data = read_json(path)
    if data.get("type", "digraph") != "digraph":
        raise InvalidInput("expected a digraph instance")
    return instance_from_json(data)


def _load_tree_instance(path: str):
    data = read_json(path)
    if "tree" not in data:
        raise InvalidInput("expected an instance with a tree")
    if data.get("type") == "digraph":
        inst = instance_from_json(data)
        return underlying_graph(inst.digraph), inst.structure
    return graph_from_json(data), tree_from_json(data["tree"])


# --- verbs ---------------------------------------------------------------------


def cmd_gen(args) -> int:
    seed, n = args.seed, args.n
    dens = args.density
    fam = args.family
    if fam == "tournament":
        doc = instance_to_json(Instance(gen_tournament(n, seed), "tournament", None, seed))
    elif fam in ("digraph", "dipath", "dicycle", "outtree"):
        def base(s):
            if fam == "digraph":
                return gen_random_digraph(n, dens, s)
            if fam == "dipath":
                return gen_ham_dipath_digraph(n, dens, s)
            if fam == "dicycle":
                return gen_ham_dicycle_digraph(n, dens, s)
            return gen_outtree_digraph(n, args.shape, dens, s, backward=args.backward)
        inst = base(seed) if args.forbid is None else gen_subdivision_free(
            base, parse_spec(args.forbid), seed, limit=args.limit or DETECTOR_LIMIT)
        doc = instance_to_json(inst)
        if args.forbid:
            doc["forbid"] = args.forbid
    elif fam == "tree":
        G, T = gen_star_tree_instance(args.shape, n, seed, dens, saturated=not args.unsaturated)
        doc = tree_instance_to_json(G, T, seed=seed, shape=args.shape)
    else:
        G, order = gen_nosecant_ordering_graph(n, seed, dens)
        doc = {"type": "graph", **graph_to_json(G), "order": order, "seed": seed}
    _emit(doc, args)
    return EXIT_OK


def cmd_detect(args) -> int:
    inst = _load_digraph_instance(args.instance)
    spec = parse_spec(args.pattern)
    limit = args.limit or DETECTOR_LIMIT
    cert = find_subdivision(inst.digraph, spec, limit=limit, budget=args.budget)
    doc = {"pattern": format_spec(spec), "spec": spec.to_json()}
    if cert == UNKNOWN:
        doc.update(found=None, verdict="unknown")
    elif cert is None:
        doc.update(found=False, verdict="absent")
    else:
        doc.update(found=True, verdict="present", certificate=cert.to_json())
    _emit(doc, args)
    return EXIT_OK


def _sequence(inst: Instance, kind: str, limit: int) -> list:
    if inst.kind == kind and inst.structure is not None:
        return list(inst.structure)
    find = find_hamiltonian_dipath if kind == "dipath" else find_hamiltonian_dicycle
    seq = find(inst.digraph, limit=limit)
    if seq is None:
        raise InvalidInput(f"instance has no Hamiltonian {kind}")
    return seq


def _ks(args, count: int) -> list[int]:
    ks = args.k or []
    if len(ks) != count:
        raise InvalidInput(f"method {args.method} takes {count} values of --k")
    return ks


def cmd_color(args) -> int:
    method = args.method
    limit = args.limit or DEFAULT_ORACLE_LIMIT
    if method in ("whip", "star0", "star1", "general", "nosecant"):
        if method == "nosecant":
            data = read_json(args.instance)
            G = graph_from_json(data)
            order = data.get("order") or list(range(G.n))
            c = color_no_secant(G, VertexOrdering(tuple(order)))
            _emit({"method": method, "result": "coloring", **coloring_to_json(c)}, args)
            return EXIT_OK
        G, T = _load_tree_instance(args.instance)
        if method == "general":
            res = color_normal_nosecant_general(G, T)
            if isinstance(res, CounterexampleReport):
                _emit({"method": method, "result": "counterexample", "report": res.to_json()}, args)
                return EXIT_VIOLATION
            c = res
        else:
            c = {"whip": color_whip, "star0": color_star0, "star1": color_star1}[method](G, T)
        _emit({"method": method, "result": "coloring", **coloring_to_json(c), "used": c.used()}, args)
        return EXIT_OK

    inst = _load_digraph_instance(args.instance)
    D = inst.digraph
    if method == "hamdipath":
        res = color_hamdipath_c2free(D, _sequence(inst, "dipath", limit), *_ks(args, 2))
    elif method == "pathcover":
        res = color_pathcover_c2free(D, *_ks(args, 2))
    elif method == "hamcycle":
        res = color_hamcycle_bispindlefree(D, _sequence(inst, "dicycle", limit), *_ks(args, 3))
    elif method == "b1":
        res = color_hamcycle_b1free(D, _sequence(inst, "dicycle", limit), *_ks(args, 2))
    else:
        if inst.kind != "outtree":
            raise InvalidInput("the outtree method needs an instance with a planted out-tree")
        res = color_outtree_c2free(D, inst.structure, *_ks(args, 2))
    _emit({"method": method, **res.to_json()}, args)
    return EXIT_OK


def cmd_chi(args) -> int:
    data = read_json(args.instance)
    G = graph_from_json(data) if "edges" in data else underlying_graph(instance_from_json(data).digraph)
    chi, c = chromatic_number_exact(G, limit=args.limit or DEFAULT_ORACLE_LIMIT)
    _emit({"chi": chi, **coloring_to_json(c)}, args)
    return EXIT_OK


def cmd_saturate(args) -> int:
    G, T = _load_tree_instance(args.instance)
    H = saturate(G, T)
    _emit(tree_instance_to_json(H, T, added=len(H.edges) - len(G.edges)), args)
    return EXIT_OK


def cmd_flatten(args) -> int:
    G, T = _load_tree_instance(args.instance)
    f = flatten_to_star_like(G, T, require_saturated=not args.allow_unsaturated)
    _emit(tree_instance_to_json(f.graph, f.tree, correspondence=list(f.correspondence),
                                star_level=f.star.level), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    data = read_json(args.instance)
    witness = read_json(args.witness)
    if "colors" in witness:
        G = graph_from_json(data) if "edges" in data else underlying_graph(instance_from_json(data).digraph)
        c = coloring_from_json(witness)
        ok = len(c.colors) == G.n and is_proper(G, c)
        doc = {"witness": "coloring", "valid": ok, "palette": c.palette}
    else:
        inst = instance_from_json(data)
        if not args.pattern:
            raise InvalidInput("certificate verification needs --pattern")
        spec = parse_spec(args.pattern)
        cert = certificate_from_json(witness)
        verdict = validate_certificate(inst.digraph, cert, spec)
        ok = bool(verdict)
        doc = {"witness": "certificate", "valid": ok, "reason": verdict.reason, "pattern": format_spec(spec)}
        if ok and spec.kind == MULTI_BLOCK:
            doc["dilation"] = dilation_report(cert, spec, inst.digraph).to_json()
    _emit(doc, args)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_scan(args) -> int:
    cfg = ScanConfig(family=args.family, n_min=args.n_min, n_max=args.n_max, trials=args.trials,
                     seed=args.seed, density=args.density, archive=args.archive, workers=args.workers)
    report = scan_conjecture(cfg)
    _emit(report, args)
    return EXIT_VIOLATION if report["summary"]["counterexamples"] else EXIT_OK


# --- parser --------------------------------------------------------------------


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags without defaults so values given before the verb survive
    common = argparse.ArgumentParser(add_help=False)

    def default(v):
        return argparse.SUPPRESS if suppress else v

    common.add_argument("--seed", type=int, default=default(0), help="RNG seed (random.Random, MT19937)")
    common.add_argument("--limit", type=int, default=default(None), help="scale limit for exact searches")
    common.add_argument("--format", choices=("json", "csv"), default=default("json"))
    common.add_argument("--out", default=default(None), help="output path (default stdout)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="subdivcolor", description=__doc__, parents=[_global_flags(False)])
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate an instance")
    g.add_argument("family", choices=GEN_FAMILIES)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--density", type=float, default=0.2)
    g.add_argument("--shape", default="random", help="tree shape: random, path, whip, star<i>")
    g.add_argument("--backward", choices=("any", "ancestors"), default="any")
    g.add_argument("--forbid", default=None, help="pattern to sample around, e.g. 'C(2,2)' or 'B(2,1;2)'")
    g.add_argument("--unsaturated", action="store_true")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("detect", parents=[common], help="search for a subdivision")
    d.add_argument("instance")
    d.add_argument("--pattern", required=True)
    d.add_argument("--budget", type=int, default=None, help="search budget beyond the exact limit")
    d.set_defaults(func=cmd_detect)

    c = sub.add_parser("color", parents=[common], help="run a colorer")
    c.add_argument("instance")
    c.add_argument("--method", choices=METHODS, required=True)
    c.add_argument("--k", type=int, nargs="+")
    c.set_defaults(func=cmd_color)

    x = sub.add_parser("chi", parents=[common], help="exact chromatic number")
    x.add_argument("instance")
    x.set_defaults(func=cmd_chi)

    s = sub.add_parser("saturate", parents=[common], help="saturate a graph over its normal tree")
    s.add_argument("instance")
    s.set_defaults(func=cmd_saturate)

    f = sub.add_parser("flatten", parents=[common], help="embed into a star^i-like instance")
    f.add_argument("instance")
    f.add_argument("--allow-unsaturated", action="store_true")
    f.set_defaults(func=cmd_flatten)

    v = sub.add_parser("verify", parents=[common], help="check a coloring or certificate")
    v.add_argument("instance")
    v.add_argument("witness")
    v.add_argument("--pattern", default=None)
    v.set_defaults(func=cmd_verify)

    sc = sub.add_parser("scan", parents=[common], help="search for 4-coloring counterexamples")
    sc.add_argument("--family", choices=FAMILIES, default="random")
    sc.add_argument("--n-min", type=int, default=4)
    sc.add_argument("--n-max", type=int, default=12)
    sc.add_argument("--trials", type=int, default=100)
    sc.add_argument("--density", type=float, default=0.3)
    sc.add_argument("--archive", default=None, help="directory for counterexample reports")
    sc.add_argument("--workers", type=int, default=1)
    sc.set_defaults(func=cmd_scan)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConjectureCounterexample as exc:
        _emit({"result": "counterexample", "report": exc.report.to_json()}, args)
        return EXIT_VIOLATION
    except (InvalidInput, ScaleExceeded, SecantPairError, ClassificationMismatch,
            ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
