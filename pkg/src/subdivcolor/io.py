"""JSON file formats. Every top-level document carries ``"format": 1``."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import re
import sys
from typing import Any, Optional

from .digraph import Coloring, Digraph, Graph
from .generators import Instance
from .subdivisions import PatternSpec, SubdivisionCertificate
from .trees import RootedTree

FORMAT = 1


class InvalidInput(ValueError):
    pass


def digraph_to_json(D: Digraph) -> dict:
    return {"n": D.n, "arcs": [list(a) for a in D.sorted_arcs()]}


def digraph_from_json(data: dict) -> Digraph:
    return Digraph(int(data["n"]), frozenset((int(u), int(v)) for u, v in data["arcs"]))


def graph_to_json(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in sorted(G.edges)]}


def graph_from_json(data: dict) -> Graph:
    return Graph(int(data["n"]), frozenset((min(u, v), max(u, v)) for u, v in data["edges"]))


def tree_to_json(T: RootedTree) -> dict:
    return {"root": T.root, "parent": list(T.parent), "directed": T.directed}


def tree_from_json(data: dict) -> RootedTree:
    return RootedTree(int(data["root"]), tuple(int(p) for p in data["parent"]), bool(data.get("directed", False)))


def coloring_to_json(c: Coloring) -> dict:
    return {"colors": list(c.colors), "palette": c.palette}


def coloring_from_json(data: dict) -> Coloring:
    return Coloring(tuple(int(x) for x in data["colors"]), int(data["palette"]))


def instance_to_json(inst: Instance) -> dict:
    out: dict = {"format": FORMAT, "type": "digraph", **digraph_to_json(inst.digraph), "kind": inst.kind}
    if isinstance(inst.structure, RootedTree):
        out["tree"] = tree_to_json(inst.structure)
    elif inst.structure is not None:
        out["sequence"] = list(inst.structure)
    if inst.seed is not None:
        out["seed"] = inst.seed
    return out


def instance_from_json(data: dict) -> Instance:
    D = digraph_from_json(data)
    structure: Any = None
    if "tree" in data:
        structure = tree_from_json(data["tree"])
    elif "sequence" in data:
        structure = [int(v) for v in data["sequence"]]
    return Instance(D, data.get("kind", "digraph"), structure, data.get("seed"))


def tree_instance_to_json(G: Graph, T: RootedTree, **extra) -> dict:
    return {"format": FORMAT, "type": "graph", **graph_to_json(G), "tree": tree_to_json(T), **extra}


def tree_instance_from_json(data: dict) -> tuple[Graph, RootedTree]:
    return graph_from_json(data), tree_from_json(data["tree"])


def instance_hash(doc: dict) -> str:
    body = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()[:16]


_SPEC = re.compile(r"^\s*([CB])\s*\(([^)]*)\)\s*$")


def parse_spec(text: str) -> PatternSpec:
    """``C(k1,k2)``, ``B(k1,k2;k3)`` or ``C(k1,...,k2m)`` with four or more blocks."""
    m = _SPEC.match(text)
    if not m:
        raise InvalidInput(f"cannot parse pattern {text!r}")
    kind, body = m.groups()
    try:
        if kind == "B":
            left, right = body.split(";")
            a, b = (int(x) for x in left.split(","))
            return PatternSpec.bispindle(a, b, int(right))
        ks = [int(x) for x in body.split(",")]
    except ValueError as exc:
        raise InvalidInput(f"cannot parse pattern {text!r}") from exc
    if len(ks) == 2:
        return PatternSpec.two_blocks(*ks)
    return PatternSpec.cycle(*ks)


def format_spec(spec: PatternSpec) -> str:
    p = spec.params
    if spec.kind == "bispindle":
        return f"B({p[0]},{p[1]};{p[2]})"
    return "C(" + ",".join(map(str, p)) + ")"


def certificate_from_json(data: dict) -> SubdivisionCertificate:
    return SubdivisionCertificate.from_json(data.get("certificate", data))


def read_json(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1)


def to_csv(rows: list[dict]) -> str:
    cols: list = []
    for r in rows:
        cols.extend(k for k in r if k not in cols)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def write_text(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
