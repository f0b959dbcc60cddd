"""Run one bound-verification experiment and write its JSON report.

Example:
    python3 scripts/run_bound_experiment.py 3k1 --trials 500 --n-max 40 --out 3k1.json
"""

import argparse
import json
import sys

from subdivcolor.experiments import THEOREMS, ExperimentConfig, run_bound_experiment
from subdivcolor.io import dumps, to_csv, write_text


def parse_grid(text):
    # "2,2;3,2" -> ((2, 2), (3, 2))
    return tuple(tuple(int(x) for x in part.split(",")) for part in text.split(";") if part)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("theorem", choices=THEOREMS)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=parse_grid, default=(), help="parameter tuples, e.g. '2,2;3,2'")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--density", type=float, default=None)
    p.add_argument("--tree-shapes", default="star0,star1")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    args = p.parse_args(argv)

    cfg = ExperimentConfig(theorem=args.theorem, trials=args.trials, seed=args.seed, grid=args.grid,
                           n_min=args.n_min, n_max=args.n_max, density=args.density,
                           tree_shapes=tuple(args.tree_shapes.split(",")), workers=args.workers)
    rep = run_bound_experiment(cfg)
    write_text(to_csv(rep["trials"]) if args.format == "csv" else dumps(rep), args.out)
    print(json.dumps(rep["summary"], sort_keys=True), file=sys.stderr)
    return 0 if rep["summary"]["zero_violations"] else 1


if __name__ == "__main__":
    sys.exit(main())
