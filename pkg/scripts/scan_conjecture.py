"""Scan saturated normal-tree instances for graphs with no 4-coloring.

Any instance without a 4-coloring is written to the archive directory.

Example:
    python3 scripts/scan_conjecture.py --family mixed --trials 1000 --archive found/
"""

import argparse
import json
import sys

from subdivcolor.experiments import FAMILIES, ScanConfig, scan_conjecture
from subdivcolor.io import dumps, write_text


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--family", choices=FAMILIES, default="random")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--archive", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    args = p.parse_args(argv)

    rep = scan_conjecture(ScanConfig(family=args.family, n_min=args.n_min, n_max=args.n_max,
                                     trials=args.trials, seed=args.seed, density=args.density,
                                     archive=args.archive, workers=args.workers))
    write_text(dumps(rep), args.out)
    print(json.dumps(rep["summary"], sort_keys=True), file=sys.stderr)
    return 1 if rep["summary"]["counterexamples"] else 0


if __name__ == "__main__":
    sys.exit(main())
