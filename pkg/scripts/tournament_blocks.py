"""Build oriented cycles with many exact blocks in random tournaments.

Prints one line per trial with the block lengths found and how many
blocks kept their pattern length.
"""

import argparse
import random
import sys

from subdivcolor.generators import gen_tournament
from subdivcolor.io import format_spec
from subdivcolor.subdivisions import PatternSpec
from subdivcolor.tournaments import build_cycle_subdivision


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    rng = random.Random(args.seed)
    worst = None
    for i in range(args.trials):
        ks = []
        for _ in range(args.m):
            a, b = 1, 1
            while a + b < 3:
                a, b = rng.randint(1, args.k_max), rng.randint(1, args.k_max)
            ks += [a, b]
        T = gen_tournament(args.m + sum(ks), rng.randrange(2**31))
        cert, rep = build_cycle_subdivision(T, ks)
        lengths = [len(b) - 1 for b in cert.paths]
        print(f"{format_spec(PatternSpec.cycle(*ks))}: blocks {lengths}, non-dilated {rep.non_dilated}/{len(ks)}")
        worst = rep.non_dilated if worst is None else min(worst, rep.non_dilated)
    print(f"fewest non-dilated blocks: {worst} (guaranteed at least {args.m})", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
