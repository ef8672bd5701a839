#!/usr/bin/env python3
"""Sample closed terms and try to join every one-step peak of the combined
beta/eta/subtraction reduction.  Reports join, unknown and counterexample
counts; any counterexample falsifies confluence of the implementation."""

import argparse
import itertools
import time

from lamsub.generators import random_terms
from lamsub.pi import PiOracle
from lamsub.reduction import BETA, Budget, ETA, joinable
from lamsub.verdict import PROVED, REFUTED


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=2000)
    p.add_argument("--seed", type=int, default=404)
    p.add_argument("--max-size", type=int, default=14)
    args = p.parse_args()

    oracle = PiOracle(fuel=2, budget=Budget(30, 30, 1000))
    peak_budget = Budget(40, 40, 1000)
    t0 = time.time()
    peaks = joined = unknown = refuted = 0
    for t in random_terms(args.seed, args.count, max_size=args.max_size):
        succ, _ = oracle.successors(t)
        for a, b in itertools.combinations(sorted({u for u, _ in succ}, key=str), 2):
            peaks += 1
            v = joinable(a, b, frozenset((BETA, ETA)), peak_budget,
                         successor_fn=oracle.successors)
            joined += v is PROVED
            refuted += v is REFUTED
            unknown += v not in (PROVED, REFUTED)
    print(
        f"seed={args.seed} terms={args.count} peaks={peaks} joined={joined} "
        f"unknown={unknown} counterexamples={refuted} ({time.time() - t0:.1f}s)"
    )


if __name__ == "__main__":
    main()
