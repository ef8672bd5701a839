#!/usr/bin/env python3
"""Separation sweep over all small topological algebras, plus the check that
one round of the pairwise-separation iteration characterizes Hausdorff
spaces on carriers up to three."""

import argparse
import time

from lamsub.acceptance import criterion_9, criterion_10


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.parse_args()
    t0 = time.time()
    for r in (criterion_9(), criterion_10()):
        print(r.line())
    print(f"total {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
