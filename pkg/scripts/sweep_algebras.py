#!/usr/bin/env python3
"""Sweep every one-binary-op algebra on three elements: count the tables with
a binary subtraction witness, confirm none of them admits an order comparing
the zero, and confirm no orderable table has permutability witnesses."""

import argparse
import time

from lamsub.acceptance import criterion_7, criterion_8


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.parse_args()
    t0 = time.time()
    for r in (criterion_7(), criterion_8()):
        print(r.line())
    print(f"total {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
