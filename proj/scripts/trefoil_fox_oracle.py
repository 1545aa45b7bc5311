#!/usr/bin/env python3
"""Brute-force Fox 3-colouring count from a classical PD code.

Each X[a,b,c,d] has under edges a, c and over edges b, d. A colouring in Z/3
satisfies x_b = x_d and 2 x_b = x_a + x_c at every crossing. Fox 3-colourings
are the colourings of the knot by transpositions of S3.
"""
import argparse
import itertools
import re
import sys


def parse(text):
    return [tuple(int(v) for v in m) for m in re.findall(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]", text)]


def count(crossings, p=3):
    edges = sorted({e for x in crossings for e in x})
    index = {e: i for i, e in enumerate(edges)}
    total = 0
    for col in itertools.product(range(p), repeat=len(edges)):
        ok = all(
            col[index[b]] == col[index[d]] and (2 * col[index[b]] - col[index[a]] - col[index[c]]) % p == 0
            for a, b, c, d in crossings
        )
        total += ok
    return total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("pd", help="classical PD file")
    ap.add_argument("--expect", type=int)
    args = ap.parse_args()
    with open(args.pd) as f:
        n = count(parse(f.read()))
    print(n)
    if args.expect is not None and n != args.expect:
        sys.exit(1)


if __name__ == "__main__":
    main()
