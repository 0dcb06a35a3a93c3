#!/usr/bin/env python3
"""Carry and sum times of every algorithm on all-zero profiles across word lengths."""

import argparse

from igef.model import DelayProfile
from igef.report import ALGORITHMS, compare


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--widths", default="4,8,12,16,24,32,64")
    args = parser.parse_args()
    widths = [int(w) for w in args.widths.split(",")]
    print("width" + "".join(f"{a:>17}" for a in ALGORITHMS))
    for n in widths:
        rows = {r.algorithm: r for r in compare(DelayProfile.uniform(n), ALGORITHMS, verify_count=500)}
        cells = [f"{rows[a].final_carry_time}/{rows[a].last_sum_time}" for a in ALGORITHMS]
        print(f"{n:>5}" + "".join(f"{c:>17}" for c in cells))
    print("cells are carry-out time / last sum time")


if __name__ == "__main__":
    main()
