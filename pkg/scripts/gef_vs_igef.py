#!/usr/bin/env python3
"""Survey GEF against IGEF (and the exhaustive optimum) on random delay profiles.

IGEF's advantage is measured here, not assumed: the script counts how often
each scheduler wins, ties, or loses, and how far each is from the optimum.
"""

import argparse
import random
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from igef.model import validate_profile  # noqa: E402
from igef.schedulers import SchedulerConfig, gef_schedule, igef_schedule  # noqa: E402
from oracles import optimal_final_time  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=2000)
    parser.add_argument("--min-width", type=int, default=2)
    parser.add_argument("--max-width", type=int, default=12)
    parser.add_argument("--max-arrival", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    outcome = Counter()
    gap = {"gef": Counter(), "igef-r2": Counter(), "igef-r3": Counter()}
    for _ in range(args.count):
        n = rng.randint(args.min_width, args.max_width)
        dp = validate_profile([rng.randint(0, args.max_arrival) for _ in range(n)])
        g = gef_schedule(dp).final_time
        i2 = igef_schedule(dp, SchedulerConfig(2)).final_time
        i3 = igef_schedule(dp).final_time
        outcome["igef-r3 < gef" if i3 < g else "igef-r3 = gef" if i3 == g else "igef-r3 > gef"] += 1
        opt2, opt3 = optimal_final_time(dp.arrival, 2), optimal_final_time(dp.arrival, 3)
        gap["gef"][g - opt2] += 1
        gap["igef-r2"][i2 - opt2] += 1
        gap["igef-r3"][i3 - opt3] += 1

    print(f"{args.count} profiles, widths {args.min_width}..{args.max_width}, arrivals 0..{args.max_arrival}")
    for k in sorted(outcome):
        print(f"  {k}: {outcome[k]}")
    print("distance from the optimum with the same blocking factor:")
    for name, c in gap.items():
        print(f"  {name}: " + ", ".join(f"+{d}: {c[d]}" for d in sorted(c)))


if __name__ == "__main__":
    main()
