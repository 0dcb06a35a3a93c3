#!/usr/bin/env python3
"""Print the GEF and IGEF trace tables and the algorithm comparison for the 12-bit example profile."""

import argparse

from igef.report import bundled_profile_path, compare, emit_trace, format_compare, load_profile, make_trace


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dp", default=str(bundled_profile_path()))
    args = parser.parse_args()
    dp = load_profile(args.dp)
    print(f"delay profile: {list(dp.arrival)}\n")
    for algo, blocking in (("gef", None), ("igef", 3), ("igef", 2)):
        label = algo if blocking is None else f"{algo} (blocking {blocking})"
        print(f"== {label}")
        print(emit_trace(make_trace(algo, dp, blocking)))
    print("== comparison")
    print(format_compare(compare(dp)))


if __name__ == "__main__":
    main()
