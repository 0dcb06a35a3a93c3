"""Command-line front end: synth, trace, verify, compare, export."""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .model import DelayProfile, IgefError
from .netlist import Exhaustive, Random, verify
from .report import (
    ALGORITHMS,
    SCHEDULERS,
    UnknownAlgorithm,
    VerificationFailed,
    bundled_profile_path,
    compare,
    emit_trace,
    export_dot,
    format_compare,
    load_netlist,
    load_profile,
    make_netlist,
    make_trace,
    save_netlist,
)


def _profile(path: str) -> DelayProfile:
    p = Path(path)
    if not p.exists() and bundled_profile_path(p.name).exists() and p.parent == Path("."):
        p = bundled_profile_path(p.name)
    return load_profile(p)


def _algo(name: str) -> str:
    if name not in ALGORITHMS:
        raise UnknownAlgorithm(f"unknown algorithm {name!r} (choose from {', '.join(ALGORITHMS)})")
    return name


def cmd_synth(args) -> int:
    dp = _profile(args.dp)
    net, _ = make_netlist(_algo(args.algo), dp, args.blocking)
    save_netlist(net, args.output)
    print(f"{args.algo}: {len(net.nodes)} nodes, {net.operator_count} ternary operators -> {args.output}")
    return 0


def cmd_trace(args) -> int:
    dp = _profile(args.dp)
    sys.stdout.write(emit_trace(make_trace(args.algo, dp, args.blocking)))
    return 0


def _verify_profiles(algo: str, width: int, n_profiles: int, seed: int) -> list[DelayProfile]:
    profiles = [DelayProfile.uniform(width)]
    if algo in SCHEDULERS:
        rng = random.Random(seed)
        profiles += [DelayProfile(tuple(rng.randint(0, width) for _ in range(width))) for _ in range(n_profiles)]
    return profiles


def cmd_verify(args) -> int:
    names = list(ALGORITHMS) if args.algo == "all" else [_algo(args.algo)]
    mode = Exhaustive() if args.mode == "exhaustive" else Random(args.count, args.seed)
    failed = False
    for name in names:
        for dp in _verify_profiles(name, args.width, args.profiles, args.seed):
            net, _ = make_netlist(name, dp)
            cex = verify(net, args.width, mode)
            if cex is not None:
                print(f"FAIL {name} dp={list(dp.arrival)}: {cex.a} + {cex.b} gave {cex.got}, expected {cex.want}")
                failed = True
                break
        else:
            print(f"ok   {name} width={args.width} mode={args.mode}")
    return 1 if failed else 0


def cmd_compare(args) -> int:
    dp = _profile(args.dp)
    algos = [_algo(a.strip()) for a in args.algos.split(",")] if args.algos else list(ALGORITHMS)
    rows = compare(dp, algos, blocking=args.blocking, verify_count=args.count, seed=args.seed)
    sys.stdout.write(format_compare(rows))
    return 0


def cmd_export(args) -> int:
    net = load_netlist(args.netlist)
    dp = _profile(args.dp) if args.dp else None
    export_dot(net, args.output, dp)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="igef", description="Earliest-first adder synthesis and timing.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="build an adder netlist for a delay profile")
    p.add_argument("--dp", required=True, help="delay profile JSON file")
    p.add_argument("--algo", required=True)
    p.add_argument("--blocking", type=int, choices=(2, 3))
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("trace", help="print a scheduler trace table")
    p.add_argument("--dp", required=True)
    p.add_argument("--algo", required=True, choices=SCHEDULERS)
    p.add_argument("--blocking", type=int, choices=(2, 3))
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", help="check generated adders against integer addition")
    p.add_argument("--algo", required=True, help="algorithm name or 'all'")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--count", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--profiles", type=int, default=3,
                   help="random delay profiles per scheduler, besides the uniform one")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="compare algorithms on one delay profile")
    p.add_argument("--dp", required=True)
    p.add_argument("--algos", help="comma-separated list (default: all)")
    p.add_argument("--blocking", type=int, choices=(2, 3))
    p.add_argument("--count", type=int, default=2000, help="random verification pairs per algorithm")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("export", help="export a netlist file as a DOT graph")
    p.add_argument("--netlist", required=True)
    p.add_argument("--format", choices=("dot",), default="dot")
    p.add_argument("--dp", help="delay profile for the ready-time labels (default: all zero)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except VerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IgefError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
