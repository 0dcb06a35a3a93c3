"""File formats, trace tables, algorithm comparison and DOT export."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .baselines import BaselineKind, build_baseline
from .model import (
    Action,
    DelayProfile,
    IgefError,
    Netlist,
    ScheduleTrace,
    validate_profile,
)
from .netlist import Counterexample, Random, build_netlist, timing_analyze, verify
from .schedulers import Algorithm, SchedulerConfig, schedule

SCHEDULERS = ("gef", "igef")
ALGORITHMS = ("ripple", "chain_csma_cca", "chain_elma_cla1", "chain_cla2", "tree_cla2", "gef", "igef")


class ParseError(IgefError, ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownAlgorithm(IgefError, ValueError):
    pass


class VerificationFailed(IgefError):
    def __init__(self, algorithm: str, counterexample: Counterexample):
        self.algorithm = algorithm
        self.counterexample = counterexample
        c = counterexample
        super().__init__(f"{algorithm}: {c.a} + {c.b} gave {c.got}, expected {c.want}")


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------

def bundled_profile_path(name: str = "paper.json") -> Path:
    return Path(str(resources.files("igef") / "data" / name))


def parse_profile(text: str) -> DelayProfile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    if not isinstance(doc, dict) or "arrival" not in doc:
        raise ParseError(1, 'expected an object with key "arrival"')
    arrival = doc["arrival"]
    if not isinstance(arrival, list):
        raise ParseError(1, '"arrival" must be an array')
    return validate_profile(arrival)


def load_profile(path) -> DelayProfile:
    return parse_profile(Path(path).read_text(encoding="utf-8"))


def dump_json(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"


def save_profile(dp: DelayProfile, path) -> None:
    Path(path).write_text(json.dumps({"arrival": list(dp.arrival)}) + "\n", encoding="utf-8")


def save_netlist(net: Netlist, path) -> None:
    Path(path).write_text(dump_json(net.to_dict()), encoding="utf-8", newline="\n")


def load_netlist(path) -> Netlist:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    return Netlist.from_dict(doc)


# ---------------------------------------------------------------------------
# Building by name
# ---------------------------------------------------------------------------

def make_trace(algorithm: str, dp: DelayProfile, blocking: Optional[int] = None) -> ScheduleTrace:
    if algorithm == "gef":
        if blocking not in (None, 2):
            raise UnknownAlgorithm("gef combines two terms per step; blocking must be 2")
        return schedule(dp, SchedulerConfig(2, algorithm=Algorithm.GEF))
    if algorithm == "igef":
        return schedule(dp, SchedulerConfig(blocking or 3))
    raise UnknownAlgorithm(f"{algorithm!r} is not a scheduler (choose from {', '.join(SCHEDULERS)})")


def make_netlist(algorithm: str, dp: DelayProfile, blocking: Optional[int] = None) -> tuple[Netlist, Optional[ScheduleTrace]]:
    """Build the named adder for ``dp``; schedulers also return their trace."""
    if algorithm in SCHEDULERS:
        trace = make_trace(algorithm, dp, blocking)
        return build_netlist(trace), trace
    try:
        kind = BaselineKind(algorithm)
    except ValueError:
        raise UnknownAlgorithm(f"unknown algorithm {algorithm!r} (choose from {', '.join(ALGORITHMS)})") from None
    return build_baseline(kind, dp.width), None


# ---------------------------------------------------------------------------
# Trace tables
# ---------------------------------------------------------------------------

def _row(label: str, cells: Sequence[str]) -> str:
    return (f"{label:<6}" + "".join(f"{c:>4}" for c in cells)).rstrip()


def emit_trace(trace: ScheduleTrace) -> str:
    """Render a trace as iteration rows.

    For each iteration the P line holds pending terms and the T line holds
    released terms plus terms generated in that iteration (suffixed ``*``),
    each shown as its ready time under its highest bit.
    """
    n = trace.width
    lines = []
    if trace.events:
        lines.append(_row("it L", [str(i) for i in range(n)]))
        live = {t.id: t for t in trace.initial}
        released: set[int] = set()
        by_iter: dict[int, list] = {}
        for ev in trace.events:
            by_iter.setdefault(ev.iteration, []).append(ev)
        for it in sorted(by_iter):
            fresh: set[int] = set()
            for ev in by_iter[it]:
                if ev.action is Action.RELEASE:
                    released.update(ev.inputs)
                    continue
                for i in ev.inputs:
                    del live[i]
                    released.discard(i)
                    fresh.discard(i)
                live[ev.output.id] = ev.output
                fresh.add(ev.output.id)
                if ev.released:
                    released.add(ev.output.id)
            p_cells = [""] * n
            t_cells = [""] * n
            for t in live.values():
                if t.id in fresh:
                    t_cells[t.hi] = f"{t.ready}*"
                elif t.id in released:
                    t_cells[t.hi] = str(t.ready)
                else:
                    p_cells[t.hi] = str(t.ready)
            lines.append(_row(f"{it:<3}P", p_cells))
            lines.append(_row("   T", t_cells))
    lines.append(f"final_time: {trace.final_time}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompareRow:
    algorithm: str
    final_carry_time: int
    last_sum_time: int
    operator_count: int
    combine_steps: int
    spine_depth: int


def compare(dp: DelayProfile, algorithms: Iterable[str] = ALGORITHMS, *,
            blocking: Optional[int] = None, verify_count: int = 2000, seed: int = 0) -> list[CompareRow]:
    """Build, time and spot-check each algorithm; rows sorted by carry time then name."""
    rows = []
    for name in algorithms:
        net, trace = make_netlist(name, dp, blocking if name == "igef" else None)
        cex = verify(net, dp.width, Random(verify_count, seed))
        if cex is not None:
            raise VerificationFailed(name, cex)
        rep = timing_analyze(net, dp)
        if trace is not None:
            steps = len(trace.combines)
        else:
            # serial chains and the tree both take one combine per bit after c_0
            steps = dp.width - 1
        depth = timing_analyze(net, DelayProfile.uniform(dp.width)).final_carry_time
        rows.append(CompareRow(name, rep.final_carry_time, rep.last_sum_time,
                               rep.operator_count, steps, depth))
    rows.sort(key=lambda r: (r.final_carry_time, r.algorithm))
    return rows


def format_compare(rows: Sequence[CompareRow]) -> str:
    head = ("algorithm", "carry", "sum", "ops", "steps", "depth")
    body = [(r.algorithm, r.final_carry_time, r.last_sum_time, r.operator_count, r.combine_steps, r.spine_depth)
            for r in rows]
    widths = [max(len(str(x)) for x in col) for col in zip(head, *body)]
    out = []
    for rec in (head, *body):
        out.append("  ".join(str(x).ljust(w) if k == 0 else str(x).rjust(w)
                             for k, (x, w) in enumerate(zip(rec, widths))).rstrip())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------

def to_dot(net: Netlist, dp: Optional[DelayProfile] = None) -> str:
    dp = dp or DelayProfile.uniform(net.width)
    ready = timing_analyze(net, dp).per_node_ready
    outputs: dict[int, list[str]] = {}
    for i, nid in enumerate(net.carries):
        outputs.setdefault(nid, []).append(f"c{i}")
    for i, nid in enumerate(net.sums):
        outputs.setdefault(nid, []).append(f"s{i}")
    name = net.name or "adder"
    lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
    for node in net.nodes:
        label = node.fn.value
        if node.bit is not None:
            label += f"({node.bit})"
        label += f"\\nt={ready[node.id]}"
        if node.id in outputs:
            label += "\\n" + ",".join(outputs[node.id])
        shape = "box" if node.fn.is_input else ("circle" if node.fn.is_ternary else "ellipse")
        lines.append(f'  n{node.id} [label="{label}", shape={shape}];')
    for node in net.nodes:
        for i in node.inputs:
            lines.append(f"  n{i} -> n{node.id};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(net: Netlist, path, dp: Optional[DelayProfile] = None) -> None:
    Path(path).write_text(to_dot(net, dp), encoding="utf-8", newline="\n")
