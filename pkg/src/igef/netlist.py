"""Netlist construction from schedule traces, evaluation, unit-delay timing and oracle verification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import operators as ops
from .model import (
    Action,
    DelayProfile,
    Fn,
    IgefError,
    Netlist,
    NetlistBuilder,
    ScheduleTrace,
    Term,
    TermKind,
    TimingReport,
)


class IncompleteTrace(IgefError):
    pass


class WidthMismatch(IgefError, ValueError):
    pass


class WidthTooLargeForExhaustive(IgefError, ValueError):
    pass


MAX_EXHAUSTIVE_WIDTH = 12
_CHUNK = 1 << 18


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _merge_two(nb: NetlistBuilder, lower, upper, cascade: bool):
    """Combine two term signals; a carry prefix is always the lower member."""
    g_hi, r_hi = upper
    if len(lower) == 1:
        (c,) = lower
        return (nb.gate(Fn.NABLA, c, g_hi, r_hi, cascade=cascade),)
    g_lo, r_lo = lower
    return (nb.gate(Fn.NABLA, g_lo, g_hi, r_hi, cascade=cascade),
            nb.gate(Fn.NABLA, r_lo, g_hi, r_hi, cascade=cascade))


def build_netlist(trace: ScheduleTrace, name: Optional[str] = None) -> Netlist:
    """Realize a complete schedule as an adder netlist.

    Each combine becomes ternary-operator nodes. A three-term combine is two
    cascaded stages; the stage holding the latest member goes first so that
    the cascade as a whole finishes one unit after its latest input. Carries
    not produced by the schedule are filled in by rippling inside blocks.
    """
    n = trace.width
    nb = NetlistBuilder(n, name or trace.algorithm)
    terms: dict[int, Term] = {}
    signal: dict[int, tuple[int, ...]] = {}
    carries: list[Optional[int]] = [None] * n
    carries[0] = nb.g[0]

    for t in trace.initial:
        terms[t.id] = t
        if t.kind is TermKind.CARRY_PREFIX:
            signal[t.id] = (nb.g[0],)
        else:
            signal[t.id] = (nb.g[t.lo], nb.r[t.lo])
    live = set(terms)

    for ev in trace.events:
        if ev.action is not Action.COMBINE:
            continue
        members = [terms[i] for i in ev.inputs]
        sigs = [signal[i] for i in ev.inputs]
        if len(members) == 2:
            out = _merge_two(nb, sigs[0], sigs[1], cascade=False)
        elif len(members) == 3:
            if max(members[0].ready, members[1].ready) >= members[2].ready:
                first = _merge_two(nb, sigs[0], sigs[1], cascade=False)
                out = _merge_two(nb, first, sigs[2], cascade=True)
            else:
                first = _merge_two(nb, sigs[1], sigs[2], cascade=False)
                out = _merge_two(nb, sigs[0], first, cascade=True)
        else:
            raise IncompleteTrace(f"cannot realize a {len(members)}-term combine")
        term = ev.output
        terms[term.id] = term
        signal[term.id] = out
        live.difference_update(ev.inputs)
        live.add(term.id)
        if term.kind is TermKind.CARRY_PREFIX:
            carries[term.hi] = out[0]

    final = [terms[i] for i in live]
    if len(final) != 1 or (final[0].lo, final[0].hi) != (0, n - 1):
        raise IncompleteTrace("trace does not end with a single term covering every bit")

    for i in range(1, n):
        if carries[i] is None:
            carries[i] = nb.gate(Fn.NABLA, carries[i - 1], nb.g[i], nb.r[i])
    return nb.finish(carries, nb.add_sums(carries))


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvalResult:
    sum_bits: tuple[bool, ...]
    carry_out: bool

    @property
    def as_integer(self) -> int:
        value = sum(1 << i for i, s in enumerate(self.sum_bits) if s)
        return value + (int(self.carry_out) << len(self.sum_bits))


_GATES = {
    Fn.AND: lambda x, y: x & y,
    Fn.OR: lambda x, y: x | y,
    Fn.XOR: lambda x, y: x ^ y,
    Fn.NOT: lambda x: x ^ 1,
    Fn.MUX: ops.op_mux,
    Fn.NABLA: ops.op_nabla,
    Fn.DELTA: ops.op_delta,
}


def _simulate(net: Netlist, a: np.ndarray, b: np.ndarray):
    """Evaluate every node over operand vectors; returns per-node uint8 arrays."""
    one = np.uint64(1)
    abits = [((a >> np.uint64(i)) & one).astype(np.uint8) for i in range(net.width)]
    bbits = [((b >> np.uint64(i)) & one).astype(np.uint8) for i in range(net.width)]
    values: list[np.ndarray] = []
    for node in net.nodes:
        fn = node.fn
        if fn is Fn.INPUT_G:
            v = abits[node.bit] & bbits[node.bit]
        elif fn is Fn.INPUT_R:
            v = abits[node.bit] | bbits[node.bit]
        elif fn is Fn.INPUT_P:
            v = abits[node.bit] ^ bbits[node.bit]
        elif fn is Fn.CONST0:
            v = np.zeros(len(a), dtype=np.uint8)
        elif fn is Fn.CONST1:
            v = np.ones(len(a), dtype=np.uint8)
        else:
            v = _GATES[fn](*(values[i] for i in node.inputs))
        values.append(v)
    return values


def evaluate_many(net: Netlist, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized evaluation; returns (low N sum bits as uint64, carry-out as uint8)."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    values = _simulate(net, a, b)
    total = np.zeros(len(a), dtype=np.uint64)
    for i, nid in enumerate(net.sums):
        total |= values[nid].astype(np.uint64) << np.uint64(i)
    return total, values[net.carry_out]


def _check_operands(net: Netlist, a: int, b: int, width: int):
    if width != net.width:
        raise WidthMismatch(f"netlist width {net.width}, requested width {width}")
    if not (0 <= a < 1 << width and 0 <= b < 1 << width):
        raise WidthMismatch(f"operands {a}, {b} do not fit in {width} bits")


def evaluate(net: Netlist, a: int, b: int, width: int) -> EvalResult:
    _check_operands(net, a, b, width)
    values = _simulate(net, np.array([a], dtype=np.uint64), np.array([b], dtype=np.uint64))
    sums = tuple(bool(values[i][0]) for i in net.sums)
    return EvalResult(sums, bool(values[net.carry_out][0]))


# ---------------------------------------------------------------------------
# Timing
# ---------------------------------------------------------------------------

def node_latency(node) -> int:
    if node.fn.is_input or node.fn in (Fn.CONST0, Fn.CONST1):
        return 0
    return 0 if node.cascade else 1


def timing_analyze(net: Netlist, dp: DelayProfile) -> TimingReport:
    """Unit-delay arrival-time propagation; inputs become ready at their bit's arrival."""
    if dp.width != net.width:
        raise WidthMismatch(f"netlist width {net.width}, profile width {dp.width}")
    ready: list[int] = []
    for node in net.nodes:
        if node.fn.is_input:
            t = dp.arrival[node.bit]
        elif not node.inputs:
            t = 0
        else:
            t = max(ready[i] for i in node.inputs) + node_latency(node)
        ready.append(t)

    path = [net.carry_out]
    while net.nodes[path[-1]].inputs:
        ins = net.nodes[path[-1]].inputs
        # max ready, ties to the lower id
        path.append(min(ins, key=lambda i: (-ready[i], i)))
    path.reverse()

    return TimingReport(
        per_node_ready=tuple(ready),
        carry_times=tuple(ready[i] for i in net.carries),
        sum_times=tuple(ready[i] for i in net.sums),
        final_carry_time=ready[net.carry_out],
        operator_count=net.operator_count,
        critical_path=tuple(path),
    )


# ---------------------------------------------------------------------------
# Verification against integer addition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Exhaustive:
    pass


@dataclass(frozen=True)
class Random:
    count: int
    seed: int = 0


@dataclass(frozen=True)
class Counterexample:
    a: int
    b: int
    got: int
    want: int


def _expected(a: np.ndarray, b: np.ndarray, width: int):
    s = a + b  # wraps modulo 2**64
    if width == 64:
        return s, (s < a).astype(np.uint8)
    return s & np.uint64((1 << width) - 1), (s >> np.uint64(width)).astype(np.uint8)


def _first_mismatch(net: Netlist, a: np.ndarray, b: np.ndarray) -> Optional[Counterexample]:
    got_s, got_c = evaluate_many(net, a, b)
    want_s, want_c = _expected(a, b, net.width)
    bad = np.flatnonzero((got_s != want_s) | (got_c != want_c))
    if not len(bad):
        return None
    k = bad[0]
    n = net.width
    return Counterexample(int(a[k]), int(b[k]),
                          int(got_s[k]) + (int(got_c[k]) << n),
                          int(want_s[k]) + (int(want_c[k]) << n))


def verify(net: Netlist, width: int, mode: Union[Exhaustive, Random] = Exhaustive()) -> Optional[Counterexample]:
    """Compare the netlist with integer addition; returns the first mismatch or None."""
    if width != net.width:
        raise WidthMismatch(f"netlist width {net.width}, requested width {width}")
    if isinstance(mode, Exhaustive):
        if width > MAX_EXHAUSTIVE_WIDTH:
            raise WidthTooLargeForExhaustive(f"exhaustive verification is limited to {MAX_EXHAUSTIVE_WIDTH} bits")
        total = 1 << (2 * width)
        mask = np.uint64((1 << width) - 1)
        for start in range(0, total, _CHUNK):
            k = np.arange(start, min(total, start + _CHUNK), dtype=np.uint64)
            cex = _first_mismatch(net, k >> np.uint64(width), k & mask)
            if cex is not None:
                return cex
        return None
    rng = np.random.default_rng(mode.seed)
    a = rng.integers(0, 1 << width, size=mode.count, dtype=np.uint64, endpoint=False)
    b = rng.integers(0, 1 << width, size=mode.count, dtype=np.uint64, endpoint=False)
    return _first_mismatch(net, a, b)
