"""Shared data model: delay profiles, terms, schedule traces, netlists and timing reports."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class IgefError(Exception):
    """Base class for every error raised by this package."""


class ProfileError(IgefError, ValueError):
    pass


class EmptyProfile(ProfileError):
    def __init__(self):
        super().__init__("delay profile must contain at least one entry")


class NegativeArrival(ProfileError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"negative arrival time at bit {index}")


class NetlistError(IgefError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Delay profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DelayProfile:
    """Per-bit arrival times (max of augend and addend bit), index 0 is the LSB."""

    arrival: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrival", tuple(self.arrival))
        if not self.arrival:
            raise EmptyProfile()
        for i, t in enumerate(self.arrival):
            if isinstance(t, bool) or not isinstance(t, int):
                raise ProfileError(f"arrival time at bit {i} is not an integer: {t!r}")
            if t < 0:
                raise NegativeArrival(i)

    @property
    def width(self) -> int:
        return len(self.arrival)

    @classmethod
    def from_operands(cls, augend: Sequence[int], addend: Sequence[int]) -> "DelayProfile":
        """Build a profile from separate augend/addend arrival times."""
        if len(augend) != len(addend):
            raise ProfileError("augend and addend arrival lists differ in length")
        return validate_profile([max(x, y) for x, y in zip(augend, addend)])

    @classmethod
    def uniform(cls, width: int, t: int = 0) -> "DelayProfile":
        return validate_profile([t] * width)


def validate_profile(raw: Iterable[int]) -> DelayProfile:
    """Check a raw arrival sequence and wrap it as a :class:`DelayProfile`.

    Raises :class:`EmptyProfile` for an empty sequence and
    :class:`NegativeArrival` at the first negative entry.
    """
    return DelayProfile(tuple(raw))


# ---------------------------------------------------------------------------
# Terms and schedule traces
# ---------------------------------------------------------------------------

class TermKind(str, enum.Enum):
    CARRY_PREFIX = "CarryPrefix"
    BLOCK_PAIR = "BlockPair"


@dataclass(frozen=True)
class Term:
    """A live schedulable unit covering bits ``lo..hi`` (inclusive)."""

    id: int
    kind: TermKind
    lo: int
    hi: int
    ready: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"bad term range [{self.lo}..{self.hi}]")
        if self.kind is TermKind.CARRY_PREFIX and self.lo != 0:
            raise ValueError("a carry prefix must start at bit 0")

    @property
    def span(self) -> int:
        return self.hi - self.lo + 1

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind.value, "lo": self.lo, "hi": self.hi, "ready": self.ready}

    @classmethod
    def from_dict(cls, d: dict) -> "Term":
        return cls(int(d["id"]), TermKind(d["kind"]), int(d["lo"]), int(d["hi"]), int(d["ready"]))


class Action(str, enum.Enum):
    RELEASE = "Release"
    COMBINE = "Combine"


@dataclass(frozen=True)
class TraceEvent:
    """One scheduler step.

    A Release lists the ids moved from the pending set to the released set and
    has no output. A Combine lists its members low bit first and carries the
    produced term; ``released`` says whether that term joins the released set
    directly (IGEF) or goes back to the pending set (GEF).
    """

    iteration: int
    action: Action
    inputs: tuple[int, ...]
    output: Optional[Term] = None
    released: bool = False

    def to_dict(self) -> dict:
        d = {"iteration": self.iteration, "action": self.action.value, "inputs": list(self.inputs)}
        if self.output is not None:
            d["output"] = self.output.to_dict()
            d["released"] = self.released
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "TraceEvent":
        out = d.get("output")
        return cls(
            int(d["iteration"]),
            Action(d["action"]),
            tuple(int(i) for i in d["inputs"]),
            Term.from_dict(out) if out is not None else None,
            bool(d.get("released", False)),
        )


@dataclass(frozen=True)
class ScheduleTrace:
    algorithm: str
    profile: DelayProfile
    initial: tuple[Term, ...]
    events: tuple[TraceEvent, ...]
    final_time: int
    blocking_factor: int = 2

    @property
    def width(self) -> int:
        return self.profile.width

    @property
    def combines(self) -> list[TraceEvent]:
        return [e for e in self.events if e.action is Action.COMBINE]

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "blocking_factor": self.blocking_factor,
            "arrival": list(self.profile.arrival),
            "initial": [t.to_dict() for t in self.initial],
            "events": [e.to_dict() for e in self.events],
            "final_time": self.final_time,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScheduleTrace":
        return cls(
            d["algorithm"],
            validate_profile(d["arrival"]),
            tuple(Term.from_dict(t) for t in d["initial"]),
            tuple(TraceEvent.from_dict(e) for e in d["events"]),
            int(d["final_time"]),
            int(d.get("blocking_factor", 2)),
        )


def replay_trace(trace: ScheduleTrace) -> Optional[str]:
    """Re-simulate ``trace`` and return the first invariant violation, or None."""
    n = trace.width
    arrival = trace.profile.arrival
    live: dict[int, Term] = {}
    released: set[int] = set()
    seen: set[int] = set()

    def check_new(term: Term) -> Optional[str]:
        if term.id in seen:
            return f"term {term.id} produced twice"
        if term.hi >= n:
            return f"term {term.id} exceeds width"
        if term.ready < max(arrival[term.lo:term.hi + 1]):
            return f"term {term.id} ready before its inputs arrive"
        seen.add(term.id)
        return None

    for t in trace.initial:
        if (err := check_new(t)) is not None:
            return err
        live[t.id] = t
    if (err := _partition_error(live.values(), n)) is not None:
        return err

    for k, ev in enumerate(trace.events):
        where = f"event {k}: "
        for i in ev.inputs:
            if i not in live:
                return where + ("double consumption" if i in seen else f"unknown term {i}")
        if len(set(ev.inputs)) != len(ev.inputs):
            return where + "double consumption"
        if ev.action is Action.RELEASE:
            pending = [t for i, t in live.items() if i not in released]
            if not ev.inputs or not pending:
                return where + "empty release"
            tmin = min(t.ready for t in pending)
            for i in ev.inputs:
                if i in released:
                    return where + f"term {i} released twice"
                if live[i].ready != tmin:
                    return where + f"released term {i} is not at the pending minimum {tmin}"
            if any(t.ready == tmin and t.id not in ev.inputs for t in pending):
                return where + "release left a minimum-time term pending"
            released.update(ev.inputs)
            continue

        members = [live[i] for i in ev.inputs]
        if len(members) < 2:
            return where + "combine needs at least two terms"
        if len(members) > trace.blocking_factor:
            return where + "combine exceeds blocking factor"
        for i in ev.inputs:
            if i not in released:
                return where + f"term {i} combined before release"
        for left, right in zip(members, members[1:]):
            if right.lo != left.hi + 1:
                return where + "combined terms are not adjacent"
        out = ev.output
        if out is None:
            return where + "combine without output"
        if (out.lo, out.hi) != (members[0].lo, members[-1].hi):
            return where + "output range is not the union of inputs"
        expected_kind = TermKind.CARRY_PREFIX if out.lo == 0 else TermKind.BLOCK_PAIR
        if out.kind is not expected_kind:
            return where + "output kind does not match its range"
        if out.ready < max(m.ready for m in members) + 1:
            return where + "output ready before inputs plus one operator"
        if (err := check_new(out)) is not None:
            return where + err
        for i in ev.inputs:
            del live[i]
            released.discard(i)
        live[out.id] = out
        if ev.released:
            released.add(out.id)
        if (err := _partition_error(live.values(), n)) is not None:
            return where + err

    if len(live) != 1:
        return "incomplete coverage"
    (last,) = live.values()
    if (last.lo, last.hi) != (0, n - 1):
        return "incomplete coverage"
    if last.ready != trace.final_time:
        return f"final_time {trace.final_time} differs from final term ready {last.ready}"
    return None


def _partition_error(terms: Iterable[Term], n: int) -> Optional[str]:
    nxt = 0
    for t in sorted(terms, key=lambda t: t.lo):
        if t.lo != nxt:
            return "live terms do not partition the bit range"
        nxt = t.hi + 1
    if nxt > n:
        return "live terms do not partition the bit range"
    if nxt != n:
        return "incomplete coverage"
    return None


# ---------------------------------------------------------------------------
# Netlists
# ---------------------------------------------------------------------------

class Fn(str, enum.Enum):
    INPUT_G = "InputG"
    INPUT_R = "InputR"
    INPUT_P = "InputP"
    CONST0 = "Const0"
    CONST1 = "Const1"
    AND = "And"
    OR = "Or"
    XOR = "Xor"
    NOT = "Not"
    MUX = "TernaryMux"
    NABLA = "TernaryNabla"
    DELTA = "TernaryDelta"

    @property
    def arity(self) -> int:
        return ARITY[self]

    @property
    def is_input(self) -> bool:
        return self in (Fn.INPUT_G, Fn.INPUT_R, Fn.INPUT_P)

    @property
    def is_ternary(self) -> bool:
        return self in (Fn.MUX, Fn.NABLA, Fn.DELTA)


ARITY = {
    Fn.INPUT_G: 0, Fn.INPUT_R: 0, Fn.INPUT_P: 0, Fn.CONST0: 0, Fn.CONST1: 0,
    Fn.NOT: 1, Fn.AND: 2, Fn.OR: 2, Fn.XOR: 2,
    Fn.MUX: 3, Fn.NABLA: 3, Fn.DELTA: 3,
}


@dataclass(frozen=True)
class Node:
    id: int
    fn: Fn
    inputs: tuple[int, ...] = ()
    bit: Optional[int] = None
    # second operator of a size-3 cascade; shares the first operator's time unit
    cascade: bool = False

    def to_dict(self) -> dict:
        d: dict = {"id": self.id, "fn": self.fn.value, "inputs": list(self.inputs)}
        if self.bit is not None:
            d["bit"] = self.bit
        if self.cascade:
            d["cascade"] = True
        return d


@dataclass(frozen=True)
class Netlist:
    """A combinational DAG; nodes are listed in topological order and ``id`` equals position."""

    width: int
    nodes: tuple[Node, ...]
    carries: tuple[int, ...]
    sums: tuple[int, ...]
    carry_out: int
    name: str = ""

    def __post_init__(self):
        if self.width < 1:
            raise NetlistError("netlist width must be at least 1")
        for pos, node in enumerate(self.nodes):
            if node.id != pos:
                raise NetlistError(f"node at position {pos} has id {node.id}")
            if len(node.inputs) != node.fn.arity:
                raise NetlistError(f"node {pos} ({node.fn.value}) has {len(node.inputs)} inputs, wants {node.fn.arity}")
            for i in node.inputs:
                if not 0 <= i < pos:
                    raise NetlistError(f"node {pos} references node {i}: not an earlier node (cycle or dangling edge)")
            if node.fn.is_input and (node.bit is None or not 0 <= node.bit < self.width):
                raise NetlistError(f"input node {pos} has bad bit index {node.bit}")
        if len(self.carries) != self.width or len(self.sums) != self.width:
            raise NetlistError("carries and sums must have one entry per bit")
        for ref in (*self.carries, *self.sums, self.carry_out):
            if not 0 <= ref < len(self.nodes):
                raise NetlistError(f"output references missing node {ref}")

    @property
    def operator_count(self) -> int:
        return sum(1 for n in self.nodes if n.fn.is_ternary)

    def input_node(self, fn: Fn, bit: int) -> int:
        for n in self.nodes:
            if n.fn is fn and n.bit == bit:
                return n.id
        raise KeyError((fn, bit))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "width": self.width,
            "nodes": [n.to_dict() for n in self.nodes],
            "outputs": {"carries": list(self.carries), "sums": list(self.sums), "carry_out": self.carry_out},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Netlist":
        try:
            nodes = tuple(
                Node(int(n["id"]), Fn(n["fn"]), tuple(int(i) for i in n["inputs"]),
                     n.get("bit"), bool(n.get("cascade", False)))
                for n in d["nodes"]
            )
            out = d["outputs"]
            return cls(int(d["width"]), nodes, tuple(out["carries"]), tuple(out["sums"]),
                       int(out["carry_out"]), d.get("name", ""))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, NetlistError):
                raise
            raise NetlistError(f"malformed netlist: {exc}") from exc


class NetlistBuilder:
    """Append-only helper that hands out node ids in topological order."""

    def __init__(self, width: int, name: str = ""):
        self.width = width
        self.name = name
        self.nodes: list[Node] = []
        self.g = [self._add(Fn.INPUT_G, (), bit=i) for i in range(width)]
        self.r = [self._add(Fn.INPUT_R, (), bit=i) for i in range(width)]
        self.p = [self._add(Fn.INPUT_P, (), bit=i) for i in range(width)]

    def _add(self, fn: Fn, inputs: tuple[int, ...], bit: Optional[int] = None, cascade: bool = False) -> int:
        nid = len(self.nodes)
        self.nodes.append(Node(nid, fn, inputs, bit, cascade))
        return nid

    def gate(self, fn: Fn, *inputs: int, cascade: bool = False) -> int:
        return self._add(fn, tuple(inputs), cascade=cascade)

    def finish(self, carries: Sequence[int], sums: Sequence[int]) -> Netlist:
        return Netlist(self.width, tuple(self.nodes), tuple(carries), tuple(sums), carries[-1], self.name)

    def add_sums(self, carries: Sequence[int]) -> list[int]:
        """s_0 = p_0, s_i = p_i xor c_{i-1}."""
        return [self.p[0]] + [self.gate(Fn.XOR, self.p[i], carries[i - 1]) for i in range(1, self.width)]


# ---------------------------------------------------------------------------
# Timing reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TimingReport:
    per_node_ready: tuple[int, ...]
    carry_times: tuple[int, ...]
    sum_times: tuple[int, ...]
    final_carry_time: int
    operator_count: int
    critical_path: tuple[int, ...] = field(default_factory=tuple)

    @property
    def last_sum_time(self) -> int:
        return max(self.sum_times)
