"""Earliest-first carry scheduling: the GEF list algorithm and the improved IGEF min-search."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .model import (
    Action,
    DelayProfile,
    IgefError,
    ScheduleTrace,
    Term,
    TermKind,
    TraceEvent,
)


class NothingToRelease(IgefError):
    pass


class Algorithm(str, enum.Enum):
    GEF = "gef"
    IGEF = "igef"


@dataclass(frozen=True)
class SchedulerConfig:
    blocking_factor: int = 3
    carry_priority: bool = True
    algorithm: Algorithm = Algorithm.IGEF

    def __post_init__(self):
        if self.blocking_factor not in (2, 3):
            raise ValueError(f"blocking factor must be 2 or 3, got {self.blocking_factor}")


@dataclass(frozen=True)
class Window:
    members: tuple[Term, ...]
    completion: int

    @property
    def lo(self) -> int:
        return self.members[0].lo

    @property
    def has_carry(self) -> bool:
        return self.members[0].kind is TermKind.CARRY_PREFIX


class LiveSet:
    """Live terms in bit order, each either pending or released."""

    def __init__(self, terms: Sequence[Term], next_id: int):
        self.terms = list(terms)
        self.released: set[int] = set()
        self.next_id = next_id

    def __len__(self):
        return len(self.terms)

    def is_released(self, term: Term) -> bool:
        return term.id in self.released

    def pending(self) -> list[Term]:
        return [t for t in self.terms if t.id not in self.released]

    def complete(self) -> bool:
        return len(self.terms) == 1

    def merge(self, members: Sequence[Term], released: bool) -> Term:
        lo, hi = members[0].lo, members[-1].hi
        kind = TermKind.CARRY_PREFIX if lo == 0 else TermKind.BLOCK_PAIR
        out = Term(self.next_id, kind, lo, hi, max(m.ready for m in members) + 1)
        self.next_id += 1
        at = self.terms.index(members[0])
        self.terms[at:at + len(members)] = [out]
        for m in members:
            self.released.discard(m.id)
        if released:
            self.released.add(out.id)
        return out


def init_terms(dp: DelayProfile) -> LiveSet:
    """One unreleased term per bit; bit 0 starts as the carry c_0 = g_0."""
    terms = [Term(0, TermKind.CARRY_PREFIX, 0, 0, dp.arrival[0])]
    terms += [Term(i, TermKind.BLOCK_PAIR, i, i, t) for i, t in enumerate(dp.arrival) if i > 0]
    return LiveSet(terms, dp.width)


def release_min(live: LiveSet) -> list[int]:
    """Release every pending term tied at the minimum ready time (linear scan, no sort)."""
    tmin = None
    for t in live.terms:
        if t.id not in live.released and (tmin is None or t.ready < tmin):
            tmin = t.ready
    if tmin is None:
        raise NothingToRelease("every live term is already released")
    ids = [t.id for t in live.terms if t.id not in live.released and t.ready == tmin]
    live.released.update(ids)
    return ids


def candidate_windows(live: LiveSet, cfg: SchedulerConfig) -> list[Window]:
    """Every run of 2..blocking_factor consecutive released terms."""
    out = []
    terms = live.terms
    for i in range(len(terms)):
        if terms[i].id not in live.released:
            continue
        for size in range(2, cfg.blocking_factor + 1):
            j = i + size
            if j > len(terms) or terms[j - 1].id not in live.released:
                break
            members = tuple(terms[i:j])
            out.append(Window(members, max(m.ready for m in members) + 1))
    return out


def _window_key(w: Window, cfg: SchedulerConfig):
    carry_first = 0 if (cfg.carry_priority and w.has_carry) else 1
    return (w.completion, carry_first, -len(w.members), w.lo)


def _trace(name: str, dp: DelayProfile, initial, events, live: LiveSet, r: int) -> ScheduleTrace:
    (last,) = live.terms
    return ScheduleTrace(name, dp, tuple(initial), tuple(events), last.ready, r)


def gef_schedule(dp: DelayProfile) -> ScheduleTrace:
    """GEF: release the earliest pending terms, pair adjacent released terms
    left to right, send the products back to the pending list, repeat."""
    live = init_terms(dp)
    initial = list(live.terms)
    events: list[TraceEvent] = []
    iteration = 0
    while not live.complete():
        ids = release_min(live)
        events.append(TraceEvent(iteration, Action.RELEASE, tuple(ids)))
        i = 0
        while i + 1 < len(live.terms):
            left, right = live.terms[i], live.terms[i + 1]
            if live.is_released(left) and live.is_released(right):
                out = live.merge((left, right), released=False)
                events.append(TraceEvent(iteration, Action.COMBINE, (left.id, right.id), out, False))
            i += 1
        iteration += 1
    return _trace(Algorithm.GEF.value, dp, initial, events, live, 2)


def igef_schedule(dp: DelayProfile, cfg: SchedulerConfig | None = None) -> ScheduleTrace:
    """IGEF: combine the earliest-completing window of adjacent released terms.

    The next minimum is released when nothing is combinable, or when a pending
    term becomes ready before the best window could start (so it may still
    join that window). Ties go to the window holding the carry prefix, then
    the larger window, then the lower bit position. Products stay released.
    """
    cfg = cfg or SchedulerConfig()
    live = init_terms(dp)
    initial = list(live.terms)
    events: list[TraceEvent] = []
    iteration = -1
    while not live.complete():
        windows = candidate_windows(live, cfg)
        best = min(windows, key=lambda w: _window_key(w, cfg)) if windows else None
        pending = live.pending()
        if best is None or (pending and min(t.ready for t in pending) < best.completion):
            iteration += 1
            ids = release_min(live)
            events.append(TraceEvent(iteration, Action.RELEASE, tuple(ids)))
            continue
        out = live.merge(best.members, released=True)
        events.append(TraceEvent(iteration, Action.COMBINE, tuple(m.id for m in best.members), out, True))
    return _trace(Algorithm.IGEF.value, dp, initial, events, live, cfg.blocking_factor)


def schedule(dp: DelayProfile, cfg: SchedulerConfig) -> ScheduleTrace:
    if cfg.algorithm is Algorithm.GEF:
        return gef_schedule(dp)
    return igef_schedule(dp, cfg)
