import dataclasses

import pytest

from igef.model import (
    Action,
    DelayProfile,
    EmptyProfile,
    Fn,
    NegativeArrival,
    Netlist,
    NetlistError,
    Node,
    ProfileError,
    ScheduleTrace,
    Term,
    TermKind,
    TraceEvent,
    replay_trace,
    validate_profile,
)
from igef.schedulers import SchedulerConfig, gef_schedule, igef_schedule

EXAMPLE = [0, 1, 2, 2, 3, 3, 4, 5, 4, 3, 2, 1]


def test_validate_profile_examples():
    assert validate_profile(EXAMPLE).width == 12
    assert validate_profile([0]).width == 1
    with pytest.raises(NegativeArrival) as exc:
        validate_profile([0, -1])
    assert exc.value.index == 1
    with pytest.raises(EmptyProfile):
        validate_profile([])
    with pytest.raises(ProfileError):
        validate_profile([0, 1.5])


def test_profile_from_operands():
    assert DelayProfile.from_operands([0, 3, 1], [2, 1, 1]).arrival == (2, 3, 1)


def test_term_invariants():
    with pytest.raises(ValueError):
        Term(0, TermKind.CARRY_PREFIX, 1, 2, 0)
    with pytest.raises(ValueError):
        Term(0, TermKind.BLOCK_PAIR, 3, 2, 0)
    assert Term(1, TermKind.BLOCK_PAIR, 2, 5, 0).span == 4


def test_core_types_are_immutable():
    dp = validate_profile(EXAMPLE)
    with pytest.raises(dataclasses.FrozenInstanceError):
        dp.arrival = (1,)


def test_replay_accepts_scheduler_traces():
    dp = validate_profile(EXAMPLE)
    assert replay_trace(igef_schedule(dp)) is None
    assert replay_trace(gef_schedule(dp)) is None
    assert replay_trace(igef_schedule(dp, SchedulerConfig(2))) is None


def _replace_event(trace, k, ev):
    events = list(trace.events)
    events[k] = ev
    return dataclasses.replace(trace, events=tuple(events))


def test_replay_detects_double_consumption():
    trace = igef_schedule(validate_profile(EXAMPLE))
    combines = [k for k, e in enumerate(trace.events) if e.action is Action.COMBINE]
    first, second = combines[0], combines[1]
    used = trace.events[first].inputs[0]
    ev = trace.events[second]
    bad = _replace_event(trace, second, dataclasses.replace(ev, inputs=(used,) + ev.inputs[1:]))
    assert "double consumption" in replay_trace(bad)


def test_replay_detects_incomplete_coverage():
    dp = validate_profile([0, 0, 0])
    t0, t1, t2 = Term(0, TermKind.CARRY_PREFIX, 0, 0, 0), Term(1, TermKind.BLOCK_PAIR, 1, 1, 0), Term(2, TermKind.BLOCK_PAIR, 2, 2, 0)
    out = Term(3, TermKind.CARRY_PREFIX, 0, 1, 1)
    events = (
        TraceEvent(0, Action.RELEASE, (0, 1, 2)),
        TraceEvent(0, Action.COMBINE, (0, 1), out, True),
    )
    trace = ScheduleTrace("hand", dp, (t0, t1, t2), events, 1)
    assert replay_trace(trace) == "incomplete coverage"


def test_replay_detects_bad_release_and_adjacency():
    dp = validate_profile([0, 1, 0])
    init = (Term(0, TermKind.CARRY_PREFIX, 0, 0, 0), Term(1, TermKind.BLOCK_PAIR, 1, 1, 1),
            Term(2, TermKind.BLOCK_PAIR, 2, 2, 0))
    early = ScheduleTrace("hand", dp, init, (TraceEvent(0, Action.RELEASE, (1,)),), 2)
    assert "pending minimum" in replay_trace(early)
    partial = ScheduleTrace("hand", dp, init, (TraceEvent(0, Action.RELEASE, (0,)),), 2)
    assert "left a minimum-time term pending" in replay_trace(partial)
    skip = ScheduleTrace("hand", dp, init, (
        TraceEvent(0, Action.RELEASE, (0, 2)),
        TraceEvent(0, Action.COMBINE, (0, 2), Term(3, TermKind.CARRY_PREFIX, 0, 2, 1), True),
    ), 1, 3)
    assert "not adjacent" in replay_trace(skip)


def test_trace_serialization_round_trip():
    trace = igef_schedule(validate_profile(EXAMPLE))
    assert ScheduleTrace.from_dict(trace.to_dict()) == trace


def _tiny_nodes():
    return [Node(0, Fn.INPUT_G, (), 0), Node(1, Fn.INPUT_R, (), 0), Node(2, Fn.INPUT_P, (), 0)]


def test_netlist_rejects_cycles_and_bad_arity():
    nodes = _tiny_nodes() + [Node(3, Fn.XOR, (2, 4)), Node(4, Fn.AND, (3, 0))]
    with pytest.raises(NetlistError, match="earlier node"):
        Netlist(1, tuple(nodes), (0,), (2,), 0)
    nodes = _tiny_nodes() + [Node(3, Fn.NABLA, (0, 1))]
    with pytest.raises(NetlistError, match="inputs"):
        Netlist(1, tuple(nodes), (0,), (2,), 0)


def test_netlist_round_trip_dict():
    net = Netlist(1, tuple(_tiny_nodes()), (0,), (2,), 0, "w1")
    assert Netlist.from_dict(net.to_dict()) == net
