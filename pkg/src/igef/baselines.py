"""Classical adder formulations as netlist generators: ripple, serial operator chains and a balanced tree."""

from __future__ import annotations

import enum

from .model import (
    Action,
    DelayProfile,
    Fn,
    IgefError,
    Netlist,
    NetlistBuilder,
    ScheduleTrace,
    TimingReport,
    TraceEvent,
)
from .netlist import build_netlist, timing_analyze
from .schedulers import init_terms, release_min


class UnknownKind(IgefError, ValueError):
    pass


class BaselineKind(str, enum.Enum):
    RIPPLE_CPA = "ripple"
    CHAIN_CSMA_CCA = "chain_csma_cca"
    CHAIN_ELMA_CLA1 = "chain_elma_cla1"
    CHAIN_CLA2 = "chain_cla2"
    TREE_CLA2 = "tree_cla2"


CHAIN_KINDS = (BaselineKind.CHAIN_CSMA_CCA, BaselineKind.CHAIN_ELMA_CLA1, BaselineKind.CHAIN_CLA2)


def build_ripple(width: int) -> Netlist:
    """Serial carry chain c_i = g_i + r_i·c_{i-1}, c_0 = g_0."""
    nb = NetlistBuilder(width, BaselineKind.RIPPLE_CPA.value)
    carries = [nb.g[0]]
    for i in range(1, width):
        carries.append(nb.gate(Fn.NABLA, carries[-1], nb.g[i], nb.r[i]))
    return nb.finish(carries, nb.add_sums(carries))


def _chain_carries(nb: NetlistBuilder, kind: BaselineKind) -> list[int]:
    carries = [nb.g[0]]
    for i in range(1, nb.width):
        c = carries[-1]
        if kind is BaselineKind.CHAIN_CSMA_CCA:
            carries.append(nb.gate(Fn.MUX, c, nb.r[i], nb.g[i]))
        elif kind is BaselineKind.CHAIN_ELMA_CLA1:
            carries.append(nb.gate(Fn.NABLA, c, nb.g[i], nb.p[i]))
        else:
            carries.append(nb.gate(Fn.NABLA, c, nb.g[i], nb.r[i]))
    return carries


def _as_kind(kind) -> BaselineKind:
    try:
        return BaselineKind(kind)
    except ValueError:
        raise UnknownKind(f"unknown baseline kind {kind!r}") from None


def build_chain(kind, width: int) -> Netlist:
    """Left-to-right operator chain; p_i joins each sum at the last step.

    ``chain_csma_cca`` chains ⊗ over (r_i, g_i), ``chain_elma_cla1`` chains ∇
    over (g_i, p_i) and ``chain_cla2`` chains ∇ over (g_i, r_i).
    """
    kind = _as_kind(kind)
    if kind not in CHAIN_KINDS:
        raise UnknownKind(f"{kind.value} is not a chain kind")
    nb = NetlistBuilder(width, kind.value)
    carries = _chain_carries(nb, kind)
    return nb.finish(carries, nb.add_sums(carries))


def build_csma_early_sum(width: int) -> Netlist:
    """⊗ chain whose sums fold p_i in one level early.

    s_i = c_{i-2} ⊗ (p_i ⊕ r_{i-1}, p_i ⊕ g_{i-1}) for i >= 2, which equals
    p_i ⊕ c_{i-1} because c_{i-1} = c_{i-2} ⊗ (r_{i-1}, g_{i-1}).
    """
    nb = NetlistBuilder(width, "chain_csma_early_sum")
    carries = _chain_carries(nb, BaselineKind.CHAIN_CSMA_CCA)
    sums = [nb.p[0]]
    if width > 1:
        sums.append(nb.gate(Fn.XOR, nb.p[1], carries[0]))
    for i in range(2, width):
        if_one = nb.gate(Fn.XOR, nb.p[i], nb.r[i - 1])
        if_zero = nb.gate(Fn.XOR, nb.p[i], nb.g[i - 1])
        sums.append(nb.gate(Fn.MUX, carries[i - 2], if_one, if_zero))
    return nb.finish(carries, sums)


def balanced_trace(width: int) -> ScheduleTrace:
    """Level-by-level pairing of adjacent terms, blind to arrival times.

    All live terms are released at the start of each level (on the uniform
    profile the pending ones share one ready time), then paired left to right.
    """
    dp = DelayProfile.uniform(width)
    live = init_terms(dp)
    initial = list(live.terms)
    events = []
    level = 0
    while not live.complete():
        events.append(TraceEvent(level, Action.RELEASE, tuple(release_min(live))))
        terms = list(live.terms)
        for k in range(0, len(terms) - 1, 2):
            out = live.merge((terms[k], terms[k + 1]), released=False)
            events.append(TraceEvent(level, Action.COMBINE, (terms[k].id, terms[k + 1].id), out, False))
        level += 1
    return ScheduleTrace(BaselineKind.TREE_CLA2.value, dp, tuple(initial), tuple(events), live.terms[0].ready, 2)


def build_tree_cla2(width: int) -> Netlist:
    """Balanced binary ∇ tree over c_0 and the (g_i, r_i) pairs, ripple-completed."""
    return build_netlist(balanced_trace(width), BaselineKind.TREE_CLA2.value)


def build_baseline(kind, width: int) -> Netlist:
    kind = _as_kind(kind)
    if kind is BaselineKind.RIPPLE_CPA:
        return build_ripple(width)
    if kind is BaselineKind.TREE_CLA2:
        return build_tree_cla2(width)
    return build_chain(kind, width)


def sum_timing_forms(kind, width: int, dp: DelayProfile) -> TimingReport:
    """Timing of the sum path.

    For ``chain_csma_cca`` this reports the early-merge conditional-sum form
    (p_i folded in before the final select); every other kind reports its
    own netlist, where p_i is merged at the last step.
    """
    kind = _as_kind(kind)
    if kind is BaselineKind.CHAIN_CSMA_CCA:
        net = build_csma_early_sum(width)
    else:
        net = build_baseline(kind, width)
    return timing_analyze(net, dp)
