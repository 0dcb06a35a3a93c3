"""Independent oracles for the scheduler tests. None of this imports the schedulers."""

from functools import lru_cache
from itertools import product


def achievable_final_times(arrival, r):
    """All final completion times over every ordered combine tree with fan-in 2..r.

    Each combine finishes one unit after its latest input. Any tree can be
    realized by some legal combine order, so this is the set of outcomes of
    all legal schedules.
    """
    arrival = tuple(arrival)
    n = len(arrival)

    @lru_cache(maxsize=None)
    def times(lo, hi):
        if lo == hi:
            return frozenset([arrival[lo]])
        out = set()
        for parts in _splits(lo, hi, r):
            choices = [times(a, b) for a, b in parts]
            for combo in product(*choices):
                out.add(max(combo) + 1)
        return frozenset(out)

    return times(0, n - 1)


def _splits(lo, hi, r):
    """Ways to cut [lo..hi] into 2..r consecutive non-empty parts."""
    def rec(start, k):
        if k == 1:
            yield ((start, hi),)
            return
        for end in range(start, hi - k + 2):
            for rest in rec(end + 1, k - 1):
                yield ((start, end),) + rest
    for k in range(2, r + 1):
        if hi - lo + 1 >= k:
            yield from rec(lo, k)


def optimal_final_time(arrival, r):
    return min(achievable_final_times(arrival, r))


def brute_force_sequences(arrival, r):
    """Literal search over combine sequences: repeatedly merge any 2..r adjacent
    live terms; returns the set of reachable final times. Small widths only."""
    start = tuple((i, i, t) for i, t in enumerate(arrival))
    seen = {}

    def rec(state):
        if state in seen:
            return seen[state]
        if len(state) == 1:
            res = frozenset([state[0][2]])
        else:
            acc = set()
            for i in range(len(state)):
                for k in range(2, r + 1):
                    if i + k > len(state):
                        break
                    group = state[i:i + k]
                    merged = (group[0][0], group[-1][1], max(g[2] for g in group) + 1)
                    acc |= rec(state[:i] + (merged,) + state[i + k:])
            res = frozenset(acc)
        seen[state] = res
        return res

    return rec(start)


def ripple_recurrence(arrival):
    """c_0 ready at arrival[0]; c_i = max(c_{i-1}, arrival[i]) + 1."""
    t = arrival[0]
    out = [t]
    for a in arrival[1:]:
        t = max(t, a) + 1
        out.append(t)
    return out


def ceil_log(n, base):
    k = 0
    while base ** k < n:
        k += 1
    return k
