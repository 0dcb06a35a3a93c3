"""Bit-level primitives and the three ternary operators.

All functions work on plain 0/1 ints and, unchanged, on uint8 numpy arrays,
which is how the netlist evaluator drives many operand pairs at once.
"""

from __future__ import annotations

from typing import NamedTuple


class BlockPair(NamedTuple):
    """(generate, alive) summary of a contiguous bit block."""

    g: int
    r: int


def primitive_signals(a, b):
    """Return ``(p, g, r)`` for one bit position."""
    return a ^ b, a & b, a | b


def op_mux(x, b, c):
    """``x ⊗ (b, c)``: b when the selector is 1, c when it is 0."""
    return (x & b) | ((x ^ 1) & c)


def op_nabla(a, b, c):
    """``a ∇ (b, c) = b + c·a``; symmetric in ``a`` and ``c``."""
    return b | (c & a)


def op_delta(a, b, c):
    """``a Δ (b, c) = b ⊕ c·a``; symmetric in ``a`` and ``c``."""
    return b ^ (c & a)


def combine_nabla(lower: BlockPair, upper: BlockPair) -> BlockPair:
    """Merge two adjacent blocks, lower bits first.

    G = G_hi + R_hi·G_lo and R = G_hi + R_hi·R_lo. Folding G_hi into R keeps
    g <= r and keeps R exact as "carry-in 1 gives carry-out 1"; the carry
    extension c -> G + R·c is the same as with R = R_lo·R_hi.
    """
    return BlockPair(op_nabla(lower.g, upper.g, upper.r), op_nabla(lower.r, upper.g, upper.r))


def combine_mux(lower, upper):
    """Conditional-value pairs: each lower value selects between the upper pair."""
    alpha, beta = lower
    gamma, delta = upper
    return op_mux(alpha, gamma, delta), op_mux(beta, gamma, delta)


def combine_delta(lower, upper):
    alpha, beta = lower
    gamma, delta = upper
    return op_delta(alpha, gamma, delta), beta & delta


def carry_csma(c_prev, r, g):
    """Conditional-sum carry: ``c_prev ⊗ (r, g)``."""
    return op_mux(c_prev, r, g)


def carry_cla1(c_prev, g, p):
    """``c = g + p·c_prev``."""
    return op_nabla(c_prev, g, p)


def carry_cla2(c_prev, g, r):
    """``c = g + r·c_prev``."""
    return op_nabla(c_prev, g, r)


def extend_carry(c_prev, pair: BlockPair):
    """Carry out of a block given the carry into it."""
    return op_nabla(c_prev, pair.g, pair.r)
