import json
from itertools import product
from pathlib import Path

import pytest

from igef.operators import (
    BlockPair,
    carry_cla1,
    carry_cla2,
    carry_csma,
    combine_delta,
    combine_mux,
    combine_nabla,
    extend_carry,
    op_delta,
    op_mux,
    op_nabla,
    primitive_signals,
)

BITS = (0, 1)
GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("a,b,want", [
    (1, 1, (0, 1, 1)),
    (1, 0, (1, 0, 1)),
    (0, 1, (1, 0, 1)),
    (0, 0, (0, 0, 0)),
])
def test_primitive_signals(a, b, want):
    assert primitive_signals(a, b) == want


def test_truth_tables():
    for x, y, z in product(BITS, repeat=3):
        assert op_mux(x, y, z) == (y if x else z)
        assert op_nabla(x, y, z) == int(y or (z and x))
        assert op_delta(x, y, z) == (y + (z * x)) % 2


def test_operator_examples():
    assert op_mux(1, 1, 0) == 1
    assert op_mux(0, 1, 0) == 0
    for x, b in product(BITS, repeat=2):
        assert op_mux(x, b, b) == b
    assert op_nabla(1, 0, 1) == 1
    assert op_nabla(0, 0, 1) == 0
    assert op_delta(1, 1, 1) == 0
    assert op_delta(0, 1, 1) == 1


def test_symmetry():
    for a, b, c in product(BITS, repeat=3):
        assert op_nabla(a, b, c) == op_nabla(c, b, a)
        assert op_delta(a, b, c) == op_delta(c, b, a)


def test_sum_as_delta_instance():
    for c, p in product(BITS, repeat=2):
        assert op_delta(c, p, 1) == p ^ c


def test_combine_nabla_examples():
    assert combine_nabla(BlockPair(0, 1), BlockPair(0, 1)) == (0, 1)
    assert combine_nabla(BlockPair(1, 1), BlockPair(0, 0)) == (0, 0)


def test_combine_nabla_prefix_property():
    for c, gl, rl, gh, rh in product(BITS, repeat=5):
        merged = combine_nabla(BlockPair(gl, rl), BlockPair(gh, rh))
        assert extend_carry(c, merged) == extend_carry(extend_carry(c, BlockPair(gl, rl)), BlockPair(gh, rh))


def test_combine_nabla_associative():
    for bits in product(BITS, repeat=6):
        x, y, z = BlockPair(*bits[0:2]), BlockPair(*bits[2:4]), BlockPair(*bits[4:6])
        assert combine_nabla(combine_nabla(x, y), z) == combine_nabla(x, combine_nabla(y, z))


def test_generate_implies_alive_is_preserved():
    for gl, rl, gh, rh in product(BITS, repeat=4):
        if gl <= rl and gh <= rh:
            out = combine_nabla(BlockPair(gl, rl), BlockPair(gh, rh))
            assert out.g <= out.r


def test_single_bit_pairs_satisfy_g_le_r():
    for a, b in product(BITS, repeat=2):
        _, g, r = primitive_signals(a, b)
        assert g <= r


def test_carry_forms_agree():
    for a, b, c in product(BITS, repeat=3):
        p, g, r = primitive_signals(a, b)
        want = (a + b + c) >> 1
        assert carry_csma(c, r, g) == want
        assert carry_cla1(c, g, p) == want
        assert carry_cla2(c, g, r) == want


def test_combine_mux_examples():
    assert combine_mux((1, 0), (1, 0)) == (1, 0)
    for g, d in product(BITS, repeat=2):
        assert combine_mux((0, 0), (g, d)) == (d, d)


def test_mux_chain_matches_ripple_width4():
    n = 4
    for a, b in product(range(1 << n), repeat=2):
        bits = [primitive_signals((a >> i) & 1, (b >> i) & 1) for i in range(n)]
        # ⊗ chain over (r_i, g_i)
        c = bits[0][1]
        chain = [c]
        for p, g, r in bits[1:]:
            c = op_mux(c, r, g)
            chain.append(c)
        # carries of the integer sum
        want = [((a & ((2 << i) - 1)) + (b & ((2 << i) - 1))) >> (i + 1) for i in range(n)]
        assert chain == want


def test_combine_mux_conditional_pairs():
    # lower holds (value if carry 1, value if carry 0) of the upper-block carry;
    # combining with the lower block's conditional carries selects correctly
    for hi1, hi0, lo1, lo0 in product(BITS, repeat=4):
        a, b = combine_mux((lo1, lo0), (hi1, hi0))
        for cin in BITS:
            lo = lo1 if cin else lo0
            assert (a if cin else b) == (hi1 if lo else hi0)


def test_combine_delta_examples():
    assert combine_delta((0, 1), (0, 1)) == (0, 1)
    assert combine_delta((1, 1), (0, 1)) == (1, 1)


def test_combine_delta_golden():
    rows = json.loads((GOLDEN / "combine_delta.json").read_text())
    assert len(rows) == 16
    for row in rows:
        assert list(combine_delta(tuple(row["lower"]), tuple(row["upper"]))) == row["out"]


def test_operators_vectorize():
    np = pytest.importorskip("numpy")
    x = np.array([0, 0, 1, 1], dtype=np.uint8)
    y = np.array([0, 1, 0, 1], dtype=np.uint8)
    assert op_mux(x, y, 1 - y).tolist() == [1, 0, 0, 1]
    assert op_nabla(x, 0, y).tolist() == [0, 0, 0, 1]
