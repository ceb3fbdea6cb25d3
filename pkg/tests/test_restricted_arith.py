import ast
import inspect

import numpy as np
import pytest

import arith.restricted as restricted
from arith.backends import NativeArithmetic, RestrictedArithmetic
from arith.restricted import (DIGITS, PrimitiveOps, WordDivider, audited_primitives, build_shift_table, chunk,
                              chunk_count, chunk_width, recombine, universe_for)
from models.counters import PRIMITIVES, OpCounter
from utils.config import get_settings
from utils.errors import DivisionByZero, InvalidParams, SizeOverflow

FORBIDDEN_OPS = (ast.Div, ast.FloorDiv, ast.Mod, ast.LShift, ast.RShift, ast.BitAnd, ast.BitOr, ast.BitXor)


def per_call_ops(divider, counter, a, b):
    before = counter.total
    result = divider.divmod(a, b)
    return result, counter.total - before


def test_module_uses_only_audited_operators():
    """
    Test that the restricted module's syntax tree has no division, modulo, shift or bitwise operator.
    Ensures every word operation goes through the audited primitives.
    """
    tree = ast.parse(inspect.getsource(restricted))
    bad = [type(node.op).__name__ for node in ast.walk(tree)
           if isinstance(node, (ast.BinOp, ast.AugAssign)) and isinstance(node.op, FORBIDDEN_OPS)]
    bad += [type(node.op).__name__ for node in ast.walk(tree)
            if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.Invert)]
    assert bad == []
    assert audited_primitives() <= set(PRIMITIVES)


def test_primitive_ops_count_each_category():
    """
    Test that each PrimitiveOps call bumps exactly its own counter.
    Ensures op-count reports are attributable per primitive.
    """
    ops = PrimitiveOps()
    ops.add(1, 2)
    ops.sub(3, 1)
    ops.mul(2, 2)
    ops.lt(1, 2)
    ops.eq(1, 1)
    table = [0, 0]
    ops.store(table, 1, 5)
    assert ops.lookup(table, 1) == 5
    assert ops.counter.snapshot() == {"add": 1, "sub": 1, "mul": 1, "cmp": 2, "lookup": 2}


def test_universe_and_chunk_width():
    """
    Test the word universe for small and large n and the derived chunk width.
    Ensures four base-2^k digits always cover the universe.
    """
    assert universe_for(1) == 64
    assert universe_for(1000) == 2 ** 12
    assert chunk_width(2 ** 12) == 4
    assert chunk_width(2 ** 6) == 2
    for e in range(6, 25):
        assert DIGITS * chunk_width(2 ** e) >= e
    with pytest.raises(InvalidParams):
        chunk_width(100)


def test_shift_table_values_and_build_cost():
    """
    Test shift table entries against floor division, and the build cost bound of 4N.
    Ensures preprocessing stays linear in the universe.
    """
    for e in (6, 10, 12):
        N = 2 ** e
        k = chunk_width(N)
        ops = PrimitiveOps()
        table = build_shift_table(N, k, ops)
        assert table.table == [i // 2 ** k for i in range(N)]
        assert ops.counter.total <= 4 * N


def test_chunk_and_recombine():
    """
    Test that chunking into k-bit pieces and recombining is the identity.
    Ensures the shift table supports digit extraction.
    """
    table = build_shift_table(2 ** 12, 4)
    assert chunk_count(table) == 3
    assert chunk(0xABC, table) == [0xC, 0xB, 0xA]
    for v in (0, 1, 255, 4095):
        assert recombine(chunk(v, table), table.step) == v


def test_divmod_exhaustive_small_universe():
    """
    Test WordDivider.divmod against native floor division on every pair below N = 2^6.
    Ensures the long-division schedule and its corrections are exact.
    """
    N = 2 ** 6
    divider = WordDivider(N)
    for a in range(N):
        for b in range(1, N):
            assert divider.divmod(a, b) == divmod(a, b)


@pytest.mark.slow
def test_divmod_every_dividend_at_two_to_twelve():
    """
    Test divmod at N = 2^12 for every dividend against a strided set of divisors plus the digit
    boundaries of base 16.
    Ensures the full-width universe is exact for every dividend, not only sampled pairs.
    """
    N = 2 ** 12
    divider = WordDivider(N)
    divisors = sorted(set(range(1, N, 61)) | {1, 2, 3, 15, 16, 17, 255, 256, 257, N // 2, N // 2 + 1, N - 1})
    for b in divisors:
        for a in range(N):
            assert divider.divmod(a, b) == divmod(a, b), (a, b)


@pytest.mark.slow
def test_divmod_random_pairs_large_universes():
    """
    Test divmod on random pairs at N = 2^12 and N = 2^20, including edge operands.
    Ensures correctness where the digit tables are widest.
    """
    rng = np.random.default_rng(11)
    for e in (12, 20):
        N = 2 ** e
        divider = WordDivider(N)
        pairs = list(zip(rng.integers(0, N, 5000).tolist(), rng.integers(1, N, 5000).tolist()))
        pairs += [(N - 1, 1), (N - 1, N - 1), (0, N - 1), (N - 1, 2), (N // 2, N // 2 + 1)]
        for a, b in pairs:
            assert divider.divmod(a, b) == divmod(a, b)


def test_divmod_op_count_is_constant_across_universes():
    """
    Test that every divmod call costs the same number of primitives, for every N.
    Ensures the simulated division is constant time in the word size.
    """
    counts = set()
    rng = np.random.default_rng(5)
    for e in (12, 16, 20):
        N = 2 ** e
        counter = OpCounter()
        divider = WordDivider(N, PrimitiveOps(counter))
        operands = [(N - 1, 1), (0, 7), (12345 % N, 3)]
        operands += list(zip(rng.integers(0, N, 50).tolist(), rng.integers(1, N, 50).tolist()))
        for a, b in operands:
            result, cost = per_call_ops(divider, counter, a, b)
            assert result == divmod(a, b)
            counts.add(cost)
    assert len(counts) == 1


def test_divmod_rejects_zero_and_out_of_range():
    """
    Test the divmod error cases.
    Ensures division by zero and operands outside the universe are reported.
    """
    divider = WordDivider(2 ** 6)
    with pytest.raises(DivisionByZero):
        divider.divmod(5, 0)
    with pytest.raises(InvalidParams):
        divider.divmod(64, 3)


def test_mem_cap_raises_size_overflow(monkeypatch):
    """
    Test that a lookup table above PRESORT_GEOM_MEM_CAP raises SizeOverflow.
    Ensures table allocation honours the configured memory bound.
    """
    monkeypatch.setenv("PRESORT_GEOM_MEM_CAP", "100")
    get_settings.cache_clear()
    try:
        with pytest.raises(SizeOverflow):
            build_shift_table(2 ** 10, 2)
    finally:
        monkeypatch.delenv("PRESORT_GEOM_MEM_CAP")
        get_settings.cache_clear()


def test_backends_agree_on_half_and_bits():
    """
    Test that native and restricted arithmetic agree on halving and bit extraction.
    Ensures the rank index computes the same answers on either backend.
    """
    native, limited = NativeArithmetic(), RestrictedArithmetic(100)
    for v in range(0, limited.universe):
        assert limited.half(v) == native.half(v)
        assert limited.bits(v, 9) == native.bits(v, 9)
    assert limited.counter.total > 0
