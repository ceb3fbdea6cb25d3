# wavelet.py: Wavelet matrix over a sequence of small non-negative integers.
#
# Queries restrict to a position range [s, e) and a value range [lo, hi] and descend the
# levels most significant bit first; every index computation goes through an Arithmetic.

from typing import List, Optional, Sequence

import numpy as np

from arith.backends import Arithmetic, NativeArithmetic
from models.search import QueryTrace
from structures.bitvector import BitVec


class WaveletMatrix:
    def __init__(self, values: Sequence[int], width: int, arith: Optional[Arithmetic] = None):
        self.width = width
        self.size = len(values)
        self.arith = arith if arith is not None else NativeArithmetic()
        self.levels: List[BitVec] = []
        self.zeros: List[int] = []
        # sizes[level] = number of values a node on that level covers
        self.sizes = [1 << (width - level) for level in range(width + 1)]
        if isinstance(self.arith, NativeArithmetic):
            self._build_native(values)
        else:
            self._build_counted(values)

    def _build_native(self, values: Sequence[int]) -> None:
        current = np.asarray(values, dtype=np.int64)
        for level in range(self.width):
            bits = (current >> (self.width - 1 - level)) & 1
            bv = BitVec(bits)
            self.levels.append(bv)
            self.zeros.append(len(bv) - bv.ones)
            current = np.concatenate((current[bits == 0], current[bits == 1]))

    def _build_counted(self, values: Sequence[int]) -> None:
        a = self.arith
        decomposed = [a.bits(v, self.width) for v in values]
        order = list(range(len(values)))
        for level in range(self.width):
            bit_at = self.width - 1 - level
            bits = [decomposed[i][bit_at] for i in order]
            bv = BitVec(bits, a)
            self.levels.append(bv)
            self.zeros.append(a.sub(len(bv), bv.ones))
            order = [i for i, b in zip(order, bits) if b == 0] + [i for i, b in zip(order, bits) if b == 1]

    def access(self, pos: int) -> int:
        """Value stored at position pos (reconstruction check)."""
        a = self.arith
        value = 0
        for level, bv in enumerate(self.levels):
            if bv.access(pos):
                value += self.sizes[level + 1]
                pos = a.add(self.zeros[level], bv.rank1(pos, a))
            else:
                pos = bv.rank0(pos, a)
        return value

    def _children(self, level: int, s: int, e: int):
        a = self.arith
        bv = self.levels[level]
        s0, e0 = bv.rank0(s, a), bv.rank0(e, a)
        z = self.zeros[level]
        return s0, e0, a.add(z, a.sub(s, s0)), a.add(z, a.sub(e, e0))

    def next_value(self, s: int, e: int, lo: int, hi: int, trace: Optional[QueryTrace] = None) -> Optional[int]:
        """Smallest value in [lo, hi] among positions [s, e), or None."""
        return self._next(0, s, e, 0, lo, hi, trace)

    def prev_value(self, s: int, e: int, lo: int, hi: int, trace: Optional[QueryTrace] = None) -> Optional[int]:
        """Largest value in [lo, hi] among positions [s, e), or None."""
        return self._prev(0, s, e, 0, lo, hi, trace)

    def count(self, s: int, e: int, lo: int, hi: int, trace: Optional[QueryTrace] = None) -> int:
        """Number of positions in [s, e) holding a value in [lo, hi]."""
        return self._count(0, s, e, 0, lo, hi, trace)

    def _outside(self, level: int, node_lo: int, lo: int, hi: int) -> bool:
        a = self.arith
        node_hi = a.sub(a.add(node_lo, a.lookup(self.sizes, level)), 1)
        return a.lt(node_hi, lo) or a.lt(hi, node_lo)

    def _next(self, level, s, e, node_lo, lo, hi, trace):
        a = self.arith
        if not a.lt(s, e) or self._outside(level, node_lo, lo, hi):
            return None
        if trace is not None:
            trace.visit(level)
        if level == self.width:
            return node_lo
        s0, e0, s1, e1 = self._children(level, s, e)
        found = self._next(level + 1, s0, e0, node_lo, lo, hi, trace)
        if found is not None:
            return found
        return self._next(level + 1, s1, e1, a.add(node_lo, a.lookup(self.sizes, level + 1)), lo, hi, trace)

    def _prev(self, level, s, e, node_lo, lo, hi, trace):
        a = self.arith
        if not a.lt(s, e) or self._outside(level, node_lo, lo, hi):
            return None
        if trace is not None:
            trace.visit(level)
        if level == self.width:
            return node_lo
        s0, e0, s1, e1 = self._children(level, s, e)
        found = self._prev(level + 1, s1, e1, a.add(node_lo, a.lookup(self.sizes, level + 1)), lo, hi, trace)
        if found is not None:
            return found
        return self._prev(level + 1, s0, e0, node_lo, lo, hi, trace)

    def _count(self, level, s, e, node_lo, lo, hi, trace):
        a = self.arith
        if not a.lt(s, e) or self._outside(level, node_lo, lo, hi):
            return 0
        if trace is not None:
            trace.visit(level)
        node_hi = a.sub(a.add(node_lo, a.lookup(self.sizes, level)), 1)
        if a.le(lo, node_lo) and a.le(node_hi, hi):
            return a.sub(e, s)
        s0, e0, s1, e1 = self._children(level, s, e)
        left = self._count(level + 1, s0, e0, node_lo, lo, hi, trace)
        right = self._count(level + 1, s1, e1, a.add(node_lo, a.lookup(self.sizes, level + 1)), lo, hi, trace)
        return a.add(left, right)
