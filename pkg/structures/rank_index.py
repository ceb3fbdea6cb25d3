# rank_index.py: Orthogonal range successor and range counting over rank-space points.
#
# RankIndex is the interface the builders consume; WaveletRankIndex answers in O(log n)
# per query, NaiveScanIndex scans and serves as the oracle.

from abc import ABC, abstractmethod
from bisect import bisect_left, bisect_right
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from arith.backends import Arithmetic, NativeArithmetic
from models.bench import IndexBackend
from models.rank import RankPoint, RankRect
from models.search import QueryTrace
from structures.wavelet import WaveletMatrix
from utils.errors import DuplicateRank, InvalidParams

Pair = Tuple[RankPoint, RankPoint]


def _check_ranks(points: Sequence[RankPoint], n: int) -> None:
    seen_x = np.zeros(n + 1, dtype=bool)
    seen_y = np.zeros(n + 1, dtype=bool)
    for p in points:
        if not (1 <= p.x <= n and 1 <= p.y <= n):
            raise InvalidParams(f"Rank point {p} outside [1, {n}]^2")
        if seen_x[p.x] or seen_y[p.y]:
            raise DuplicateRank(f"Rank point {p} repeats an x-rank or a y-rank")
        seen_x[p.x] = True
        seen_y[p.y] = True


def levels_for(n: int) -> int:
    """Wavelet levels needed for values 0..n-1: ceil(log2 n), at least one."""
    return max(1, (n - 1).bit_length())


class RankIndex(ABC):
    """
    Range-successor interface over a subset of the rank-space point set.
    Fields:
    - n: Size of the rank universe [1, n].
    - m: Number of indexed points.
    - tag: Subset identifier (the level of a level stack).
    """

    def __init__(self, n: int, m: int, tag: int):
        self.n = n
        self.m = m
        self.tag = tag

    @abstractmethod
    def x_next(self, r: RankRect, trace: Optional[QueryTrace] = None) -> Optional[Pair]:
        """Leftmost and rightmost indexed points inside r, or None."""

    @abstractmethod
    def y_next(self, r: RankRect, trace: Optional[QueryTrace] = None) -> Optional[Pair]:
        """Bottommost and topmost indexed points inside r, or None."""

    @abstractmethod
    def range_count(self, r: RankRect, trace: Optional[QueryTrace] = None) -> int:
        """Number of indexed points inside r."""

    @abstractmethod
    def points(self) -> List[RankPoint]:
        """Indexed points in x order."""


class WaveletRankIndex(RankIndex):
    def __init__(self, points: Sequence[RankPoint], n: int, tag: int = 0, arith: Optional[Arithmetic] = None):
        super().__init__(n, len(points), tag)
        _check_ranks(points, n)
        self.arith = arith if arith is not None else NativeArithmetic()
        self._native = isinstance(self.arith, NativeArithmetic)
        # bucket placement by rank, no comparison sort
        y_at_x = np.zeros(n + 1, dtype=np.int64)
        x_at_y = np.zeros(n + 1, dtype=np.int64)
        for p in points:
            y_at_x[p.x] = p.y
            x_at_y[p.y] = p.x
        self.xs: List[int] = np.flatnonzero(y_at_x).tolist()
        self.ys: List[int] = np.flatnonzero(x_at_y).tolist()
        self.y_of: Dict[int, int] = {x: int(y_at_x[x]) for x in self.xs}
        self.x_of: Dict[int, int] = {y: int(x_at_y[y]) for y in self.ys}
        self.width = levels_for(n)
        self.by_x = WaveletMatrix([self.y_of[x] - 1 for x in self.xs], self.width, self.arith)
        self.by_y = WaveletMatrix([self.x_of[y] - 1 for y in self.ys], self.width, self.arith)

    def _lower(self, arr: List[int], key: int) -> int:
        if self._native:
            return bisect_left(arr, key)
        a = self.arith
        lo, hi = 0, len(arr)
        while a.lt(lo, hi):
            mid = a.half(a.add(lo, hi))
            if a.lt(a.lookup(arr, mid), key):
                lo = a.add(mid, 1)
            else:
                hi = mid
        return lo

    def _upper(self, arr: List[int], key: int) -> int:
        if self._native:
            return bisect_right(arr, key)
        a = self.arith
        lo, hi = 0, len(arr)
        while a.lt(lo, hi):
            mid = a.half(a.add(lo, hi))
            if a.le(a.lookup(arr, mid), key):
                lo = a.add(mid, 1)
            else:
                hi = mid
        return lo

    def _span(self, arr: List[int], lo: int, hi: int) -> Tuple[int, int]:
        return self._lower(arr, lo), self._upper(arr, hi)

    def x_next(self, r: RankRect, trace: Optional[QueryTrace] = None) -> Optional[Pair]:
        if r.is_empty:
            return None
        a = self.arith
        s, e = self._span(self.ys, r.ylo, r.yhi)
        lo, hi = a.sub(r.xlo, 1), a.sub(r.xhi, 1)
        first = self.by_y.next_value(s, e, lo, hi, trace)
        if first is None:
            return None
        last = self.by_y.prev_value(s, e, lo, hi, trace)
        left, right = a.add(first, 1), a.add(last, 1)
        return RankPoint(left, a.lookup(self.y_of, left)), RankPoint(right, a.lookup(self.y_of, right))

    def y_next(self, r: RankRect, trace: Optional[QueryTrace] = None) -> Optional[Pair]:
        if r.is_empty:
            return None
        a = self.arith
        s, e = self._span(self.xs, r.xlo, r.xhi)
        lo, hi = a.sub(r.ylo, 1), a.sub(r.yhi, 1)
        first = self.by_x.next_value(s, e, lo, hi, trace)
        if first is None:
            return None
        last = self.by_x.prev_value(s, e, lo, hi, trace)
        bottom, top = a.add(first, 1), a.add(last, 1)
        return RankPoint(a.lookup(self.x_of, bottom), bottom), RankPoint(a.lookup(self.x_of, top), top)

    def range_count(self, r: RankRect, trace: Optional[QueryTrace] = None) -> int:
        if r.is_empty:
            return 0
        a = self.arith
        s, e = self._span(self.xs, r.xlo, r.xhi)
        return self.by_x.count(s, e, a.sub(r.ylo, 1), a.sub(r.yhi, 1), trace)

    def points(self) -> List[RankPoint]:
        return [RankPoint(x, self.by_x.access(i) + 1) for i, x in enumerate(self.xs)]


class NaiveScanIndex(RankIndex):
    """Linear scan over the stored points; the correctness oracle for every other backend."""

    def __init__(self, points: Sequence[RankPoint], n: int, tag: int = 0):
        super().__init__(n, len(points), tag)
        _check_ranks(points, n)
        self._points = sorted(points)

    def _inside(self, r: RankRect) -> List[RankPoint]:
        return [p for p in self._points if r.contains(p)]

    def x_next(self, r: RankRect, trace: Optional[QueryTrace] = None) -> Optional[Pair]:
        hits = self._inside(r)
        if not hits:
            return None
        return min(hits, key=lambda p: p.x), max(hits, key=lambda p: p.x)

    def y_next(self, r: RankRect, trace: Optional[QueryTrace] = None) -> Optional[Pair]:
        hits = self._inside(r)
        if not hits:
            return None
        return min(hits, key=lambda p: p.y), max(hits, key=lambda p: p.y)

    def range_count(self, r: RankRect, trace: Optional[QueryTrace] = None) -> int:
        return len(self._inside(r))

    def points(self) -> List[RankPoint]:
        return list(self._points)


def build_rank_index(points: Sequence[RankPoint], n: int, backend: IndexBackend = IndexBackend.WAVELET,
                     arith: Optional[Arithmetic] = None, tag: int = 0) -> RankIndex:
    """Build a rank index over the given points with the selected backend."""
    if backend == IndexBackend.NAIVE:
        return NaiveScanIndex(points, n, tag)
    return WaveletRankIndex(points, n, tag, arith)
