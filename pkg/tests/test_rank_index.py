from itertools import product

import numpy as np
import pytest

from arith.backends import NativeArithmetic, RestrictedArithmetic
from models.bench import ArithBackend, IndexBackend
from models.rank import EMPTY_RECT, RankPoint, RankRect
from models.search import QueryTrace
from structures.bitvector import BitVec
from structures.level_stack import preprocess
from structures.rank_index import NaiveScanIndex, WaveletRankIndex, build_rank_index, levels_for
from utils.errors import DuplicateRank, InvalidParams
from utils.scenario import random_presorting


def rank_points(perm):
    """Graph of a permutation as rank points: x-rank i + 1 maps to y-rank perm[i]."""
    return [RankPoint(i + 1, int(y)) for i, y in enumerate(perm)]


def random_rect(rng, n):
    xlo, xhi = sorted(rng.integers(1, n + 1, size=2).tolist())
    ylo, yhi = sorted(rng.integers(1, n + 1, size=2).tolist())
    return RankRect(xlo, xhi, ylo, yhi)


def assert_same_answers(index, oracle, r):
    assert index.range_count(r) == oracle.range_count(r)
    assert index.x_next(r) == oracle.x_next(r)
    assert index.y_next(r) == oracle.y_next(r)


def test_exhaustive_rects_small_sets():
    """
    Test the wavelet index against the naive scan on every rectangle of small point sets.
    Ensures x_next, y_next and range_count are exact, including on sparse subsets.
    """
    rng = np.random.default_rng(1)
    for n in (1, 2, 5, 9):
        perm = (rng.permutation(n) + 1).tolist()
        full = rank_points(perm)
        subset = [p for p in full if rng.random() < 0.5]
        for pts in (full, subset):
            index, oracle = WaveletRankIndex(pts, n), NaiveScanIndex(pts, n)
            for xlo, xhi, ylo, yhi in product(range(1, n + 1), repeat=4):
                if xlo <= xhi and ylo <= yhi:
                    assert_same_answers(index, oracle, RankRect(xlo, xhi, ylo, yhi))


def test_random_rects_match_oracle():
    """
    Test the wavelet index on random rectangles over random permutations.
    Ensures the two-matrix layout answers every axis correctly at moderate n.
    """
    rng = np.random.default_rng(2)
    n = 512
    for _ in range(4):
        pts = rank_points(rng.permutation(n) + 1)
        index, oracle = WaveletRankIndex(pts, n), NaiveScanIndex(pts, n)
        for _ in range(250):
            assert_same_answers(index, oracle, random_rect(rng, n))


@pytest.mark.slow
def test_random_rects_large_n():
    """
    Test the wavelet index at n = 4096 on random rectangles.
    Ensures correctness at the acceptance size.
    """
    rng = np.random.default_rng(3)
    n = 4096
    pts = rank_points(rng.permutation(n) + 1)
    index, oracle = WaveletRankIndex(pts, n), NaiveScanIndex(pts, n)
    for _ in range(2000):
        assert_same_answers(index, oracle, random_rect(rng, n))


def test_restricted_backend_matches_native():
    """
    Test that the index built over restricted arithmetic answers like the native one.
    Ensures the audited backend changes cost accounting, not results.
    """
    rng = np.random.default_rng(4)
    n = 100
    pts = rank_points(rng.permutation(n) + 1)
    arith = RestrictedArithmetic(n)
    limited, native = WaveletRankIndex(pts, n, arith=arith), WaveletRankIndex(pts, n)
    for _ in range(200):
        assert_same_answers(limited, native, random_rect(rng, n))
    assert arith.counter.total > 0


def test_empty_rect_and_empty_answers():
    """
    Test queries on the empty rect and on rects holding no point.
    Ensures misses return None and a zero count.
    """
    pts = [RankPoint(1, 2), RankPoint(2, 1)]
    index = WaveletRankIndex(pts, 2)
    assert index.x_next(EMPTY_RECT) is None
    assert index.range_count(EMPTY_RECT) == 0
    assert index.y_next(RankRect(1, 1, 1, 1)) is None
    assert index.x_next(RankRect(1, 2, 1, 2)) == (RankPoint(1, 2), RankPoint(2, 1))
    assert index.y_next(RankRect(1, 2, 1, 2)) == (RankPoint(2, 1), RankPoint(1, 2))


def test_rejects_repeated_and_out_of_range_ranks():
    """
    Test that repeated x- or y-ranks and ranks outside [1, n] are refused.
    Ensures every index holds a partial permutation.
    """
    with pytest.raises(DuplicateRank):
        WaveletRankIndex([RankPoint(1, 1), RankPoint(2, 1)], 2)
    with pytest.raises(InvalidParams):
        WaveletRankIndex([RankPoint(3, 1)], 2)


def test_query_depth_is_logarithmic():
    """
    Test that a query trace never descends deeper than the wavelet level count.
    Ensures each query costs O(log n) node visits.
    """
    rng = np.random.default_rng(6)
    n = 300
    index = WaveletRankIndex(rank_points(rng.permutation(n) + 1), n)
    for _ in range(50):
        trace = QueryTrace()
        r = random_rect(rng, n)
        index.x_next(r, trace)
        index.y_next(r, trace)
        index.range_count(r, trace)
        assert trace.max_depth <= levels_for(n)


def test_build_rank_index_backends():
    """
    Test the backend switch of build_rank_index.
    Ensures the naive backend is selectable everywhere the wavelet one is.
    """
    pts = [RankPoint(1, 1)]
    assert isinstance(build_rank_index(pts, 1, IndexBackend.NAIVE), NaiveScanIndex)
    assert isinstance(build_rank_index(pts, 1, IndexBackend.WAVELET), WaveletRankIndex)


def test_level_stack_is_nested_and_seeded():
    """
    Test that sampled levels shrink, nest, and repeat exactly for one seed.
    Ensures the implicit skip list is reproducible.
    """
    pre = random_presorting(200, 9)
    ls = preprocess(pre, seed=42)
    again = preprocess(pre, seed=42, arith_backend=ArithBackend.RESTRICTED)
    assert ls.heights == again.heights
    assert ls.base.m == 200
    for level in range(1, len(ls)):
        upper, lower = set(ls.members(level)), set(ls.members(level - 1))
        assert upper <= lower
        assert ls.levels[level].m == len(upper)
    assert len(ls) <= 3 * levels_for(200)


def test_bitvector_rank_select():
    """
    Test rank and select on a random bit vector with both arithmetic backends.
    Ensures rank1(i) + rank0(i) = i and select1 inverts rank1 on every one.
    """
    bits = np.random.default_rng(4).integers(0, 2, size=300).tolist()
    native, restricted = BitVec(bits), BitVec(bits, RestrictedArithmetic(len(bits)))
    arith = NativeArithmetic()
    assert native.ones == restricted.ones == sum(bits)
    for i in range(len(bits) + 1):
        assert native.rank1(i, arith) + native.rank0(i, arith) == i
        assert restricted.rank1(i, arith) == native.rank1(i, arith)
    for j in range(1, native.ones + 1):
        pos = native.select1(j)
        assert native.access(pos) == 1
        assert native.rank1(pos + 1, arith) == j
