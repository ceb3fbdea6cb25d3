import math

import numpy as np
import pytest

from geometry.presorting import extremes_of, gamma
from models.bench import IndexBackend
from models.rank import EMPTY_EXTREMES, Axis, RankPoint, RankRect
from models.square import Square
from solvers.search import half_split_x, half_split_y, median_split, skip_search
from structures.level_stack import preprocess
from utils.errors import InvalidParams
from utils.scenario import random_presorting


def region(pre, box):
    """Points of the presorting inside a closed box, their extremes and rank rect."""
    inside = [p for p in pre.a_x if box.contains(p.x, p.y)]
    ex = extremes_of(inside)
    return inside, ex, gamma(ex, pre)


def test_half_split_matches_brute_force():
    """
    Test half_split_x and half_split_y against a linear scan, for lines across the whole region.
    Ensures the two sides' extremes are exact, including trivial sides.
    """
    for seed in range(6):
        pre = random_presorting(120, seed)
        ls = preprocess(pre, seed)
        box = Square(x0=0.1, y0=0.05, x1=0.9, y1=0.85)
        inside, ex, g = region(pre, box)
        for line in (-1.0, 0.2, 0.35, 0.5, 0.77, 2.0):
            low, high, stats = half_split_x(ls, g, ex, line)
            assert low == extremes_of([p for p in inside if p.x < line])
            assert high == extremes_of([p for p in inside if p.x >= line])
            low, high, stats = half_split_y(ls, g, ex, line)
            assert low == extremes_of([p for p in inside if p.y < line])
            assert high == extremes_of([p for p in inside if p.y >= line])


def test_half_split_on_exact_coordinate():
    """
    Test a split line passing exactly through a point.
    Ensures that point goes to the upper side.
    """
    pre = random_presorting(30, 4)
    ls = preprocess(pre, 0)
    ex = extremes_of(pre.a_x)
    g = gamma(ex, pre)
    pivot = pre.a_x[10]
    low, high, _ = half_split_x(ls, g, ex, pivot.x)
    assert high.leftmost == pivot
    assert low.rightmost == pre.a_x[9]


def test_half_split_empty_region():
    """
    Test that splitting an empty region gives two empty sides at no cost.
    Ensures leaf regions never issue queries.
    """
    pre = random_presorting(10, 1)
    ls = preprocess(pre, 0)
    low, high, stats = half_split_y(ls, gamma(EMPTY_EXTREMES, pre), EMPTY_EXTREMES, 0.5)
    assert low.is_empty and high.is_empty
    assert stats.queries == 0


def test_half_split_naive_backend_agrees():
    """
    Test half splits over the naive scan backend.
    Ensures the search is independent of the index implementation.
    """
    pre = random_presorting(60, 8)
    wavelet, naive = preprocess(pre, 3), preprocess(pre, 3, IndexBackend.NAIVE)
    ex = extremes_of(pre.a_x)
    g = gamma(ex, pre)
    for line in (0.1, 0.4, 0.6):
        a = half_split_x(wavelet, g, ex, line)
        b = half_split_x(naive, g, ex, line)
        assert a[:2] == b[:2]
        assert a[2].queries == b[2].queries


def test_stats_account_for_every_query():
    """
    Test that queries equal the up-, right- and down-steps plus a constant.
    Ensures the three-phase accounting can be recomputed from SearchStats.
    """
    pre = random_presorting(500, 2)
    ls = preprocess(pre, 2)
    ex = extremes_of(pre.a_x)
    g = gamma(ex, pre)
    for i in (1, 7, 100, 250, 499):
        _, _, stats = half_split_x(ls, g, ex, pre.a_x[i].x)
        assert stats.steps <= stats.queries <= stats.steps + 6
        assert len(stats.right_step_levels) == stats.right_steps
        assert all(0 <= level < len(ls) for level in stats.right_step_levels)


def test_half_split_cost_grows_with_smaller_side():
    """
    Test the cost law: mean queries per split stay below 8 * (1 + log2 of the smaller side).
    Ensures the interleaved search pays for the small side only.
    """
    n, sides, seeds = 1024, (2, 8, 64, 512), range(30)
    totals = dict.fromkeys(sides, 0)
    for seed in seeds:
        pre = random_presorting(n, seed)
        ls = preprocess(pre, seed + 1000)
        ex = extremes_of(pre.a_x)
        g = gamma(ex, pre)
        for side in sides:
            line = pre.a_x[side].x if seed % 2 == 0 else pre.a_x[n - side].x
            _, _, stats = half_split_x(ls, g, ex, line)
            totals[side] += stats.queries
    for side in sides:
        assert totals[side] / len(seeds) <= 8 * (1 + math.log2(side))


@pytest.mark.slow
def test_half_split_cost_law_acceptance_scale():
    """
    Test the cost law up to a smaller side of 4096, with more seeds.
    Ensures one constant bounds every smaller-side size.
    """
    n, sides = 8192, (2, 8, 64, 512, 4096)
    queries = {side: [] for side in sides}
    for seed in range(60):
        pre = random_presorting(n, seed)
        ls = preprocess(pre, seed)
        ex = extremes_of(pre.a_x)
        g = gamma(ex, pre)
        for side in sides:
            _, _, stats = half_split_y(ls, g, ex, pre.a_y[side].y)
            queries[side].append(stats.queries)
    for side in sides:
        assert np.mean(queries[side]) <= 8 * (1 + math.log2(side))


def test_median_split_matches_sorted_order():
    """
    Test median_split on random rects along both axes against sorting.
    Ensures the lower median (index floor((m-1)/2)) is returned.
    """
    rng = np.random.default_rng(12)
    pre = random_presorting(80, 5)
    ls = preprocess(pre, 5)
    for _ in range(60):
        xlo, xhi = sorted(rng.integers(1, 81, size=2).tolist())
        ylo, yhi = sorted(rng.integers(1, 81, size=2).tolist())
        g = RankRect(xlo, xhi, ylo, yhi)
        inside = [p for p in pre.a_x if g.contains(RankPoint(p.id, pre.y_index(p)))]
        if not inside:
            with pytest.raises(InvalidParams):
                median_split(ls, g, Axis.X, ls.base)
            continue
        k = (len(inside) - 1) // 2
        rank_x, _ = median_split(ls, g, Axis.X, ls.base)
        assert rank_x == inside[k].id
        by_y = sorted(inside, key=lambda p: p.y)
        rank_y, _ = median_split(ls, g, Axis.Y, ls.base, size=len(inside))
        assert rank_y == pre.y_index(by_y[k])


def test_median_of_two_is_lower():
    """
    Test the two-point median.
    Ensures ties in the median definition resolve to the lower point.
    """
    pre = random_presorting(2, 0)
    ls = preprocess(pre, 0)
    rank, _ = median_split(ls, RankRect(1, 2, 1, 2), Axis.X, ls.base)
    assert rank == 1


def test_skip_search_finds_last_accepted():
    """
    Test the one-sided search with a threshold predicate.
    Ensures it returns the furthest point before the first rejection.
    """
    pre = random_presorting(200, 3)
    ls = preprocess(pre, 3)
    g = RankRect(1, 200, 1, 200)
    start = RankPoint(1, pre.pi[0])
    found, stats = skip_search(ls, g, Axis.X, True, start, lambda p: p.x <= 137)
    assert found.x == 137
    assert stats.queries >= stats.steps


def test_high_level_right_steps_average_at_most_two():
    """
    Test the right-steps a one-sided search takes at levels of at least log2 b, where b is the
    number of accepted points.
    Ensures those steps average at most 2 over seeds, since about one accepted point reaches that height.
    """
    n = 512
    pre = random_presorting(n, 21)
    g = RankRect(1, n, 1, n)
    start = RankPoint(1, pre.pi[0])
    for b in (8, 64):
        high = []
        for seed in range(100):
            ls = preprocess(pre, seed)
            found, stats = skip_search(ls, g, Axis.X, True, start, lambda p: p.x <= b)
            assert found.x == b
            high.append(sum(1 for level in stats.right_step_levels if level >= math.log2(b)))
        assert np.mean(high) <= 2
