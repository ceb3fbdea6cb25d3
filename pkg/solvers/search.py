# search.py: Implicit skip-list exponential search over a LevelStack.
#
# Every search walks the sampled levels from a known boundary point: it climbs while the
# next point on the current level is still accepted, then alternates right-steps (advance
# past an accepted point) and down-steps (drop a level after a rejection) until level 0
# rejects. Two searches started from opposite ends of a region run interleaved, one query
# at a time, and the first to finish determines the split.

from typing import Callable, Generator, List, Optional, Tuple

from models.point import Point
from models.presorting import Presorting
from models.rank import EMPTY_EXTREMES, Axis, Extremes, RankPoint, RankRect
from models.search import SearchStats
from structures.level_stack import LevelStack
from structures.rank_index import RankIndex
from utils.errors import InvalidParams

Accept = Callable[[RankPoint], bool]
Walker = Generator[None, None, RankPoint]


def _rank(p: RankPoint, axis: Axis) -> int:
    return p.x if axis == Axis.X else p.y


def _coord(pre: Presorting, p: RankPoint, axis: Axis) -> float:
    return pre.a_x[p.x - 1].x if axis == Axis.X else pre.a_y[p.y - 1].y


def _point(pre: Presorting, p: RankPoint) -> Point:
    return pre.a_x[p.x - 1]


def _rank_point(pre: Presorting, p: Point) -> RankPoint:
    return RankPoint(p.id, pre.y_index(p))


def _restrict(r: RankRect, axis: Axis, lo: Optional[int] = None, hi: Optional[int] = None) -> RankRect:
    """Replace the bounds of r along one axis."""
    if axis == Axis.X:
        return RankRect(r.xlo if lo is None else lo, r.xhi if hi is None else hi, r.ylo, r.yhi)
    return RankRect(r.xlo, r.xhi, r.ylo if lo is None else lo, r.yhi if hi is None else hi)


def _past(r: RankRect, axis: Axis, from_low: bool, rank: int) -> RankRect:
    """Move the search boundary of r one position beyond `rank`."""
    return _restrict(r, axis, lo=rank + 1) if from_low else _restrict(r, axis, hi=rank - 1)


def _ends(index: RankIndex, r: RankRect, axis: Axis) -> Optional[Tuple[RankPoint, RankPoint]]:
    return index.x_next(r) if axis == Axis.X else index.y_next(r)


def _first(index: RankIndex, r: RankRect, axis: Axis, from_low: bool) -> Optional[RankPoint]:
    found = _ends(index, r, axis)
    if found is None:
        return None
    return found[0] if from_low else found[1]


def _walk(ls: LevelStack, g: RankRect, axis: Axis, from_low: bool, start: RankPoint,
          accept: Accept, stats: SearchStats) -> Walker:
    """
    Skip-list walk from `start`; yields once per successor query and returns the last accepted point.
    Step-by-step:
    1. Ascent: move the boundary past `start` and climb while each level's next point is accepted.
    2. From the level below the first failing one, right-step on acceptance, down-step otherwise.
    3. The walk ends when level 0 rejects (or has no further point); the last accepted point is the answer.
    `start` itself must be accepted.
    """
    best = start
    region = _past(g, axis, from_low, _rank(start, axis))
    level = 0
    # Step 1: ascent
    while level < len(ls.levels):
        p = _first(ls.levels[level], region, axis, from_low)
        stats.queries += 1
        yield
        if p is None or not accept(p):
            break
        best = p
        region = _past(region, axis, from_low, _rank(p, axis))
        stats.up_steps += 1
        level += 1
    # Step 2: right-steps and down-steps
    level -= 1
    while level >= 0:
        p = _first(ls.levels[level], region, axis, from_low)
        stats.queries += 1
        yield
        if p is not None and accept(p):
            best = p
            region = _past(region, axis, from_low, _rank(p, axis))
            stats.right_steps += 1
            stats.right_step_levels.append(level)
        else:
            level -= 1
            stats.down_steps += 1
    return best


def _race(walkers: List[Walker]) -> Tuple[int, RankPoint]:
    """Advance the walkers round-robin; return the index and answer of the first to finish."""
    try:
        while True:
            for idx, walker in enumerate(walkers):
                try:
                    next(walker)
                except StopIteration as stop:
                    return idx, stop.value
    finally:
        for walker in walkers:
            walker.close()


def skip_search(ls: LevelStack, g: RankRect, axis: Axis, from_low: bool, start: RankPoint,
                accept: Accept) -> Tuple[RankPoint, SearchStats]:
    """
    One-sided skip-list search: the furthest point of g (walking away from `start`) such that
    every point up to it is accepted. `accept` must be monotone along the walk direction.
    """
    stats = SearchStats()
    walker = _walk(ls, g, axis, from_low, start, accept, stats)
    while True:
        try:
            next(walker)
        except StopIteration as stop:
            return stop.value, stats


def _half_split(ls: LevelStack, g: RankRect, ex: Extremes, line: float,
                axis: Axis) -> Tuple[Extremes, Extremes, SearchStats]:
    pre = ls.pre
    stats = SearchStats()
    if ex.is_empty:
        return EMPTY_EXTREMES, EMPTY_EXTREMES, stats
    if axis == Axis.X:
        low_end, high_end = ex.leftmost, ex.rightmost
        low_val, high_val = low_end.x, high_end.x
    else:
        low_end, high_end = ex.bottommost, ex.topmost
        low_val, high_val = low_end.y, high_end.y
    if high_val < line:
        return ex, EMPTY_EXTREMES, stats
    if low_val >= line:
        return EMPTY_EXTREMES, ex, stats

    low_stats, high_stats = SearchStats(), SearchStats()
    walkers = [
        _walk(ls, g, axis, True, _rank_point(pre, low_end), lambda p: _coord(pre, p, axis) < line, low_stats),
        _walk(ls, g, axis, False, _rank_point(pre, high_end), lambda p: _coord(pre, p, axis) >= line, high_stats),
    ]
    winner, found = _race(walkers)
    stats.absorb(low_stats)
    stats.absorb(high_stats)

    # The losing side's inner boundary is one level-0 query away.
    if winner == 0:
        last_low = found
        first_high = _first(ls.base, _restrict(g, axis, lo=_rank(found, axis) + 1), axis, True)
    else:
        first_high = found
        last_low = _first(ls.base, _restrict(g, axis, hi=_rank(found, axis) - 1), axis, False)
    stats.queries += 1

    low_rect = _restrict(g, axis, hi=_rank(last_low, axis))
    high_rect = _restrict(g, axis, lo=_rank(first_high, axis))
    other = axis.other
    low_other = _ends(ls.base, low_rect, other)
    high_other = _ends(ls.base, high_rect, other)
    stats.queries += 2

    def side(inner_lo: Point, inner_hi: Point, across: Tuple[RankPoint, RankPoint]) -> Extremes:
        a, b = _point(pre, across[0]), _point(pre, across[1])
        if axis == Axis.X:
            return Extremes(leftmost=inner_lo, rightmost=inner_hi, bottommost=a, topmost=b)
        return Extremes(leftmost=a, rightmost=b, bottommost=inner_lo, topmost=inner_hi)

    low = side(low_end, _point(pre, last_low), low_other)
    high = side(_point(pre, first_high), high_end, high_other)
    return low, high, stats


def half_split_x(ls: LevelStack, g: RankRect, ex: Extremes, lx: float) -> Tuple[Extremes, Extremes, SearchStats]:
    """Extremes of the points strictly left of x = lx and of the rest."""
    return _half_split(ls, g, ex, lx, Axis.X)


def half_split_y(ls: LevelStack, g: RankRect, ex: Extremes, ly: float) -> Tuple[Extremes, Extremes, SearchStats]:
    """Extremes of the points strictly below y = ly and of the rest."""
    return _half_split(ls, g, ex, ly, Axis.Y)


def median_split(ls: LevelStack, g: RankRect, axis: Axis, idx0: RankIndex,
                 size: Optional[int] = None) -> Tuple[int, SearchStats]:
    """
    Rank along `axis` of the median point of g (index floor((m-1)/2) in axis order).
    Step-by-step:
    1. One successor query gives the first and last point of g along the axis.
    2. Count the points of g unless the caller already knows it (`size`).
    3. Walk from both ends; each step asks idx0 how many points of g lie before (or after) the candidate.
    4. Both walks stop exactly at the median, the first to finish wins.
    """
    stats = SearchStats()
    ends = _ends(idx0, g, axis)
    stats.queries += 1
    if ends is None:
        raise InvalidParams(f"median_split on an empty rect {tuple(g)}")
    if size is None:
        size = idx0.range_count(g)
        stats.queries += 1
    m = size
    if m == 1:
        return _rank(ends[0], axis), stats
    k = (m - 1) // 2

    def before_ok(p: RankPoint) -> bool:
        stats.queries += 1
        return idx0.range_count(_restrict(g, axis, hi=_rank(p, axis) - 1)) <= k

    def after_ok(p: RankPoint) -> bool:
        stats.queries += 1
        return idx0.range_count(_restrict(g, axis, lo=_rank(p, axis) + 1)) <= m - 1 - k

    low_stats, high_stats = SearchStats(), SearchStats()
    walkers = [
        _walk(ls, g, axis, True, ends[0], before_ok, low_stats),
        _walk(ls, g, axis, False, ends[1], after_ok, high_stats),
    ]
    _, found = _race(walkers)
    stats.absorb(low_stats)
    stats.absorb(high_stats)
    return _rank(found, axis), stats
