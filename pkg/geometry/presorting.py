# presorting.py: Construction and validation of presortings, and the rank-space view of regions.

from typing import Iterable, List, Sequence, Tuple, Union

from models.point import Point
from models.presorting import Presorting
from models.rank import EMPTY_EXTREMES, EMPTY_RECT, Extremes, RankRect
from utils.errors import DuplicateCoordinate, InvalidParams, NotSorted, PermutationMismatch

Coords = Tuple[float, float]


def _coords(p: Union[Point, Coords]) -> Coords:
    return (p.x, p.y) if isinstance(p, Point) else (float(p[0]), float(p[1]))


def _check_strict(points: Sequence[Coords], axis: int, name: str) -> None:
    for i in range(1, len(points)):
        prev, cur = points[i - 1][axis], points[i][axis]
        if cur == prev:
            raise DuplicateCoordinate(f"{name}[{i - 1}] and {name}[{i}] share coordinate {cur}")
        if cur < prev:
            raise NotSorted(f"{name} not strictly increasing at position {i}: {prev} then {cur}")


def validate_presorting(a_x: Sequence[Union[Point, Coords]], a_y: Sequence[Union[Point, Coords]],
                        pi: Sequence[int]) -> Presorting:
    """
    Validate a candidate presorting and return it with ids stamped to x-order positions.
    Step-by-step:
    1. Check the three sequences have one common length n >= 1.
    2. Check pi is a bijection on [1..n].
    3. Check a_x strictly increasing in x and a_y strictly increasing in y.
    4. Check a_x[i] and a_y[pi[i]] are the same point.
    Raises NotSorted, DuplicateCoordinate or PermutationMismatch.
    """
    n = len(a_x)
    if n < 1 or len(a_y) != n or len(pi) != n:
        raise InvalidParams(f"Presorting needs equal non-zero lengths, got {len(a_x)}, {len(a_y)}, {len(pi)}")
    # Step 2: bijection
    seen = [False] * (n + 1)
    for i, j in enumerate(pi):
        if not 1 <= j <= n or seen[j]:
            raise PermutationMismatch(f"pi is not a permutation of 1..{n} (entry {i}: {j})")
        seen[j] = True
    # Step 3: strict order along both axes
    xs = [_coords(p) for p in a_x]
    ys = [_coords(p) for p in a_y]
    _check_strict(xs, 0, "a_x")
    _check_strict(ys, 1, "a_y")
    # Step 4: both arrays denote the same point
    for i, j in enumerate(pi):
        if xs[i] != ys[j - 1]:
            raise PermutationMismatch(f"a_x[{i}]={xs[i]} differs from a_y[pi[{i}]-1]={ys[j - 1]}")
    stamped = [Point(x=x, y=y, id=i + 1) for i, (x, y) in enumerate(xs)]
    by_y: List[Point] = [None] * n  # type: ignore[list-item]
    for i, j in enumerate(pi):
        by_y[j - 1] = stamped[i]
    return Presorting(a_x=stamped, a_y=by_y, pi=list(pi))


def presort_permutation(points: Sequence[Union[Point, Coords]]) -> Tuple[List[int], List[int]]:
    """Stable x-order and y-order of list positions (0-based); ties keep list order."""
    coords = [_coords(p) for p in points]
    x_order = sorted(range(len(coords)), key=lambda i: coords[i][0])
    y_order = sorted(range(len(coords)), key=lambda i: coords[i][1])
    return x_order, y_order


def make_presorting(points: Iterable[Union[Point, Coords]]) -> Presorting:
    """
    Sort a point set both ways and build its presorting.
    Uses comparison sorting and therefore never runs on a measured path.
    Raises DuplicateCoordinate if two points share an x or a y.
    """
    coords = [_coords(p) for p in points]
    if not coords:
        raise InvalidParams("make_presorting needs at least one point")
    x_order, y_order = presort_permutation(coords)
    a_x = [coords[i] for i in x_order]
    a_y = [coords[i] for i in y_order]
    y_pos = {orig: rank for rank, orig in enumerate(y_order, start=1)}
    pi = [y_pos[orig] for orig in x_order]
    return validate_presorting(a_x, a_y, pi)


def gamma(ex: Extremes, pre: Presorting) -> RankRect:
    """The minimum rank rectangle of a region, given its four extremes (EMPTY_RECT if empty)."""
    if ex.is_empty:
        return EMPTY_RECT
    return RankRect(ex.leftmost.id, ex.rightmost.id, pre.y_index(ex.bottommost), pre.y_index(ex.topmost))


def extremes_of(points: Sequence[Point]) -> Extremes:
    """Linear-scan extremes of an explicit point list."""
    if not points:
        return EMPTY_EXTREMES
    return Extremes(
        leftmost=min(points, key=lambda p: p.x),
        rightmost=max(points, key=lambda p: p.x),
        bottommost=min(points, key=lambda p: p.y),
        topmost=max(points, key=lambda p: p.y),
    )
