# hull.py: Andrew's monotone chain over x-sorted input, strict hull vertices only.

from typing import Callable, List, Sequence, Tuple

from geometry.predicates import orient2d

Coords = Tuple[float, float]
Orient = Callable[[Coords, Coords, Coords], int]


def monotone_chain(points: Sequence[Coords], order: Sequence[int],
                   orient: Orient = orient2d) -> Tuple[List[int], List[int]]:
    """
    Lower and upper hull chains of points visited in (x, y) order.
    Returns (lower, upper) as index lists running left to right; collinear points are dropped.
    `orient` is the orientation test, replaceable by an instrumented one.
    """
    def chain(turn: int) -> List[int]:
        out: List[int] = []
        for i in order:
            while len(out) >= 2 and orient(points[out[-2]], points[out[-1]], points[i]) * turn <= 0:
                out.pop()
            out.append(i)
        return out

    return chain(1), chain(-1)


def convex_hull(points: Sequence[Coords], presorted: bool = False) -> List[int]:
    """
    Counterclockwise strict hull vertices (indices), starting at the lowest-x point.
    Sorts unless `presorted` says the list is already in (x, y) order.
    """
    n = len(points)
    if n <= 2:
        return list(range(n))
    order = list(range(n)) if presorted else sorted(range(n), key=lambda i: points[i])
    lower, upper = monotone_chain(points, order)
    return lower[:-1] + upper[::-1][:-1]
