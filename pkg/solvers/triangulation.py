from typing import List, Optional, Sequence, Tuple, Union

from geometry.hull import monotone_chain
from geometry.predicates import orient2d
from models.counters import OpCounter
from models.point import Point
from models.triangulation import Triangulation
from utils.errors import Collinear, NotSorted, TooFew
from utils.logging import get_logger

# triangulation.py: Linear-time triangulation of an x-sorted point set.
# The x-monotone path through the points splits the hull into faces that each have one hull
# edge on one side and a piece of the path on the other; every such face is a monotone polygon.

logger = get_logger("Triangulation")

Coords = Tuple[float, float]


class _CountingOrient:
    """Orientation test that counts its calls and rejects collinear triples."""

    def __init__(self, counter: Optional[OpCounter]):
        self.counter = counter

    def __call__(self, a: Coords, b: Coords, c: Coords) -> int:
        if self.counter is not None:
            self.counter.cmp += 1
        sign = orient2d(a, b, c)
        if sign == 0:
            raise Collinear(f"Points {a}, {b}, {c} are collinear")
        return sign


def _face(pts: Sequence[Coords], a: int, b: int, interior_above: bool, orient: _CountingOrient,
          counter: Optional[OpCounter]) -> List[Tuple[int, int, int]]:
    """
    Triangulate the face bounded by the path a..b and the hull edge (a, b).
    The path is the only chain with inner vertices, so the stack sweep reduces to popping while
    the diagonal to the second stack entry stays inside, then fanning the final vertex.
    """
    want = 1 if interior_above else -1
    triangles = []
    stack = [a, a + 1]
    for v in range(a + 2, b):
        while len(stack) >= 2 and orient(pts[stack[-2]], pts[stack[-1]], pts[v]) == want:
            triangles.append((stack[-2], stack[-1], v))
            stack.pop()
            if counter is not None:
                counter.lookup += 1
        stack.append(v)
    for i in range(len(stack) - 1):
        triangles.append((stack[i], stack[i + 1], b))
    return triangles


def triangulate_xsorted(a_x: Sequence[Union[Point, Coords]], counter: Optional[OpCounter] = None) -> Triangulation:
    """
    Triangulate points given in strictly increasing x order.
    Step-by-step:
    1. Lower and upper hull by the monotone chain over the given order.
    2. Between consecutive lower hull vertices, triangulate the face above the hull edge and below the path.
    3. Between consecutive upper hull vertices, triangulate the face below the hull edge and above the path.
    4. Orient every triangle counterclockwise; ids are 1-based positions in a_x.
    Raises TooFew for fewer than three points and Collinear when a tested triple is collinear.
    """
    pts: List[Coords] = [(p.x, p.y) if isinstance(p, Point) else (float(p[0]), float(p[1])) for p in a_x]
    n = len(pts)
    if n < 3:
        raise TooFew(f"Triangulation needs at least 3 points, got {n}")
    for i in range(1, n):
        if not pts[i - 1][0] < pts[i][0]:
            raise NotSorted(f"Points not strictly increasing in x at position {i}")
    orient = _CountingOrient(counter)
    # Step 1: hull chains
    lower, upper = monotone_chain(pts, range(n), orient)
    raw: List[Tuple[int, int, int]] = []
    # Steps 2-3: faces between hull and path
    for chain, interior_above in ((lower, False), (upper, True)):
        for a, b in zip(chain, chain[1:]):
            if b > a + 1:
                raw.extend(_face(pts, a, b, interior_above, orient, counter))
    # Step 4: orientation
    triangles = []
    for i, j, k in raw:
        if orient(pts[i], pts[j], pts[k]) < 0:
            j, k = k, j
        triangles.append((i + 1, j + 1, k + 1))
    hull = lower[:-1] + upper[::-1][:-1]
    hull_edges = [(hull[i] + 1, hull[(i + 1) % len(hull)] + 1) for i in range(len(hull))]
    logger.debug(f"Triangulated n={n} into {len(triangles)} triangles, hull size {len(hull)}")
    return Triangulation(vertex_ids=list(range(1, n + 1)), triangles=triangles, hull_edges=hull_edges)
