# onion.py: The onion-layer family (fixed x- and y-order, (n/4)! distinct decompositions) and hull peeling.

from itertools import permutations
from typing import List, Sequence, Tuple

from geometry.hull import convex_hull
from geometry.predicates import orient2d
from models.hardness import OnionDecomposition, OnionFamilyInstance
from utils.errors import InfeasiblePlacement, InvalidParams
from utils.logging import get_logger

logger = get_logger("Onion")

Coords = Tuple[float, float]


def _spaced(a: Coords, b: Coords, m: int) -> List[Coords]:
    """m points equally spaced strictly inside segment ab, listed from a to b."""
    return [(a[0] + (b[0] - a[0]) * k / (m + 1), a[1] + (b[1] - a[1]) * k / (m + 1)) for k in range(1, m + 1)]


def q_segment(j: int) -> Tuple[Coords, Coords]:
    """Segment carrying the j-th point of Q (1-based)."""
    return (2.0 * j + 1, -2.0 * j - 1), (2.0 * j + 2, -2.0 * j)


def _clip(start: Coords, end: Coords, hull: Sequence[Coords]) -> Tuple[float, float]:
    """Parameter interval of segment start->end inside the counterclockwise convex polygon `hull`."""
    lo, hi = 0.0, 1.0
    dx, dy = end[0] - start[0], end[1] - start[1]
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        ex, ey = b[0] - a[0], b[1] - a[1]
        # inside iff cross(e, p - a) >= 0 with p = start + t * d
        f0 = ex * (start[1] - a[1]) - ey * (start[0] - a[0])
        f1 = ex * dy - ey * dx
        if f1 == 0:
            if f0 < 0:
                return 1.0, 0.0
            continue
        t = -f0 / f1
        if f1 > 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    return lo, hi


def gen_onion_family(n: int, sigma: Sequence[int]) -> OnionFamilyInstance:
    """
    Build the family member for permutation sigma.
    Step-by-step:
    1. P1, P2, P3 get n/4 equally spaced points on their fixed open segments.
    2. Q is placed in the order j_i = sigma^-1(m - i + 1): the first at the far end of its segment,
       each later one at the midpoint of its segment clipped to the hull of the previous layer.
    3. After each placement the current layer (the hull of the remaining points) is removed.
    The layer holding q_j is then m - sigma(j) (0-based).
    """
    if n < 8 or n % 4 != 0:
        raise InvalidParams(f"Onion family needs n >= 8 divisible by 4, got {n}")
    m = n // 4
    if sorted(sigma) != list(range(1, m + 1)):
        raise InvalidParams(f"sigma must be a permutation of 1..{m}, got {list(sigma)}")
    # Step 1: fixed groups
    p1 = _spaced((-2.0, -2.0 * n - 6), (0.0, -2.0 * n - 4), m)
    p2 = _spaced((0.0, 0.0), (2.0, -2.0), m)
    p3 = _spaced((2.0 * n + 2, -2.0 * n - 2), (2.0 * n + 4, -2.0 * n - 4), m)
    inverse = {v: j for j, v in enumerate(sigma, start=1)}
    q: List[Coords] = [None] * m  # type: ignore[list-item]
    remaining: List[Coords] = p1 + p2 + p3
    previous_layer: List[Coords] = []
    # Steps 2-3: Q in layer order
    for i in range(1, m + 1):
        j = inverse[m - i + 1]
        start, end = q_segment(j)
        if i == 1:
            point = end
        else:
            lo, hi = _clip(start, end, previous_layer)
            if not hi > lo:
                raise InfeasiblePlacement(f"Segment of q_{j} misses the hull of layer {i - 1}")
            t = (lo + hi) / 2
            point = (start[0] + (end[0] - start[0]) * t, start[1] + (end[1] - start[1]) * t)
        q[j - 1] = point
        remaining.append(point)
        hull = convex_hull(remaining)
        previous_layer = [remaining[v] for v in hull]
        dropped = set(hull)
        remaining = [p for v, p in enumerate(remaining) if v not in dropped]
    return OnionFamilyInstance(points=p1 + p2 + p3 + q, sigma=list(sigma))


def peel_hull_layers(points: Sequence[Coords]) -> List[List[int]]:
    """Hull layers as 0-based positions, each layer counterclockwise, outermost first."""
    alive = list(range(len(points)))
    layers: List[List[int]] = []
    while alive:
        sub = [points[v] for v in alive]
        order = sorted(range(len(sub)), key=lambda i: sub[i])
        hull = convex_hull([sub[i] for i in order], presorted=True)
        layer = [alive[order[h]] for h in hull]
        layers.append(layer)
        dropped = set(layer)
        alive = [v for v in alive if v not in dropped]
    return layers


def onion_decompose(points: Sequence[Coords]) -> OnionDecomposition:
    """The combinatorial onion layer decomposition by repeated hull removal."""
    return OnionDecomposition(layers=[frozenset(layer) for layer in peel_hull_layers(points)])


def layer_is_convex(points: Sequence[Coords], layer: Sequence[int]) -> bool:
    """True when the layer, in the given order, turns strictly left at every vertex."""
    k = len(layer)
    if k < 3:
        return True
    return all(orient2d(points[layer[i]], points[layer[(i + 1) % k]], points[layer[(i + 2) % k]]) > 0
               for i in range(k))


def count_distinct_onion(n: int) -> int:
    """Number of distinct decompositions over every sigma of [n/4]."""
    if n < 8 or n % 4 != 0:
        raise InvalidParams(f"Onion family needs n >= 8 divisible by 4, got {n}")
    m = n // 4
    seen = set()
    for sigma in permutations(range(1, m + 1)):
        instance = gen_onion_family(n, sigma)
        seen.add(tuple(onion_decompose(instance.points).layers))
    logger.info(f"Onion family n={n}: {len(seen)} distinct decompositions over {m}! permutations")
    return len(seen)
