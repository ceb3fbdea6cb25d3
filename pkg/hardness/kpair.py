# kpair.py: Sorting hidden in closest pairs, and the brute-force pair-distance oracles.

import math
from typing import List, Sequence, Tuple

import numpy as np

from models.hardness import PairDistance
from utils.errors import EpsTooLarge, InvalidParams

Coords = Tuple[float, float]

MAX_EPS = 0.25


def gen_kpair_family(values: Sequence[float], eps: float = MAX_EPS) -> List[Coords]:
    """
    Two points per value on the diagonal from (0, 0) to (n, n).
    The pair of value i sits around the mark (i - 0.5, i - 0.5), split along the diagonal so that
    its two points are eps * value apart; values lie in (0, 1]. Output order: p_1, p_1', p_2, p_2', ...
    """
    if eps > MAX_EPS:
        raise EpsTooLarge(f"eps={eps} exceeds {MAX_EPS}; cross-pair distances could undercut intra-pair ones")
    if eps <= 0:
        raise InvalidParams(f"eps must be positive, got {eps}")
    points: List[Coords] = []
    for i, v in enumerate(values, start=1):
        if not 0.0 < v <= 1.0:
            raise InvalidParams(f"k-pair values must lie in (0, 1], got {v}; 0 would make a pair coincide")
        mark = i - 0.5
        h = eps * v / (2.0 * math.sqrt(2.0))
        points.append((mark - h, mark - h))
        points.append((mark + h, mark + h))
    return points


def _all_pairs(points: Sequence[Coords]) -> List[PairDistance]:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    i, j = np.triu_indices(len(pts), k=1)
    dist = np.hypot(pts[i, 0] - pts[j, 0], pts[i, 1] - pts[j, 1])
    order = np.lexsort((j, i, dist))
    return [PairDistance(float(dist[o]), int(i[o]), int(j[o])) for o in order]


def ordered_k_closest(points: Sequence[Coords], k: int) -> List[PairDistance]:
    """The k smallest pairwise distances, ties broken by (i, j); positions are 0-based."""
    n = len(points)
    total = n * (n - 1) // 2
    if not 0 <= k <= total:
        raise InvalidParams(f"k must lie in [0, {total}] for {n} points, got {k}")
    return _all_pairs(points)[:k]


def decremental_closest_pairs(points: Sequence[Coords]) -> List[PairDistance]:
    """
    Repeatedly take the closest pair among the remaining points and delete both.
    The closest remaining pair is always the first pair in global distance order whose two points
    are both still alive.
    """
    alive = [True] * len(points)
    taken: List[PairDistance] = []
    for pair in _all_pairs(points):
        if alive[pair.i] and alive[pair.j]:
            alive[pair.i] = alive[pair.j] = False
            taken.append(pair)
    return taken
