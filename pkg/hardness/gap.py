# gap.py: The thin-column family for the largest-gap reduction and a brute-force empty-circle oracle.

import hashlib
from itertools import combinations
from typing import List, Sequence, Tuple

import numpy as np

from geometry.hull import convex_hull
from utils.errors import DegenerateHull, InvalidParams, ValueSeparationViolated

Coords = Tuple[float, float]

MAX_EPS = 0.001
EPS_MODES = ("hash", "rank")


def _hash_eps(v: float) -> float:
    digest = hashlib.blake2b(repr(float(v)).encode(), digest_size=8).digest()
    frac = int.from_bytes(digest, "big") / 2.0 ** 64
    return MAX_EPS * (0.1 + 0.8 * frac)


def gen_gap_family(values: Sequence[float], eps_mode: str = "hash") -> List[Coords]:
    """
    Two points (-eps_v, v) and (+eps_v, v) per value, with 0 < eps_v < 0.001.
    eps_mode "hash" derives eps_v from v itself; "rank" derives it from the list position, which
    fixes the x-order for every instance of one size.
    Raises ValueSeparationViolated when two values are less than 1 apart.
    """
    if eps_mode not in EPS_MODES:
        raise InvalidParams(f"eps_mode must be one of {EPS_MODES}, got {eps_mode!r}")
    ordered = sorted(values)
    for a, b in zip(ordered, ordered[1:]):
        if b - a < 1:
            raise ValueSeparationViolated(f"Values {a} and {b} differ by less than 1")
    n = len(values)
    points: List[Coords] = []
    for i, v in enumerate(values):
        eps = _hash_eps(v) if eps_mode == "hash" else MAX_EPS * (i + 1) / (n + 1)
        points.append((-eps, float(v)))
        points.append((eps, float(v)))
    return points


def largest_gap(values: Sequence[float]) -> float:
    if len(values) < 2:
        raise InvalidParams("largest_gap needs at least two values")
    return float(np.max(np.diff(np.sort(np.asarray(values, dtype=float)))))


def _inside(hull: np.ndarray, centers: np.ndarray, tol: float) -> np.ndarray:
    """Mask of centers inside the counterclockwise polygon `hull` (boundary included)."""
    mask = np.ones(len(centers), dtype=bool)
    for a, b in zip(hull, np.roll(hull, -1, axis=0)):
        e = b - a
        mask &= e[0] * (centers[:, 1] - a[1]) - e[1] * (centers[:, 0] - a[0]) >= -tol
    return mask


def max_empty_circle_brute(points: Sequence[Coords]) -> Tuple[Coords, float]:
    """
    Largest circle centred in the convex hull with no point strictly inside.
    Step-by-step:
    1. Candidate centres: hull vertices, circumcentres of point triples lying in the hull, and
       crossings of pairwise perpendicular bisectors with hull edges.
    2. Each candidate's radius is its distance to the nearest point.
    3. The candidate with the largest radius wins.
    Raises DegenerateHull for fewer than three points or a hull without interior.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 3:
        raise DegenerateHull(f"Empty circle needs at least 3 points, got {len(pts)}")
    hull_idx = convex_hull([(float(x), float(y)) for x, y in pts])
    if len(hull_idx) < 3:
        raise DegenerateHull("All points are collinear")
    hull = pts[hull_idx]
    scale = float(np.max(np.abs(pts))) or 1.0
    tol = 1e-12 * scale * scale
    candidates = [hull]
    # Step 1a: circumcentres
    tri = np.array(list(combinations(range(len(pts)), 3)), dtype=np.int64)
    a, b, c = pts[tri[:, 0]], pts[tri[:, 1]], pts[tri[:, 2]]
    d = 2 * (a[:, 0] * (b[:, 1] - c[:, 1]) + b[:, 0] * (c[:, 1] - a[:, 1]) + c[:, 0] * (a[:, 1] - b[:, 1]))
    ok = np.abs(d) > tol
    a2, b2, c2 = (a ** 2).sum(1), (b ** 2).sum(1), (c ** 2).sum(1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ux = (a2 * (b[:, 1] - c[:, 1]) + b2 * (c[:, 1] - a[:, 1]) + c2 * (a[:, 1] - b[:, 1])) / d
        uy = (a2 * (c[:, 0] - b[:, 0]) + b2 * (a[:, 0] - c[:, 0]) + c2 * (b[:, 0] - a[:, 0])) / d
    centres = np.column_stack([ux, uy])[ok]
    candidates.append(centres[_inside(hull, centres, tol)])
    # Step 1b: bisectors against hull edges
    i, j = np.triu_indices(len(pts), k=1)
    w = pts[j] - pts[i]
    rhs = (pts[j] ** 2).sum(1) - (pts[i] ** 2).sum(1)
    for s, e in zip(hull, np.roll(hull, -1, axis=0)):
        edge = e - s
        denom = 2 * (w @ edge)
        valid = np.abs(denom) > tol
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (rhs - 2 * (w @ s)) / denom
        valid &= (t >= 0) & (t <= 1)
        candidates.append(s + t[valid, None] * edge)
    # Steps 2-3: clearance
    cand = np.vstack(candidates)
    radii = np.full(len(cand), np.inf)
    for start in range(0, len(cand), 4096):
        block = cand[start:start + 4096]
        dist = np.hypot(block[:, None, 0] - pts[None, :, 0], block[:, None, 1] - pts[None, :, 1])
        radii[start:start + 4096] = dist.min(axis=1)
    best = int(np.argmax(radii))
    return (float(cand[best, 0]), float(cand[best, 1])), float(radii[best])
