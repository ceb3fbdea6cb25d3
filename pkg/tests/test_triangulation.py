import numpy as np
import pytest

from geometry.hull import convex_hull
from models.counters import OpCounter
from models.triangulation import Triangulation
from solvers.triangulation import triangulate_xsorted
from utils.errors import Collinear, NotSorted, TooFew
from utils.metrics import fit_trend
from utils.scenario import random_presorting
from utils.validation import verify_triangulation


def coords_of(pre):
    return [(p.x, p.y) for p in pre.a_x]


def test_single_triangle():
    """
    Test three points.
    Ensures one counterclockwise triangle and three hull edges.
    """
    t = triangulate_xsorted([(0.0, 0.0), (1.0, -1.0), (2.0, 0.0)])
    assert t.triangles == [(1, 2, 3)]
    assert t.hull_size == 3


def test_convex_position_gives_n_minus_two():
    """
    Test points on a convex and on a concave arc.
    Ensures n - 2 triangles when every point is on the hull.
    """
    for sign in (1.0, -1.0):
        pts = [(float(i), sign * float(i * i)) for i in range(12)]
        t = triangulate_xsorted(pts)
        assert len(t.triangles) == 10
        assert verify_triangulation(pts, t) == []


@pytest.mark.parametrize("n", [3, 4, 5, 10, 50, 300])
def test_random_sets_verify_clean(n):
    """
    Test random x-sorted sets.
    Ensures 2n - 2 - h counterclockwise triangles, no crossings, full hull coverage.
    """
    for seed in range(6):
        pre = random_presorting(n, seed)
        pts = coords_of(pre)
        t = triangulate_xsorted(pre.a_x)
        assert len(t.triangles) == 2 * n - 2 - len(convex_hull(pts))
        assert t.hull_size == len(convex_hull(pts))
        assert verify_triangulation(pts, t) == []


def test_rejects_invalid_input():
    """
    Test the triangulation error cases.
    Ensures too few, unsorted and collinear inputs are refused.
    """
    with pytest.raises(TooFew):
        triangulate_xsorted([(0.0, 0.0), (1.0, 1.0)])
    with pytest.raises(NotSorted):
        triangulate_xsorted([(0.0, 0.0), (2.0, 1.0), (1.0, 5.0)])
    with pytest.raises(NotSorted):
        triangulate_xsorted([(0.0, 0.0), (0.0, 1.0), (1.0, 5.0)])
    with pytest.raises(Collinear):
        triangulate_xsorted([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)])


def test_orientation_tests_grow_linearly():
    """
    Test the number of orientation tests at n = 2000.
    Ensures the construction stays within a constant number of tests per point.
    """
    for n in (200, 2000):
        counter = OpCounter()
        triangulate_xsorted(random_presorting(n, 1).a_x, counter)
        assert 0 < counter.cmp <= 12 * n


def test_verify_flags_broken_triangulations():
    """
    Test verify_triangulation on a missing triangle and a flipped one.
    Ensures count and orientation violations are reported.
    """
    pre = random_presorting(20, 3)
    pts = coords_of(pre)
    t = triangulate_xsorted(pre.a_x)
    missing = Triangulation(vertex_ids=t.vertex_ids, triangles=t.triangles[1:])
    assert {"count", "area"} <= {v.code for v in verify_triangulation(pts, missing)}
    i, j, k = t.triangles[0]
    flipped = Triangulation(vertex_ids=t.vertex_ids, triangles=[(i, k, j)] + t.triangles[1:])
    assert "orientation" in {v.code for v in verify_triangulation(pts, flipped)}


def test_orientation_tests_per_point_stay_flat():
    """
    Test orientation tests per point across sizes 2^8 to 2^12.
    Ensures the per-point count does not drift upward: the last/first ratio stays within 1.2.
    """
    sizes = [2 ** 8, 2 ** 10, 2 ** 12]
    per_n = []
    for n in sizes:
        counts = []
        for seed in range(4):
            counter = OpCounter()
            triangulate_xsorted(random_presorting(n, seed).a_x, counter)
            counts.append(counter.cmp)
        per_n.append(float(np.mean(counts)) / n)
    assert fit_trend(sizes, per_n)["final_first_ratio"] <= 1.2
