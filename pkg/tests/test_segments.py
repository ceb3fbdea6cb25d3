import math

import numpy as np
import pytest
from sortedcontainers import SortedList

from models.segment import Orientation, OrthoSegment, Role
from solvers.segments import (brute_force_pairs, detect_intersection, gen_distinctness_segments,
                              make_endpoint_presorting, segments_intersect)
from structures.veb import VebSet
from utils.errors import InvalidParams
from utils.scenario import random_segments


def seg(i, kind, fixed, lo, hi):
    return OrthoSegment(id=i, orientation=Orientation(kind), fixed=fixed, lo=lo, hi=hi)


def detect(segments):
    return detect_intersection(make_endpoint_presorting(segments))


def assert_agrees_with_brute_force(segments):
    found = detect(segments)
    truth = brute_force_pairs(segments)
    if truth:
        assert found in truth
    else:
        assert found is None


def test_crossing_pair():
    """
    Test a horizontal and a vertical segment crossing in their interiors.
    Ensures the sweep reports the pair with the smaller id first.
    """
    assert detect([seg(1, "V", 0.5, 0.0, 1.0), seg(2, "H", 0.5, 0.0, 1.0)]) == (1, 2)


def test_touching_counts_as_intersection():
    """
    Test endpoint contact: a T-junction, a shared corner and collinear end-to-end segments.
    Ensures closed-segment semantics.
    """
    assert detect([seg(1, "H", 0.0, 0.0, 1.0), seg(2, "V", 1.0, -1.0, 1.0)]) == (1, 2)
    assert detect([seg(1, "H", 0.0, 0.0, 1.0), seg(2, "V", 0.0, 0.0, 2.0)]) == (1, 2)
    assert detect([seg(1, "H", 3.0, 0.0, 1.0), seg(2, "H", 3.0, 1.0, 2.0)]) == (1, 2)
    assert detect([seg(1, "V", 3.0, 0.0, 1.0), seg(2, "V", 3.0, 1.0, 2.0)]) == (1, 2)


def test_near_misses():
    """
    Test segments that come close but do not meet.
    Ensures no false positives from the sweep or the collinear scans.
    """
    segments = [
        seg(1, "H", 0.0, 0.0, 1.0),
        seg(2, "V", 1.5, -1.0, 1.0),
        seg(3, "H", 0.0, 2.0, 3.0),
        seg(4, "V", 0.5, 0.25, 1.0),
        seg(5, "V", 0.5, 1.5, 2.0),
    ]
    assert detect(segments) is None
    assert brute_force_pairs(segments) == []


def test_fewer_than_two_segments():
    """
    Test the degenerate inputs.
    Ensures zero or one segment never intersects.
    """
    assert detect([]) is None
    assert detect([seg(1, "H", 0.0, 0.0, 1.0)]) is None


def test_ids_must_follow_list_order():
    """
    Test that segment ids out of order are refused.
    Ensures reported pairs refer to list positions.
    """
    with pytest.raises(InvalidParams):
        make_endpoint_presorting([seg(2, "H", 0.0, 0.0, 1.0)])


def test_endpoint_presorting_is_consistent():
    """
    Test the endpoint presorting of random segments.
    Ensures both orders are sorted and pi links each endpoint to its y position.
    """
    ep = make_endpoint_presorting(random_segments(30, 1))
    xs = [ep.coordinate(r, 0) for r in ep.x_order]
    ys = [ep.coordinate(r, 1) for r in ep.y_order]
    assert xs == sorted(xs) and ys == sorted(ys)
    assert all(ep.y_order[j - 1] == ep.x_order[i] for i, j in enumerate(ep.pi))
    assert len(ep.x_order) == 60
    assert {r.role for r in ep.x_order} == {Role.LO, Role.HI}


def test_small_grid_instances_match_brute_force():
    """
    Test detection on many small integer-grid instances, where touching and overlaps are common.
    Ensures the answer is a real intersecting pair, or None exactly when no pair meets.
    """
    hits = 0
    for seed in range(300):
        segments = random_segments(int(2 + seed % 6), seed, grid=4)
        assert_agrees_with_brute_force(segments)
        hits += bool(brute_force_pairs(segments))
    assert 0 < hits < 300


def test_random_instances_match_brute_force():
    """
    Test detection on sparse random instances of growing size.
    Ensures agreement with the quadratic oracle away from degenerate configurations.
    """
    for n in (2, 5, 20, 60):
        for seed in range(10):
            segments = [OrthoSegment(id=s.id, orientation=s.orientation, fixed=s.fixed,
                                     lo=s.lo, hi=s.lo + (s.hi - s.lo) / n)
                        for s in random_segments(n, seed)]
            assert_agrees_with_brute_force(segments)


def test_segments_intersect_is_symmetric():
    """
    Test the pairwise closed-segment test on grid segments.
    Ensures argument order never matters.
    """
    segments = random_segments(40, 2, grid=3)
    for a in segments:
        for b in segments:
            assert segments_intersect(a, b) == segments_intersect(b, a)


def test_distinctness_family():
    """
    Test element distinctness through the segment family.
    Ensures an intersection exists exactly when two values are equal.
    """
    rng = np.random.default_rng(4)
    for _ in range(30):
        values = rng.integers(0, 12, size=8).tolist()
        found = detect(gen_distinctness_segments(values))
        assert (found is not None) == (len(set(values)) < len(values))
        if found is not None:
            i, j = found
            assert values[i - 1] == values[j - 1]
    assert detect(gen_distinctness_segments(list(range(100)))) is None


def test_veb_matches_sorted_list():
    """
    Test VebSet against a SortedList under a random mix of inserts, deletes and neighbour queries.
    Ensures membership, successor and predecessor answers are exact.
    """
    rng = np.random.default_rng(8)
    universe = 2 ** 10
    veb, oracle = VebSet(universe), SortedList()
    for _ in range(3000):
        key = int(rng.integers(0, universe))
        action = rng.integers(0, 4)
        if action == 0:
            assert veb.insert(key) == (key not in oracle)
            if key not in oracle:
                oracle.add(key)
        elif action == 1:
            assert veb.delete(key) == (key in oracle)
            if key in oracle:
                oracle.remove(key)
        else:
            assert veb.member(key) == (key in oracle)
            i = oracle.bisect_right(key)
            assert veb.succ(key) == (oracle[i] if i < len(oracle) else None)
            i = oracle.bisect_left(key)
            assert veb.pred(key) == (oracle[i - 1] if i > 0 else None)
        assert veb.min == (oracle[0] if oracle else None)
        assert veb.max == (oracle[-1] if oracle else None)
    assert list(veb) == list(oracle)
    assert len(veb) == len(oracle)


def test_veb_small_universes():
    """
    Test VebSet on universes 2 and 4, where clusters bottom out.
    Ensures the base cases insert, delete and search correctly.
    """
    tiny = VebSet(2)
    assert tiny.is_empty and tiny.succ(0) is None
    tiny.insert(1)
    tiny.insert(0)
    assert tiny.succ(0) == 1 and tiny.pred(1) == 0
    tiny.delete(0)
    assert list(tiny) == [1]
    four = VebSet(4)
    for key in (3, 0, 2):
        four.insert(key)
    assert list(four) == [0, 2, 3]
    assert four.succ(0) == 2 and four.pred(2) == 0
    four.delete(2)
    assert four.succ(0) == 3


def test_veb_rejects_bad_universe_and_keys():
    """
    Test VebSet argument checks.
    Ensures non-power-of-two universes and out-of-range keys are refused.
    """
    with pytest.raises(InvalidParams):
        VebSet(12)
    with pytest.raises(InvalidParams):
        VebSet(1)
    with pytest.raises(InvalidParams):
        VebSet(8).insert(8)


def test_veb_depth_is_doubly_logarithmic():
    """
    Test the recursion depth of VebSet operations.
    Ensures no operation descends more than ceil(log2 log2 U) + 2 levels.
    """
    rng = np.random.default_rng(3)
    for exponent in (4, 10, 16):
        universe = 2 ** exponent
        veb = VebSet(universe)
        for key in rng.integers(0, universe, size=500).tolist():
            veb.insert(key)
            veb.succ(key)
            veb.pred(key)
        for key in rng.integers(0, universe, size=200).tolist():
            veb.delete(key)
        assert veb.max_depth <= math.ceil(math.log2(exponent)) + 2
