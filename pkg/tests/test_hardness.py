import math
from itertools import permutations

import numpy as np
import pytest

from geometry.presorting import make_presorting, presort_permutation
from hardness.gap import gen_gap_family, largest_gap, max_empty_circle_brute
from hardness.kpair import decremental_closest_pairs, gen_kpair_family, ordered_k_closest
from hardness.onion import (count_distinct_onion, gen_onion_family, layer_is_convex, onion_decompose,
                            peel_hull_layers, q_segment)
from utils.errors import DegenerateHull, EpsTooLarge, InvalidParams, ValueSeparationViolated


def separated_values(n, seed):
    """n values at least 1 apart, with one gap clearly larger than the rest."""
    rng = np.random.default_rng(seed)
    steps = rng.uniform(1.0, 3.0, size=n - 1)
    steps[rng.integers(0, n - 1)] = 7.0
    values = np.concatenate([[0.0], np.cumsum(steps)])
    return [float(v) for v in rng.permutation(values)]


@pytest.mark.parametrize("n,expected", [(8, 2), (12, 6), (16, 24)])
def test_onion_family_distinct_decompositions(n, expected):
    """
    Test the number of distinct onion decompositions over every permutation.
    Ensures (n/4)! members give (n/4)! different decompositions.
    """
    assert count_distinct_onion(n) == expected


def test_onion_family_shares_one_presorting():
    """
    Test that every member of the onion family sorts the same way along both axes.
    Ensures the family cannot be told apart by its presorting.
    """
    orders = {tuple(map(tuple, presort_permutation(gen_onion_family(12, sigma).points)))
              for sigma in permutations(range(1, 4))}
    assert len(orders) == 1


def test_onion_layers_have_one_point_per_group():
    """
    Test the layer structure of an onion family member.
    Ensures every layer is a convex quadrilateral and q_j sits in layer n/4 - sigma(j).
    """
    n, sigma = 16, [3, 1, 4, 2]
    m = n // 4
    instance = gen_onion_family(n, sigma)
    layers = peel_hull_layers(instance.points)
    assert len(layers) == m
    for layer in layers:
        assert len(layer) == 4
        assert layer_is_convex(instance.points, layer)
        assert sorted(v // m for v in layer) == [0, 1, 2, 3]
    decomposition = onion_decompose(instance.points)
    for j in range(1, m + 1):
        assert decomposition.layer_of(3 * m + j - 1) == m - sigma[j - 1]


def test_onion_points_stay_on_their_segments():
    """
    Test that each q_j lies on its own segment.
    Ensures placements never leave the coordinate ranges that fix the presorting.
    """
    n, m = 20, 5
    instance = gen_onion_family(n, [2, 5, 1, 4, 3])
    for j in range(1, m + 1):
        (x0, y0), (x1, y1) = q_segment(j)
        qx, qy = instance.points[3 * m + j - 1]
        assert x0 <= qx <= x1 and y0 <= qy <= y1
        assert math.isclose(qy - qx, y0 - x0, abs_tol=1e-9)


def test_onion_rejects_bad_parameters():
    """
    Test the onion generator's argument checks.
    Ensures sizes not divisible by 4 and non-permutations are refused.
    """
    with pytest.raises(InvalidParams):
        gen_onion_family(10, [1, 2])
    with pytest.raises(InvalidParams):
        gen_onion_family(8, [1, 1])
    with pytest.raises(InvalidParams):
        count_distinct_onion(4)


def test_kpair_closest_pairs_sort_values():
    """
    Test that the n closest pairs of the k-pair family come out in value order.
    Ensures an ordered closest-pairs answer sorts the hidden values.
    """
    rng = np.random.default_rng(2)
    values = [float(v) for v in rng.random(25)]
    points = gen_kpair_family(values)
    pairs = ordered_k_closest(points, len(values))
    assert [values[p.i // 2] for p in pairs] == sorted(values)
    assert all(p.j == p.i + 1 for p in pairs)
    assert [p.distance for p in pairs] == pytest.approx([0.25 * v for v in sorted(values)])


def test_kpair_family_shares_one_presorting():
    """
    Test that two k-pair instances of one size sort identically.
    Ensures the hidden values do not leak through the presorting.
    """
    a = gen_kpair_family([0.1, 0.9, 0.5])
    b = gen_kpair_family([0.7, 0.2, 0.3])
    assert presort_permutation(a) == presort_permutation(b)


def test_decremental_closest_pairs_recovers_order():
    """
    Test repeated deletion of the closest pair on the k-pair family.
    Ensures the pairs are removed in increasing value order.
    """
    values = [0.4, 0.05, 0.8, 0.3]
    taken = decremental_closest_pairs(gen_kpair_family(values))
    assert [p.i // 2 for p in taken] == [1, 3, 0, 2]


def test_kpair_rejects_bad_eps_and_values():
    """
    Test the k-pair argument checks.
    Ensures eps above 1/4, non-positive eps and values outside (0, 1] are refused,
    and the smallest positive values still give presortable instances.
    """
    with pytest.raises(EpsTooLarge):
        gen_kpair_family([0.5], eps=0.3)
    with pytest.raises(InvalidParams):
        gen_kpair_family([0.5], eps=0.0)
    with pytest.raises(InvalidParams):
        gen_kpair_family([1.5])
    with pytest.raises(InvalidParams):
        gen_kpair_family([0.5, 0.0])
    assert len(make_presorting(gen_kpair_family([1.0, 1e-9])).a_x) == 4
    with pytest.raises(InvalidParams):
        ordered_k_closest([(0.0, 0.0), (1.0, 1.0)], 2)


def test_gap_family_circle_matches_largest_gap():
    """
    Test the empty-circle oracle on the thin-column family.
    Ensures the largest empty circle's diameter equals the largest gap within 1%.
    """
    for seed, mode in ((0, "rank"), (1, "hash"), (2, "rank")):
        values = separated_values(10, seed)
        centre, radius = max_empty_circle_brute(gen_gap_family(values, eps_mode=mode))
        gap = largest_gap(values)
        assert abs(2 * radius - gap) / gap < 0.01
        assert abs(centre[0]) < 0.001


def test_gap_family_rank_mode_fixes_x_order():
    """
    Test that rank-mode instances of one size share their x-order.
    Ensures the x-order carries no information about the values.
    """
    a = gen_gap_family([0.0, 5.0, 2.0], eps_mode="rank")
    b = gen_gap_family([9.0, 1.0, 4.5], eps_mode="rank")
    assert presort_permutation(a)[0] == presort_permutation(b)[0]
    assert all(0 < abs(x) < 0.001 for x, _ in a)


def test_gap_family_rejects_close_values():
    """
    Test the separation requirement and the mode check.
    Ensures values closer than 1 and unknown modes are refused.
    """
    with pytest.raises(ValueSeparationViolated):
        gen_gap_family([0.0, 0.5])
    with pytest.raises(InvalidParams):
        gen_gap_family([0.0, 2.0], eps_mode="random")


def test_empty_circle_unit_square():
    """
    Test the empty-circle oracle on the unit square corners.
    Ensures the centre is the square's centre and the radius half the diagonal.
    """
    centre, radius = max_empty_circle_brute([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    assert centre == pytest.approx((0.5, 0.5))
    assert radius == pytest.approx(math.sqrt(2) / 2)


def test_empty_circle_rejects_degenerate_hulls():
    """
    Test the degenerate inputs of the empty-circle oracle.
    Ensures fewer than three points and collinear sets are refused.
    """
    with pytest.raises(DegenerateHull):
        max_empty_circle_brute([(0.0, 0.0), (1.0, 0.0)])
    with pytest.raises(DegenerateHull):
        max_empty_circle_brute([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)])


def test_largest_gap():
    """
    Test largest_gap on unsorted input.
    Ensures the maximum difference of consecutive sorted values.
    """
    assert largest_gap([4.0, 0.0, 3.0]) == 3.0
    with pytest.raises(InvalidParams):
        largest_gap([1.0])
