import numpy as np
import pytest

from geometry.presorting import presort_permutation
from models.bench import ArithBackend, BenchRecord, IndexBackend
from utils.errors import InvalidParams
from utils.metrics import SUMMARY_COLUMNS, fit_trend, records_frame, summarize
from utils.scenario import (FAMILIES, make_instance, nth_permutation, random_points, run_bench, run_once,
                            seed_schedule, size_schedule)


def sample_records():
    """Two seeds at three sizes with steps exactly proportional to n."""
    records = []
    for n in (16, 32, 64):
        for seed in (1, 0):
            records.append(BenchRecord(structure="quadtree", n=n, seed=seed, backend="wavelet", wall_time=0.01,
                                       total_skiplist_steps=3 * n + (seed * 2 - 1), total_range_queries=5 * n,
                                       verified=True))
    return records


def test_fit_trend_flat_and_growing():
    """
    Test fit_trend on a constant and on a logarithmically growing ratio.
    Ensures the slope and final/first ratio separate linear from n log n work.
    """
    flat = fit_trend([16, 32, 64], [3.0, 3.0, 3.0])
    assert flat["trend_slope"] == pytest.approx(0.0, abs=1e-12)
    assert flat["final_first_ratio"] == 1.0
    growing = fit_trend([16, 32, 64], [4.0, 5.0, 6.0])
    assert growing["trend_slope"] == pytest.approx(1.0)
    assert growing["final_first_ratio"] == 1.5
    assert fit_trend([16], [2.0]) == {"trend_slope": 0.0, "final_first_ratio": 1.0}


def test_summarize_rows_and_columns():
    """
    Test the summary frame of a synthetic run set.
    Ensures per-size means, per-n ratios and one trend row per (structure, backend).
    """
    frame = summarize(sample_records())
    assert list(frame.columns) == SUMMARY_COLUMNS
    data = frame[frame["row"] == "data"]
    assert data["n"].tolist() == [16, 32, 64]
    assert data["reps"].tolist() == [2, 2, 2]
    assert data["steps_per_n"].tolist() == pytest.approx([3.0, 3.0, 3.0])
    assert data["queries_per_n"].tolist() == pytest.approx([5.0, 5.0, 5.0])
    summary = frame[frame["row"] == "summary"].iloc[0]
    assert summary["final_first_ratio"] == pytest.approx(1.0)
    assert bool(summary["verified"])


def test_records_frame_is_sorted():
    """
    Test the raw run frame ordering.
    Ensures rows come out by (structure, backend, n, seed) whatever the input order.
    """
    frame = records_frame(list(reversed(sample_records())))
    assert frame[["n", "seed"]].values.tolist() == [[16, 0], [16, 1], [32, 0], [32, 1], [64, 0], [64, 1]]
    assert records_frame([]).empty


def test_schedules():
    """
    Test the size and seed schedules.
    Ensures powers of two and consecutive seeds.
    """
    assert size_schedule(10, 14, 2) == [1024, 4096, 16384]
    assert seed_schedule(5, 3) == [5, 6, 7]
    with pytest.raises(InvalidParams):
        size_schedule(5, 4)


def test_nth_permutation():
    """
    Test lexicographic permutation indexing.
    Ensures index 0 is the identity and the last index the reversal.
    """
    assert nth_permutation(3, 0) == [1, 2, 3]
    assert nth_permutation(3, 5) == [3, 2, 1]
    with pytest.raises(InvalidParams):
        nth_permutation(3, 6)


def test_random_points_have_distinct_coordinates():
    """
    Test the uniform point generator.
    Ensures no two points share an x or a y and the set repeats for one seed.
    """
    pts = random_points(500, 3)
    assert len({x for x, _ in pts}) == 500 and len({y for _, y in pts}) == 500
    assert pts == random_points(500, 3)


def test_make_instance_families():
    """
    Test make_instance for every family.
    Ensures the payload kind and size match the family.
    """
    for family in FAMILIES:
        kind, payload, params = make_instance(family, 16, 2)
        assert kind == ("segments" if family in ("segments", "distinctness") else "points")
        expected = 32 if family in ("kpair", "gap") else 16
        assert len(payload) == expected
        assert params["n"] == 16
    with pytest.raises(InvalidParams):
        make_instance("spiral", 16, 0)


def test_gap_instances_fix_x_order_and_vary_gaps():
    """
    Test the gap family produced by make_instance for two seeds.
    Ensures the x-order is shared while the hidden gaps differ from one another.
    """
    orders = []
    for seed in (3, 4):
        kind, payload, params = make_instance("gap", 12, seed)
        assert params["eps_mode"] == "rank"
        gaps = np.diff(np.sort(params["values"]))
        assert gaps.min() >= 1.0 and len(set(gaps.round(9).tolist())) > 1
        orders.append(presort_permutation(payload)[0])
    assert orders[0] == orders[1]


@pytest.mark.parametrize("structure", ["quadtree", "quadtree-baseline", "kdtree", "kdtree-baseline",
                                       "triangulation", "segments"])
def test_run_once_verifies_every_structure(structure):
    """
    Test one benchmark run per structure.
    Ensures every structure builds and passes its own verification.
    """
    record = run_once(structure, 64, 1)
    assert record.verified
    assert record.structure == structure and record.n == 64


def test_run_bench_restricted_counts_ops():
    """
    Test a restricted-backend bench.
    Ensures runs are ordered by (n, seed) and primitive operations are recorded.
    """
    records = run_bench("kdtree", [16, 32], [1, 0], IndexBackend.WAVELET, ArithBackend.RESTRICTED)
    assert [(r.n, r.seed) for r in records] == [(16, 0), (16, 1), (32, 0), (32, 1)]
    assert all(r.backend == "restricted" and r.primitive_ops > 0 for r in records)
    with pytest.raises(InvalidParams):
        run_once("octree", 16, 0)
