# scenario.py: Instance generators, size/seed schedules and the benchmark runner behind `gen` and `bench`.

import time
from itertools import islice, permutations
from math import factorial
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from arith.backends import RestrictedArithmetic
from arith.restricted import DIGITS, PrimitiveOps, WordDivider, chunk_width
from geometry.presorting import make_presorting
from hardness.gap import gen_gap_family
from hardness.kpair import gen_kpair_family
from hardness.onion import gen_onion_family
from models.bench import ArithBackend, BenchRecord, IndexBackend
from models.counters import OpCounter
from models.presorting import Presorting
from models.quadtree import BuildStats
from models.segment import Orientation, OrthoSegment
from solvers.kdtree import PresortedKdBuilder, build_kd_baseline
from solvers.quadtree import PresortedQuadtreeBuilder, build_baseline
from solvers.segments import detect_intersection, gen_distinctness_segments, make_endpoint_presorting
from solvers.triangulation import triangulate_xsorted
from utils.errors import InvalidParams
from utils.logging import get_logger
from utils.validation import kd_trees_equal, trees_equal, verify_kdtree, verify_quadtree, verify_triangulation

logger = get_logger("Scenario")

Coords = Tuple[float, float]

FAMILIES = ("random", "segments", "onion", "kpair", "gap", "distinctness")
# Full triangulation verification checks every edge pair; larger runs check the triangle count only.
FULL_VERIFY_MAX = 2000


def random_points(n: int, seed: int) -> List[Coords]:
    """
    n points in [0, 1)^2 with pairwise distinct x and pairwise distinct y.
    Each coordinate is (slot + jitter) / n over a random permutation of slots, so ties cannot occur.
    """
    rng = np.random.default_rng(seed)
    xs = (rng.permutation(n) + 0.5 * rng.random(n)) / max(n, 1)
    ys = (rng.permutation(n) + 0.5 * rng.random(n)) / max(n, 1)
    return [(float(x), float(y)) for x, y in zip(xs, ys)]


def random_presorting(n: int, seed: int) -> Presorting:
    return make_presorting(random_points(n, seed))


def random_segments(n: int, seed: int, grid: Optional[int] = None) -> List[OrthoSegment]:
    """
    n axis-parallel segments. With `grid`, all coordinates are integers in [0, grid], which makes
    touching and collinear configurations common.
    """
    rng = np.random.default_rng(seed)
    segments = []
    for i in range(n):
        orientation = Orientation.HORIZONTAL if rng.random() < 0.5 else Orientation.VERTICAL
        if grid is None:
            fixed = float(rng.random())
            lo, hi = sorted(float(v) for v in rng.random(2))
            if lo == hi:
                hi = lo + 1e-9
        else:
            fixed = float(rng.integers(0, grid + 1))
            lo, hi = sorted(float(v) for v in rng.choice(grid + 1, size=2, replace=False))
        segments.append(OrthoSegment(id=i + 1, orientation=orientation, fixed=fixed, lo=lo, hi=hi))
    return segments


def nth_permutation(m: int, index: int) -> List[int]:
    """The index-th permutation of 1..m in lexicographic order."""
    if not 0 <= index < factorial(m):
        raise InvalidParams(f"sigma index must lie in [0, {factorial(m)}) for m={m}, got {index}")
    return list(next(islice(permutations(range(1, m + 1)), index, None)))


def make_instance(family: str, n: int, seed: int, sigma_index: int = 0) -> Tuple[str, Any, Dict[str, Any]]:
    """
    Generate one instance for `gen`.
    Returns (kind, payload, params): kind is "points" or "segments", params go to the metadata sidecar.
    """
    rng = np.random.default_rng(seed)
    if family == "random":
        return "points", random_points(n, seed), {"n": n}
    if family == "segments":
        return "segments", random_segments(n, seed), {"n": n}
    if family == "distinctness":
        values = rng.integers(0, max(n, 1), size=n).tolist()
        return "segments", gen_distinctness_segments(values), {"n": n, "values": values}
    if family == "onion":
        sigma = nth_permutation(n // 4, sigma_index) if n >= 8 and n % 4 == 0 else []
        instance = gen_onion_family(n, sigma)
        return "points", instance.points, {"n": n, "sigma_index": sigma_index, "sigma": instance.sigma}
    if family == "kpair":
        values = [float(v) for v in rng.random(n)]
        return "points", gen_kpair_family(values), {"n": n, "values": values, "eps": 0.25}
    if family == "gap":
        values = [float(v) for v in 2.0 * rng.permutation(n) + rng.random(n)]
        return "points", gen_gap_family(values, eps_mode="rank"), {"n": n, "values": values, "eps_mode": "rank"}
    raise InvalidParams(f"Unknown family {family!r}; expected one of {FAMILIES}")


def size_schedule(first_exp: int, last_exp: int, step: int = 1) -> List[int]:
    """Powers of two 2^first_exp .. 2^last_exp."""
    if first_exp < 0 or last_exp < first_exp or step < 1:
        raise InvalidParams(f"Bad size schedule ({first_exp}, {last_exp}, {step})")
    return [2 ** e for e in range(first_exp, last_exp + 1, step)]


def seed_schedule(base: int, repetitions: int) -> List[int]:
    return [base + r for r in range(repetitions)]


def restricted_ops(builder) -> int:
    """Audited primitive operations counted by a presorted builder's restricted arithmetic (0 if native)."""
    arith = builder.levels.arith if builder.levels is not None else None
    return arith.counter.total if isinstance(arith, RestrictedArithmetic) else 0


def _run_quadtree(n: int, seed: int, ib: IndexBackend, ab: ArithBackend) -> Tuple[BuildStats, bool, int]:
    pre = random_presorting(n, seed)
    builder = PresortedQuadtreeBuilder(seed, ib, ab)
    tree, stats = builder.build(pre)
    return stats, trees_equal(tree, build_baseline(pre.a_x)), restricted_ops(builder)


def _run_quadtree_baseline(n: int, seed: int, ib: IndexBackend, ab: ArithBackend) -> Tuple[BuildStats, bool, int]:
    pre = random_presorting(n, seed)
    tree = build_baseline(pre.a_x)
    return BuildStats(), not verify_quadtree(tree, pre.a_x), 0


def _run_kdtree(n: int, seed: int, ib: IndexBackend, ab: ArithBackend) -> Tuple[BuildStats, bool, int]:
    pre = random_presorting(n, seed)
    builder = PresortedKdBuilder(seed, ib, ab)
    tree, stats = builder.build(pre)
    return stats, kd_trees_equal(tree, build_kd_baseline(pre.a_x)), restricted_ops(builder)


def _run_kdtree_baseline(n: int, seed: int, ib: IndexBackend, ab: ArithBackend) -> Tuple[BuildStats, bool, int]:
    pre = random_presorting(n, seed)
    tree = build_kd_baseline(pre.a_x)
    return BuildStats(), not verify_kdtree(tree, pre.a_x), 0


def _run_triangulation(n: int, seed: int, ib: IndexBackend, ab: ArithBackend) -> Tuple[BuildStats, bool, int]:
    pre = random_presorting(n, seed)
    counter = OpCounter()
    t = triangulate_xsorted(pre.a_x, counter)
    coords = [(p.x, p.y) for p in pre.a_x]
    if n <= FULL_VERIFY_MAX:
        verified = not verify_triangulation(coords, t)
    else:
        verified = len(t.triangles) == 2 * n - 2 - t.hull_size
    return BuildStats(), verified, counter.total


def _run_segments(n: int, seed: int, ib: IndexBackend, ab: ArithBackend) -> Tuple[BuildStats, bool, int]:
    # distinct values: no pair intersects, so the sweep runs to completion
    values = np.random.default_rng(seed).permutation(n).tolist()
    ep = make_endpoint_presorting(gen_distinctness_segments(values))
    return BuildStats(), detect_intersection(ep) is None, 0


STRUCTURES: Dict[str, Callable[[int, int, IndexBackend, ArithBackend], Tuple[BuildStats, bool, int]]] = {
    "quadtree": _run_quadtree,
    "quadtree-baseline": _run_quadtree_baseline,
    "kdtree": _run_kdtree,
    "kdtree-baseline": _run_kdtree_baseline,
    "triangulation": _run_triangulation,
    "segments": _run_segments,
}


def backend_label(ib: IndexBackend, ab: ArithBackend) -> str:
    return "restricted" if ab == ArithBackend.RESTRICTED else ib.value


def run_once(structure: str, n: int, seed: int, index_backend: IndexBackend = IndexBackend.WAVELET,
             arith_backend: ArithBackend = ArithBackend.NATIVE) -> BenchRecord:
    """Build one structure on one random instance and return its benchmark row."""
    if structure not in STRUCTURES:
        raise InvalidParams(f"Unknown structure {structure!r}; expected one of {sorted(STRUCTURES)}")
    start = time.perf_counter()
    stats, verified, ops = STRUCTURES[structure](n, seed, index_backend, arith_backend)
    elapsed = time.perf_counter() - start
    return BenchRecord(
        structure=structure, n=n, seed=seed, backend=backend_label(index_backend, arith_backend),
        wall_time=elapsed, type1_splits=stats.type1_splits, type2_splits=stats.type2_splits,
        median_splits=stats.median_splits, total_skiplist_steps=stats.total_skiplist_steps,
        total_range_queries=stats.total_range_queries, primitive_ops=ops, verified=verified,
    )


def run_bench(structure: str, sizes: Sequence[int], seeds: Sequence[int],
              index_backend: IndexBackend = IndexBackend.WAVELET,
              arith_backend: ArithBackend = ArithBackend.NATIVE) -> List[BenchRecord]:
    """
    Run every (n, seed) pair once.
    Rows are returned sorted by (n, seed) regardless of execution order.
    """
    records = []
    for n in sizes:
        for seed in seeds:
            records.append(run_once(structure, n, seed, index_backend, arith_backend))
        logger.info(f"Bench {structure} n={n}: {len(seeds)} runs done")
    return sorted(records, key=lambda r: (r.n, r.seed))


def divmod_op_counts(exponents: Sequence[int], samples: int, seed: int) -> pd.DataFrame:
    """
    Op-count report of the restricted word divider, one row per universe N = 2^e.
    Columns: N, k, digits, build_ops, samples, ops_min, ops_max, mismatches.
    ops_min == ops_max means every division executed the same primitive sequence.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for e in exponents:
        N = 2 ** e
        counter = OpCounter()
        divider = WordDivider(N, PrimitiveOps(counter))
        a = rng.integers(0, N, size=samples)
        b = rng.integers(1, N, size=samples)
        per_call = []
        mismatches = 0
        for x, y in zip(a.tolist(), b.tolist()):
            before = counter.total
            q, r = divider.divmod(x, y)
            per_call.append(counter.total - before)
            if (q, r) != divmod(x, y):
                mismatches += 1
        rows.append({
            "N": N, "k": chunk_width(N), "digits": DIGITS, "build_ops": divider.build_ops.total,
            "samples": samples, "ops_min": min(per_call, default=0), "ops_max": max(per_call, default=0),
            "mismatches": mismatches,
        })
        logger.info(f"divmod N=2^{e}: {samples} samples, ops/call in [{rows[-1]['ops_min']}, {rows[-1]['ops_max']}]")
    return pd.DataFrame(rows)
