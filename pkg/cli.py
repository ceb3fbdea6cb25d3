import time
from itertools import permutations
from math import factorial

import click
import numpy as np

from geometry.presorting import presort_permutation
from hardness.gap import gen_gap_family, largest_gap, max_empty_circle_brute
from hardness.kpair import gen_kpair_family, ordered_k_closest
from hardness.onion import count_distinct_onion, gen_onion_family
from models.bench import ArithBackend, BenchRecord, IndexBackend, RunConfig
from models.counters import OpCounter
from models.quadtree import BuildStats
from models.rank import Axis, RankRect
from models.triangulation import Triangulation
from solvers.kdtree import PresortedKdBuilder, build_kd_baseline
from solvers.quadtree import PresortedQuadtreeBuilder, build_baseline
from solvers.search import median_split
from solvers.segments import (brute_force_pairs, detect_intersection, gen_distinctness_segments,
                              make_endpoint_presorting)
from solvers.triangulation import triangulate_xsorted
from structures.level_stack import preprocess
from utils.data_loader import (load_intersection, load_kdtree, load_presorting, load_quadtree, load_segments,
                               load_triangles)
from utils.errors import PresortGeomError
from utils.logging import get_logger
from utils.metrics import records_frame, summarize
from utils.reporting import (write_csv, write_kdtree, write_metadata, write_points, write_quadtree,
                             write_segments, write_text, write_triangles)
from utils.scenario import (FAMILIES, FULL_VERIFY_MAX, STRUCTURES, divmod_op_counts, make_instance, restricted_ops,
                            run_bench, seed_schedule, size_schedule)
from utils.validation import kd_trees_equal, trees_equal, verify_kdtree, verify_quadtree, verify_triangulation

logger = get_logger("CLI")

BACKENDS = ("wavelet", "naive", "restricted")
BUILD_STRUCTURES = ("quadtree", "quadtree-baseline", "kdtree", "kdtree-baseline", "triangulation", "segments")
QUERY_OPS = ("x_next", "y_next", "range_count", "median_x", "median_y")
HARDNESS_FAMILIES = ("onion", "kpair", "gap", "distinctness")


def resolve_backend(backend: str):
    """Map the --backend choice onto (index backend, arithmetic backend)."""
    if backend == "restricted":
        return IndexBackend.WAVELET, ArithBackend.RESTRICTED
    return IndexBackend(backend), ArithBackend.NATIVE


def make_config(command: str, backend: str = "wavelet", **kwargs) -> RunConfig:
    ib, ab = resolve_backend(backend)
    config = RunConfig(command=command, index_backend=ib, arith_backend=ab,
                       **{k: v for k, v in kwargs.items() if v is not None})
    logger.info(f"{command}: {config.model_dump_json()}")
    return config


def parse_rect(text: str) -> RankRect:
    try:
        xlo, xhi, ylo, yhi = (int(v) for v in text.split(","))
    except ValueError:
        raise click.BadParameter(f"expected xlo,xhi,ylo,yhi as integers, got {text!r}", param_hint="--rect")
    return RankRect(xlo, xhi, ylo, yhi)


@click.group()
def cli():
    """Presorted geometry engine: generate instances, build structures, verify and benchmark."""
    pass


@cli.command()
@click.option('--family', type=click.Choice(FAMILIES), default="random", show_default=True, help='Instance family.')
@click.option('--n', type=click.IntRange(min=0), required=True, help='Instance size.')
@click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True, help='PRNG seed.')
@click.option('--sigma-index', type=int, default=0, show_default=True, help='Onion family: permutation index.')
@click.option('--out', type=click.Path(dir_okay=False), required=True, help='Instance file to write.')
def gen(family, n, seed, sigma_index, out):
    """Generate an instance file plus its JSON metadata sidecar."""
    make_config("gen", n=n, seed=seed, output_path=out)
    try:
        kind, payload, params = make_instance(family, n, seed, sigma_index)
        if kind == "segments":
            write_segments(out, payload)
        else:
            write_points(out, payload)
        side = write_metadata(out, family, params, seed)
    except PresortGeomError as e:
        raise click.ClickException(str(e))
    click.echo(f"Wrote {out} and {side}")


def _timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


def _build(structure: str, path: str, config: RunConfig, out: str) -> BenchRecord:
    """
    Build one structure from a file, write it, and check it against its oracle.
    Step-by-step:
    1. Load the input and time the build alone.
    2. Write the serialization.
    3. Verify: presorted trees against their baseline, baselines and triangulations with their
       verifiers, a segment answer against the brute-force pair list.
    """
    ib, ab = config.index_backend, config.arith_backend
    stats, ops = BuildStats(), 0
    if structure == "segments":
        segments = load_segments(path)
        pair, elapsed = _timed(lambda: detect_intersection(make_endpoint_presorting(segments)))
        write_text(out, "none\n" if pair is None else f"{pair[0]} {pair[1]}\n")
        truth = brute_force_pairs(segments)
        verified = not truth if pair is None else pair in truth
        n = len(segments)
    else:
        pre = load_presorting(path)
        n = pre.n
        if structure in ("quadtree", "kdtree"):
            builder = (PresortedQuadtreeBuilder if structure == "quadtree" else PresortedKdBuilder)(config.seed, ib, ab)
            (tree, stats), elapsed = _timed(builder.build, pre)
            ops = restricted_ops(builder)
            if structure == "quadtree":
                write_quadtree(out, tree)
                verified = trees_equal(tree, build_baseline(pre.a_x))
            else:
                write_kdtree(out, tree)
                verified = kd_trees_equal(tree, build_kd_baseline(pre.a_x))
        elif structure == "quadtree-baseline":
            tree, elapsed = _timed(build_baseline, pre.a_x)
            write_quadtree(out, tree)
            verified = not verify_quadtree(tree, pre.a_x)
        elif structure == "kdtree-baseline":
            tree, elapsed = _timed(build_kd_baseline, pre.a_x)
            write_kdtree(out, tree)
            verified = not verify_kdtree(tree, pre.a_x)
        else:
            counter = OpCounter()
            t, elapsed = _timed(triangulate_xsorted, pre.a_x, counter)
            write_triangles(out, t.triangles)
            ops = counter.total
            if n <= FULL_VERIFY_MAX:
                verified = not verify_triangulation([(p.x, p.y) for p in pre.a_x], t)
            else:
                verified = len(t.triangles) == 2 * n - 2 - t.hull_size
    return BenchRecord(
        structure=structure, n=n, seed=config.seed, backend=config.backend_label, wall_time=elapsed,
        type1_splits=stats.type1_splits, type2_splits=stats.type2_splits, median_splits=stats.median_splits,
        total_skiplist_steps=stats.total_skiplist_steps, total_range_queries=stats.total_range_queries,
        primitive_ops=ops, verified=verified,
    )


@cli.command()
@click.option('--structure', type=click.Choice(BUILD_STRUCTURES), required=True, help='Structure to build.')
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), required=True,
              help='Point file (segment file for --structure segments).')
@click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True, help='Sampling seed.')
@click.option('--backend', type=click.Choice(BACKENDS), default="wavelet", show_default=True, help='Rank-index backend.')
@click.option('--record', 'record_path', type=click.Path(dir_okay=False), default=None,
              help='Also write the run as a one-row CSV.')
@click.option('--out', type=click.Path(dir_okay=False), required=True, help='Serialized structure to write.')
def build(structure, input_path, seed, backend, record_path, out):
    """
    Build a structure, write its serialization and print its BenchRecord as JSON.
    Point ids in the output are 1-based positions in x order.
    """
    config = make_config("build", backend, seed=seed, input_path=input_path, output_path=out)
    try:
        record = _build(structure, input_path, config, out)
        if record_path:
            write_csv(record_path, records_frame([record]), "runs")
    except PresortGeomError as e:
        raise click.ClickException(str(e))
    click.echo(record.model_dump_json())


@cli.command()
@click.option('--structure', type=click.Choice(sorted(STRUCTURES) + ["divmod"]), required=True,
              help='Structure to benchmark.')
@click.option('--min-exp', type=int, default=10, show_default=True, help='Smallest size is 2^min-exp.')
@click.option('--max-exp', type=int, default=14, show_default=True, help='Largest size is 2^max-exp.')
@click.option('--reps', type=click.IntRange(min=1), default=5, show_default=True, help='Seeds per size.')
@click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True, help='First seed.')
@click.option('--samples', type=int, default=1000, show_default=True, help='divmod: random pairs per universe.')
@click.option('--backend', type=click.Choice(BACKENDS), default="wavelet", show_default=True, help='Rank-index backend.')
@click.option('--raw', type=click.Path(dir_okay=False), default=None, help='Also write one row per run.')
@click.option('--out', type=click.Path(dir_okay=False), required=True, help='Summary CSV to write.')
def bench(structure, min_exp, max_exp, reps, seed, samples, backend, raw, out):
    """Operation-count benchmark over a power-of-two size schedule."""
    config = make_config("bench", backend, seed=seed, repetitions=reps, output_path=out)
    try:
        if structure == "divmod":
            frame = divmod_op_counts(list(range(min_exp, max_exp + 1)), samples, seed)
            write_csv(out, frame, "divmod")
            click.echo(f"Wrote {out}")
            return
        records = run_bench(structure, size_schedule(min_exp, max_exp), seed_schedule(seed, config.repetitions),
                            config.index_backend, config.arith_backend)
        write_csv(out, summarize(records), "bench")
        if raw:
            write_csv(raw, records_frame(records), "runs")
    except PresortGeomError as e:
        raise click.ClickException(str(e))
    failed = [r for r in records if not r.verified]
    click.echo(f"Wrote {out}: {len(records)} runs, {len(failed)} unverified")


def _verify(structure: str, input_path: str, points_path: str, cross_check: bool):
    """Return the list of problems found, as printable strings."""
    if structure == "segments":
        segments = load_segments(points_path)
        claimed = load_intersection(input_path)
        truth = brute_force_pairs(segments)
        if claimed is None:
            return [f"missed: {len(truth)} intersecting pairs exist, e.g. {truth[0]}"] if truth else []
        return [] if claimed in truth else [f"false: segments {claimed} do not intersect"]
    pre = load_presorting(points_path)
    if structure == "quadtree":
        tree = load_quadtree(input_path)
        problems = [f"{v.code}: {v.detail}" for v in verify_quadtree(tree, pre.a_x)]
        if cross_check and not trees_equal(tree, build_baseline(pre.a_x)):
            problems.append("cross-check: differs from the baseline build")
        return problems
    if structure == "kdtree":
        tree = load_kdtree(input_path)
        problems = [f"{v.code}: {v.detail}" for v in verify_kdtree(tree, pre.a_x)]
        if cross_check and not kd_trees_equal(tree, build_kd_baseline(pre.a_x)):
            problems.append("cross-check: differs from the baseline build")
        return problems
    triangles = load_triangles(input_path)
    coords = [(p.x, p.y) for p in pre.a_x]
    t = Triangulation(vertex_ids=list(range(1, pre.n + 1)), triangles=triangles)
    return [f"{v.code}: {v.detail}" for v in verify_triangulation(coords, t)]


@cli.command()
@click.option('--structure', type=click.Choice(["quadtree", "kdtree", "triangulation", "segments"]), required=True,
              help='Kind of structure file.')
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), required=True,
              help='Structure file written by build.')
@click.option('--points', 'points_path', type=click.Path(exists=True, dir_okay=False), required=True,
              help='Point (or segment) file the structure was built from.')
@click.option('--cross-check', is_flag=True, default=False, help='Also compare against the baseline build.')
@click.pass_context
def verify(ctx, structure, input_path, points_path, cross_check):
    """Check a structure file against its input; exit status 1 on any violation."""
    make_config("verify", input_path=input_path)
    try:
        problems = _verify(structure, input_path, points_path, cross_check)
    except PresortGeomError as e:
        raise click.ClickException(str(e))
    for p in problems:
        click.echo(p)
    if problems:
        click.echo(f"{len(problems)} violation(s)")
        ctx.exit(1)
    click.echo("OK")


@cli.command()
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), required=True,
              help='Point file.')
@click.option('--op', type=click.Choice(QUERY_OPS), required=True, help='Query to run.')
@click.option('--rect', type=str, required=True, help='Rank rectangle xlo,xhi,ylo,yhi (1-based, closed).')
@click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True, help='Sampling seed (median queries).')
@click.option('--backend', type=click.Choice(BACKENDS), default="wavelet", show_default=True, help='Rank-index backend.')
def query(input_path, op, rect, seed, backend):
    """Run one rank-space query for debugging."""
    config = make_config("query", backend, seed=seed, input_path=input_path)
    g = parse_rect(rect)
    try:
        ls = preprocess(load_presorting(input_path), config.seed, config.index_backend, config.arith_backend)
    except PresortGeomError as e:
        raise click.ClickException(str(e))
    idx0 = ls.base
    if op == "range_count":
        click.echo(str(idx0.range_count(g)))
        return
    if op in ("x_next", "y_next"):
        found = idx0.x_next(g) if op == "x_next" else idx0.y_next(g)
        if found is None:
            click.echo("empty")
        else:
            low, high = found
            click.echo(f"{low.x} {low.y}\n{high.x} {high.y}")
        return
    if idx0.range_count(g) == 0:
        click.echo("empty")
        return
    axis = Axis.X if op == "median_x" else Axis.Y
    rank, stats = median_split(ls, g, axis, idx0)
    click.echo(f"{rank} steps={stats.steps} queries={stats.queries}")


def _hardness(family: str, n: int, seed: int, reps: int):
    """
    Run one family check and return (report lines, passed).
    Every family also checks that its instances share one presorting order: both axes for the
    onion and k-pair families, the x-order for the gap and distinctness families.
    """
    rng = np.random.default_rng(seed)
    if family == "onion":
        m = n // 4
        distinct = count_distinct_onion(n)
        expected = factorial(m)
        orders = {tuple(map(tuple, presort_permutation(gen_onion_family(n, sigma).points)))
                  for sigma in permutations(range(1, m + 1))}
        lines = [f"distinct={distinct}", f"expected={expected}", f"presortings={len(orders)}"]
        return lines, distinct == expected and len(orders) == 1
    lines, ok, orders = [], True, set()
    for r in range(reps):
        if family == "kpair":
            values = [float(v) for v in rng.random(n)]
            points = gen_kpair_family(values)
            recovered = [values[p.i // 2] for p in ordered_k_closest(points, n)]
            ok &= recovered == sorted(values)
            orders.add(tuple(map(tuple, presort_permutation(points))))
        elif family == "gap":
            values = [float(v) for v in 2.0 * rng.permutation(n) + rng.random(n)]
            points = gen_gap_family(values, eps_mode="rank")
            _, radius = max_empty_circle_brute(points)
            gap = largest_gap(values)
            error = abs(2 * radius - gap) / gap
            lines.append(f"rep={r} diameter={2 * radius!r} gap={gap!r} rel_error={error!r}")
            ok &= error < 0.01
            orders.add(tuple(presort_permutation(points)[0]))
        else:
            values = rng.integers(0, n, size=n).tolist()
            segments = gen_distinctness_segments(values)
            found = detect_intersection(make_endpoint_presorting(segments)) is not None
            ok &= found == (len(set(values)) < n)
            orders.add(tuple(presort_permutation([(s.lo, s.fixed) for s in segments])[0]))
    lines.append(f"presortings={len(orders)}")
    lines.append(f"reps={reps}")
    return lines, ok and len(orders) == 1


@cli.command()
@click.option('--family', type=click.Choice(HARDNESS_FAMILIES), required=True, help='Lower-bound family.')
@click.option('--n', type=click.IntRange(min=0), required=True, help='Instance size (values per instance; points for onion).')
@click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True, help='PRNG seed.')
@click.option('--reps', type=click.IntRange(min=1), default=10, show_default=True, help='Random instances to check.')
@click.pass_context
def hardness(ctx, family, n, seed, reps):
    """Reproduce a lower-bound family check; exit status 1 if it fails."""
    make_config("hardness", n=n, seed=seed, repetitions=reps)
    try:
        lines, ok = _hardness(family, n, seed, reps)
    except PresortGeomError as e:
        raise click.ClickException(str(e))
    for line in lines:
        click.echo(line)
    click.echo("PASS" if ok else "FAIL")
    if not ok:
        ctx.exit(1)


if __name__ == '__main__':
    cli()
