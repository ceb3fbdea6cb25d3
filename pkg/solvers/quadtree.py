from typing import List, Optional, Sequence, Tuple

from geometry.presorting import extremes_of, gamma
from geometry.squares import midlines, min_enclosing_square, split
from models.bench import ArithBackend, IndexBackend
from models.point import Point
from models.presorting import Presorting
from models.quadtree import BuildStats, CompressedQuadtree, NodeKind, QuadNode
from models.rank import Extremes
from models.search import SearchStats
from models.square import Square
from structures.level_stack import LevelStack, preprocess
from utils.logging import get_logger

from .base import BaseBuilder
from .search import half_split_x, half_split_y

logger = get_logger("Quadtree")


class _NodeStore:
    """Pre-allocates node slots so that a parent can name its children before they are built."""

    def __init__(self):
        self.nodes: List[Optional[QuadNode]] = []

    def reserve(self) -> int:
        self.nodes.append(None)
        return len(self.nodes) - 1

    def put(self, slot: int, square: Square, kind: NodeKind, point_id: Optional[int] = None,
            children: Optional[List[int]] = None) -> None:
        self.nodes[slot] = QuadNode.model_construct(square=square, kind=kind, point_id=point_id,
                                                    children=children or [])

    def finish(self, n: int) -> CompressedQuadtree:
        return CompressedQuadtree(nodes=self.nodes, root=0, n=n)


class PresortedQuadtreeBuilder(BaseBuilder):
    """
    Compressed quadtree from a presorting, without comparison sorting.
    Every node knows the four extremes of its point set; the quadrant extremes come from one
    x half-split and two y half-splits over the sampled level stack.
    """
    name = "quadtree"

    def __init__(self, seed: int = 0, index_backend: IndexBackend = IndexBackend.WAVELET,
                 arith_backend: ArithBackend = ArithBackend.NATIVE):
        self.seed = seed
        self.index_backend = index_backend
        self.arith_backend = arith_backend
        self.levels: Optional[LevelStack] = None

    def build(self, pre: Presorting) -> Tuple[CompressedQuadtree, BuildStats]:
        """
        Build the tree.
        Step-by-step:
        1. Sample the level stack and take the root square around the whole set.
        2. For each pending node: empty or single-point regions become leaves.
        3. Otherwise split at the x midline, then split each half at the y midline.
        4. One occupied quadrant gives a Compressed hop into the minimum enclosing square of the
           same points, placed inside that quadrant; the hop's child reuses the known extremes.
        5. Otherwise a Quad node with the four quadrants as children (empty ones as empty leaves).
        """
        ls = preprocess(pre, self.seed, self.index_backend, self.arith_backend)
        self.levels = ls
        return build_with_levels(ls)


def build_with_levels(ls: LevelStack) -> Tuple[CompressedQuadtree, BuildStats]:
    """Presorted build over an already sampled level stack."""
    pre = ls.pre
    stats = BuildStats()
    store = _NodeStore()
    # Step 1: root square, closed on all sides
    ex_all = Extremes(leftmost=pre.a_x[0], rightmost=pre.a_x[-1], bottommost=pre.a_y[0], topmost=pre.a_y[-1])
    stack = [(store.reserve(), min_enclosing_square(ex_all), ex_all, 0)]
    while stack:
        slot, square, ex, depth = stack.pop()
        # Step 2: leaves
        if ex.is_empty:
            store.put(slot, square, NodeKind.LEAF)
            continue
        if ex.is_single:
            store.put(slot, square, NodeKind.LEAF, point_id=ex.leftmost.id)
            continue
        # Step 3: four quadrant extremes
        quadrants = split(square)
        xm, ym = midlines(square)
        west, east, sx = half_split_x(ls, gamma(ex, pre), ex, xm)
        sw, nw, sw_stats = half_split_y(ls, gamma(west, pre), west, ym)
        se, ne, se_stats = half_split_y(ls, gamma(east, pre), east, ym)
        node_stats = SearchStats()
        for s in (sx, sw_stats, se_stats):
            node_stats.absorb(s)
        stats.record_node(depth, node_stats.steps, node_stats.queries)
        parts = [sw, se, nw, ne]
        occupied = [i for i, part in enumerate(parts) if not part.is_empty]
        # Step 4: compressed hop
        if len(occupied) == 1:
            inner = min_enclosing_square(ex, quadrants[occupied[0]])
            child = store.reserve()
            store.put(slot, square, NodeKind.COMPRESSED, children=[child])
            stats.type1_splits += 1
            stack.append((child, inner, ex, depth + 1))
            continue
        # Step 5: four-way split
        children = [store.reserve() for _ in range(4)]
        store.put(slot, square, NodeKind.QUAD, children=children)
        stats.type2_splits += 1
        for i in reversed(range(4)):
            stack.append((children[i], quadrants[i], parts[i], depth + 1))
    tree = store.finish(pre.n)
    logger.info(f"Quadtree built: n={pre.n} nodes={len(tree.nodes)} type1={stats.type1_splits} "
                f"type2={stats.type2_splits} steps={stats.total_skiplist_steps}")
    return tree, stats


class BaselineQuadtreeBuilder(BaseBuilder):
    """Reference builder: recursive partition of explicit point lists, same canonical squares."""
    name = "quadtree-baseline"

    def build(self, pre: Presorting) -> Tuple[CompressedQuadtree, BuildStats]:
        return build_baseline(pre.a_x), BuildStats()


def build_baseline(points: Sequence[Point]) -> CompressedQuadtree:
    """
    The compressed quadtree of `points` by explicit list splitting.
    Leaf point ids are the ids carried by the points.
    """
    store = _NodeStore()
    pts = list(points)
    ex_all = extremes_of(pts)
    stack = [(store.reserve(), min_enclosing_square(ex_all), pts)]
    while stack:
        slot, square, members = stack.pop()
        if len(members) <= 1:
            store.put(slot, square, NodeKind.LEAF, point_id=members[0].id if members else None)
            continue
        quadrants = split(square)
        xm, ym = midlines(square)
        parts: List[List[Point]] = [[], [], [], []]
        for p in members:
            parts[(2 if p.y >= ym else 0) + (1 if p.x >= xm else 0)].append(p)
        occupied = [i for i, part in enumerate(parts) if part]
        if len(occupied) == 1:
            inner = min_enclosing_square(extremes_of(members), quadrants[occupied[0]])
            child = store.reserve()
            store.put(slot, square, NodeKind.COMPRESSED, children=[child])
            stack.append((child, inner, members))
            continue
        children = [store.reserve() for _ in range(4)]
        store.put(slot, square, NodeKind.QUAD, children=children)
        for i in reversed(range(4)):
            stack.append((children[i], quadrants[i], parts[i]))
    return store.finish(len(pts))


def build_presorted(pre: Presorting, seed: int = 0, index_backend: IndexBackend = IndexBackend.WAVELET,
                    arith_backend: ArithBackend = ArithBackend.NATIVE) -> Tuple[CompressedQuadtree, BuildStats]:
    return PresortedQuadtreeBuilder(seed, index_backend, arith_backend).build(pre)
