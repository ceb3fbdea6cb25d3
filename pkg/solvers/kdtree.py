from typing import List, Optional, Sequence, Tuple

from models.bench import ArithBackend, IndexBackend
from models.kdtree import KdNode, KdTree
from models.point import Point
from models.presorting import Presorting
from models.quadtree import BuildStats
from models.rank import Axis, RankRect
from structures.level_stack import LevelStack, preprocess
from utils.logging import get_logger

from .base import BaseBuilder
from .search import median_split

logger = get_logger("KdTree")


def _depth_axis(depth: int) -> Axis:
    return Axis.X if depth % 2 == 0 else Axis.Y


class PresortedKdBuilder(BaseBuilder):
    """
    KD-tree from a presorting. Each node is a rank rectangle whose size is known from its parent;
    the median comes from a skip-list walk steered by range counts on the level-0 index.
    """
    name = "kdtree"

    def __init__(self, seed: int = 0, index_backend: IndexBackend = IndexBackend.WAVELET,
                 arith_backend: ArithBackend = ArithBackend.NATIVE):
        self.seed = seed
        self.index_backend = index_backend
        self.arith_backend = arith_backend
        self.levels: Optional[LevelStack] = None

    def build(self, pre: Presorting) -> Tuple[KdTree, BuildStats]:
        """
        Step-by-step:
        1. Sample the level stack; the root rect is the whole rank grid with all n points.
        2. A one-point rect becomes a leaf, its point found by one successor query.
        3. Otherwise locate the median rank along the depth's axis and cut the rect just before
           and just after it; the halves have sizes floor((m-1)/2) and the rest.
        """
        ls = preprocess(pre, self.seed, self.index_backend, self.arith_backend)
        self.levels = ls
        idx0 = ls.base
        stats = BuildStats()
        nodes: List[Optional[KdNode]] = [None]
        stack = [(0, RankRect(1, pre.n, 1, pre.n), pre.n, 0)]
        while stack:
            slot, g, m, depth = stack.pop()
            axis = _depth_axis(depth)
            # Step 2: leaf
            if m == 1:
                found = idx0.x_next(g)
                stats.record_node(depth, 0, 1)
                nodes[slot] = KdNode.model_construct(axis=axis, point_id=found[0].x, left=None, right=None)
                continue
            # Step 3: median cut
            t, s = median_split(ls, g, axis, idx0, size=m)
            stats.median_splits += 1
            stats.record_node(depth, s.steps, s.queries)
            k = (m - 1) // 2
            point_id = t if axis == Axis.X else pre.a_y[t - 1].id
            if axis == Axis.X:
                low, high = g._replace(xhi=t - 1), g._replace(xlo=t + 1)
            else:
                low, high = g._replace(yhi=t - 1), g._replace(ylo=t + 1)
            left = right = None
            if k > 0:
                nodes.append(None)
                left = len(nodes) - 1
            if m - 1 - k > 0:
                nodes.append(None)
                right = len(nodes) - 1
            nodes[slot] = KdNode.model_construct(axis=axis, point_id=point_id, left=left, right=right)
            if right is not None:
                stack.append((right, high, m - 1 - k, depth + 1))
            if left is not None:
                stack.append((left, low, k, depth + 1))
        logger.info(f"KD-tree built: n={pre.n} seed={self.seed} medians={stats.median_splits} "
                    f"queries={stats.total_range_queries}")
        return KdTree(nodes=nodes, root=0, n=pre.n), stats


class BaselineKdBuilder(BaseBuilder):
    """Reference builder: sort each node's points along its axis and take the lower median."""
    name = "kdtree-baseline"

    def build(self, pre: Presorting) -> Tuple[KdTree, BuildStats]:
        return build_kd_baseline(pre.a_x), BuildStats()


def build_kd_baseline(points: Sequence[Point]) -> KdTree:
    pts = list(points)
    if not pts:
        return KdTree(nodes=[], root=None, n=0)
    nodes: List[Optional[KdNode]] = [None]
    stack = [(0, pts, 0)]
    while stack:
        slot, members, depth = stack.pop()
        axis = _depth_axis(depth)
        ordered = sorted(members, key=(lambda p: p.x) if axis == Axis.X else (lambda p: p.y))
        k = (len(ordered) - 1) // 2
        left = right = None
        if k > 0:
            nodes.append(None)
            left = len(nodes) - 1
            stack.append((left, ordered[:k], depth + 1))
        if len(ordered) - 1 - k > 0:
            nodes.append(None)
            right = len(nodes) - 1
            stack.append((right, ordered[k + 1:], depth + 1))
        nodes[slot] = KdNode.model_construct(axis=axis, point_id=ordered[k].id, left=left, right=right)
    return KdTree(nodes=nodes, root=0, n=len(pts))


def build_kd_presorted(pre: Presorting, seed: int = 0, index_backend: IndexBackend = IndexBackend.WAVELET,
                       arith_backend: ArithBackend = ArithBackend.NATIVE) -> Tuple[KdTree, BuildStats]:
    return PresortedKdBuilder(seed, index_backend, arith_backend).build(pre)
