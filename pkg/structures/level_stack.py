# level_stack.py: Nested random subsamples of a presorted set, one rank index per level.

from typing import List, Optional

import numpy as np

from arith.backends import Arithmetic, make_arithmetic
from models.bench import ArithBackend, IndexBackend
from models.presorting import Presorting
from models.rank import RankPoint
from structures.rank_index import RankIndex, build_rank_index
from utils.logging import get_logger

logger = get_logger("LevelStack")

RNG_ALGORITHM = "numpy.PCG64"


class LevelStack:
    """
    Implicit skip list over a presorted point set.
    Fields:
    - pre: The presorting the levels index.
    - seed: PRNG seed used for sampling.
    - levels: One RankIndex per non-empty level; levels[0] holds every point.
    - heights: heights[id] = highest level containing point id (index 0 unused).
    """

    def __init__(self, pre: Presorting, seed: int, levels: List[RankIndex], heights: List[int],
                 arith: Optional[Arithmetic] = None):
        self.pre = pre
        self.seed = seed
        self.levels = levels
        self.heights = heights
        self.arith = arith

    @property
    def base(self) -> RankIndex:
        return self.levels[0]

    def __len__(self) -> int:
        return len(self.levels)

    def members(self, level: int) -> List[int]:
        return [pid for pid in range(1, self.pre.n + 1) if self.heights[pid] >= level]


def preprocess(pre: Presorting, seed: int, index_backend: IndexBackend = IndexBackend.WAVELET,
               arith_backend: ArithBackend = ArithBackend.NATIVE) -> LevelStack:
    """
    Sample the level chain and index every level.
    Step-by-step:
    1. Level 0 is the full set in x order.
    2. Each further level keeps every point of the previous one independently with probability 1/2.
    3. Sampling stops at the first empty level; only non-empty levels are stored.
    4. Each level gets its own rank index over (x-rank, y-rank) pairs.
    """
    rng = np.random.default_rng(seed)
    arith = make_arithmetic(arith_backend, pre.n)
    heights = [0] * (pre.n + 1)
    current = np.arange(1, pre.n + 1)
    levels: List[RankIndex] = []
    while len(current) > 0:
        level = len(levels)
        ids = current.tolist()
        points = [RankPoint(pid, pre.pi[pid - 1]) for pid in ids]
        levels.append(build_rank_index(points, pre.n, index_backend, arith, tag=level))
        for pid in ids:
            heights[pid] = level
        current = current[rng.random(len(current)) < 0.5]
    logger.debug(f"preprocess n={pre.n} seed={seed} levels={len(levels)} backend={index_backend.value}")
    return LevelStack(pre, seed, levels, heights, arith)
