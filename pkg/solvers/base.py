"""
BaseBuilder is the abstract interface shared by the tree builders (quadtree and KD-tree).

Purpose:
- Defines `build(pre)`: every builder turns a presorting into a tree plus the BuildStats of the run.
- Presorted builders and sort-based baselines are interchangeable behind this interface, so the
  bench harness and the CLI can time either without knowing which one they hold.

Builders are instantiated with their run options (seed, backends); `build` may be called repeatedly.
"""
from abc import ABC, abstractmethod
from typing import Any, Tuple

from models.presorting import Presorting
from models.quadtree import BuildStats


class BaseBuilder(ABC):
    """
    Base class for all builders. All must implement the build(pre) method.
    """
    name: str = "base"

    @abstractmethod
    def build(self, pre: Presorting) -> Tuple[Any, BuildStats]:
        """
        Build a tree over a presorted point set.
        Args:
            pre: Validated presorting.
        Returns:
            The built tree and the BuildStats collected while building it.
        """
        pass
