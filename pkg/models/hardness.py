from typing import FrozenSet, List, NamedTuple, Tuple

from pydantic import BaseModel, Field


class OnionFamilyInstance(BaseModel):
    """
    One member of the onion-layer lower-bound family.
    Fields:
    - points: P1, P2, P3 then Q, each group listed in generation order.
    - sigma: 1-based permutation of [n/4] that drives the placement of Q.
    """
    points: List[Tuple[float, float]]
    sigma: List[int]

    @property
    def n(self) -> int:
        return len(self.points)


class OnionDecomposition(BaseModel):
    """
    Ordered hull-peeling layers.
    Fields:
    - layers: Disjoint sets of 0-based point positions, outermost layer first.
    """
    layers: List[FrozenSet[int]] = Field(default_factory=list)

    def layer_of(self, index: int) -> int:
        for depth, layer in enumerate(self.layers):
            if index in layer:
                return depth
        raise KeyError(index)


class PairDistance(NamedTuple):
    distance: float
    i: int
    j: int
