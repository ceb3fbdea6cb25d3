from enum import Enum
from typing import NamedTuple, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.point import Point


class Axis(str, Enum):
    X = "x"
    Y = "y"

    @property
    def other(self) -> "Axis":
        return Axis.Y if self is Axis.X else Axis.X


class RankPoint(NamedTuple):
    """A point in rank space: (x-rank, y-rank), both 1-based."""
    x: int
    y: int


class RankRect(NamedTuple):
    """
    Closed rank-space rectangle [xlo, xhi] x [ylo, yhi].
    Any rect with xlo > xhi or ylo > yhi is empty; EMPTY_RECT is the designated instance.
    """
    xlo: int
    xhi: int
    ylo: int
    yhi: int

    @property
    def is_empty(self) -> bool:
        return self.xlo > self.xhi or self.ylo > self.yhi

    def contains(self, p: RankPoint) -> bool:
        return self.xlo <= p.x <= self.xhi and self.ylo <= p.y <= self.yhi


EMPTY_RECT = RankRect(1, 0, 1, 0)


class Extremes(BaseModel):
    """
    The four extreme points of a region's point set.
    Fields:
    - leftmost, rightmost, bottommost, topmost: Points of the region, all None iff the region is empty.
    """
    model_config = ConfigDict(frozen=True)

    leftmost: Optional[Point] = Field(None, description="Point with minimum x.")
    rightmost: Optional[Point] = Field(None, description="Point with maximum x.")
    bottommost: Optional[Point] = Field(None, description="Point with minimum y.")
    topmost: Optional[Point] = Field(None, description="Point with maximum y.")

    @model_validator(mode="after")
    def _all_or_none(self) -> "Extremes":
        present = [p is not None for p in (self.leftmost, self.rightmost, self.bottommost, self.topmost)]
        if any(present) and not all(present):
            raise ValueError("Extremes must be all present or all absent")
        if all(present):
            if self.leftmost.x > self.rightmost.x or self.bottommost.y > self.topmost.y:
                raise ValueError("Extremes are inconsistent with coordinate order")
        return self

    @property
    def is_empty(self) -> bool:
        return self.leftmost is None

    @property
    def is_single(self) -> bool:
        """True when all four extremes are the same point (a one-point region)."""
        return (not self.is_empty and self.leftmost.id == self.rightmost.id
                == self.bottommost.id == self.topmost.id)


EMPTY_EXTREMES = Extremes()
