from enum import Enum
from typing import List, NamedTuple, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Orientation(str, Enum):
    HORIZONTAL = "H"
    VERTICAL = "V"


class Role(int, Enum):
    LO = 0
    HI = 1


class OrthoSegment(BaseModel):
    """
    An axis-parallel closed segment.
    Fields:
    - id: 1-based segment id.
    - orientation: H (fixed y) or V (fixed x).
    - fixed: The shared coordinate.
    - lo, hi: Span along the free axis, lo < hi.
    """
    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=1)
    orientation: Orientation
    fixed: float
    lo: float
    hi: float

    @model_validator(mode="after")
    def _positive_length(self) -> "OrthoSegment":
        if not self.lo < self.hi:
            raise ValueError(f"Segment {self.id} must satisfy lo < hi, got [{self.lo}, {self.hi}]")
        return self

    @property
    def is_horizontal(self) -> bool:
        return self.orientation == Orientation.HORIZONTAL

    def endpoint(self, role: Role) -> Tuple[float, float]:
        t = self.lo if role == Role.LO else self.hi
        return (t, self.fixed) if self.is_horizontal else (self.fixed, t)


class EndpointRef(NamedTuple):
    segment: int
    role: Role


class EndpointPresorting(BaseModel):
    """
    Presorting of the 2n segment endpoints, ties broken by (coordinate, segment id, role).
    Fields:
    - segments: The segments, indexed by id - 1.
    - x_order: Endpoint annotations in x order.
    - y_order: Endpoint annotations in y order.
    - pi: 1-based position of x_order[i] inside y_order.
    """
    segments: List[OrthoSegment]
    x_order: List[EndpointRef]
    y_order: List[EndpointRef]
    pi: List[int]

    @property
    def n(self) -> int:
        return len(self.segments)

    def coordinate(self, ref: EndpointRef, axis: int) -> float:
        return self.segments[ref.segment - 1].endpoint(ref.role)[axis]
