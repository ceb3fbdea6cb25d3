import math

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Point(BaseModel):
    """
    Represents one input point of a presorted planar set.
    Fields:
    - x: Real x-coordinate (64-bit float, finite).
    - y: Real y-coordinate (64-bit float, finite).
    - id: 1-based index equal to the point's position in A_x.
    """
    model_config = ConfigDict(frozen=True)

    x: float = Field(..., description="Real x-coordinate.")
    y: float = Field(..., description="Real y-coordinate.")
    id: int = Field(..., ge=1, description="Position of the point in A_x (1-based).")

    @field_validator("x", "y")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"Coordinate must be finite, got {value}")
        return value
