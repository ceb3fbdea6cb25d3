from pydantic import BaseModel, ConfigDict, Field, model_validator


class Square(BaseModel):
    """
    An axis-aligned square cell with per-edge boundary semantics.
    Fields:
    - x0, y0: Lower-left corner.
    - x1, y1: Right and top edges, stored explicitly so that split children tile the parent exactly.
    - left, right, bottom, top: True when that edge belongs to the square (closed), False when open.
    """
    model_config = ConfigDict(frozen=True)

    x0: float = Field(..., description="Left edge.")
    y0: float = Field(..., description="Bottom edge.")
    x1: float = Field(..., description="Right edge.")
    y1: float = Field(..., description="Top edge.")
    left: bool = Field(True, description="Left edge closed.")
    right: bool = Field(True, description="Right edge closed.")
    bottom: bool = Field(True, description="Bottom edge closed.")
    top: bool = Field(True, description="Top edge closed.")

    @model_validator(mode="after")
    def _positive_side(self) -> "Square":
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError(f"Square must have positive side: [{self.x0},{self.x1}]x[{self.y0},{self.y1}]")
        return self

    @property
    def side(self) -> float:
        return self.x1 - self.x0

    @property
    def flags(self) -> str:
        """Boundary flags as four letters (left, right, bottom, top): C closed, O open."""
        return "".join("C" if f else "O" for f in (self.left, self.right, self.bottom, self.top))

    def contains(self, x: float, y: float) -> bool:
        inside_x = (x > self.x0 or (x == self.x0 and self.left)) and (x < self.x1 or (x == self.x1 and self.right))
        inside_y = (y > self.y0 or (y == self.y0 and self.bottom)) and (y < self.y1 or (y == self.y1 and self.top))
        return inside_x and inside_y

    def within(self, other: "Square") -> bool:
        """Closure containment of this square inside another."""
        return other.x0 <= self.x0 and self.x1 <= other.x1 and other.y0 <= self.y0 and self.y1 <= other.y1
