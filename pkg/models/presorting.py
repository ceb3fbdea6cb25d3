from typing import List

from pydantic import BaseModel, ConfigDict, Field

from models.point import Point


class Presorting(BaseModel):
    """
    The universal input: a point set sorted along both axes plus the permutation linking them.
    Fields:
    - a_x: Points sorted by strictly increasing x.
    - a_y: The same points sorted by strictly increasing y.
    - pi: 1-based permutation with a_x[i] == a_y[pi[i] - 1] (0-based i).
    Build instances through geometry.presorting.validate_presorting or make_presorting.
    """
    model_config = ConfigDict(frozen=True)

    a_x: List[Point] = Field(..., description="Points in x order.")
    a_y: List[Point] = Field(..., description="Points in y order.")
    pi: List[int] = Field(..., description="x-order position -> y-order position (1-based).")

    @property
    def n(self) -> int:
        return len(self.a_x)

    def y_index(self, p: Point) -> int:
        return self.pi[p.id - 1]
