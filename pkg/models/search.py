from typing import List

from pydantic import BaseModel, Field


class SearchStats(BaseModel):
    """
    Per-invocation cost of a skip-list walk.
    Fields:
    - up_steps: Level increments during the initial ascent.
    - right_steps: Boundary advances past an accepted point.
    - down_steps: Level decrements after a rejected (or absent) point.
    - queries: Range-successor and range-count queries issued.
    - right_step_levels: Level at which each right-step happened, in order.
    """
    up_steps: int = Field(0, ge=0)
    right_steps: int = Field(0, ge=0)
    down_steps: int = Field(0, ge=0)
    queries: int = Field(0, ge=0)
    right_step_levels: List[int] = Field(default_factory=list)

    @property
    def steps(self) -> int:
        return self.up_steps + self.right_steps + self.down_steps

    def absorb(self, other: "SearchStats") -> None:
        self.up_steps += other.up_steps
        self.right_steps += other.right_steps
        self.down_steps += other.down_steps
        self.queries += other.queries
        self.right_step_levels.extend(other.right_step_levels)


class QueryTrace(BaseModel):
    """
    Descent record of rank-index queries.
    Fields:
    - max_depth: Deepest wavelet level reached (leaves sit at depth = number of levels).
    - nodes: Wavelet nodes visited.
    """
    max_depth: int = Field(0, ge=0)
    nodes: int = Field(0, ge=0)

    def visit(self, depth: int) -> None:
        self.nodes += 1
        if depth > self.max_depth:
            self.max_depth = depth
