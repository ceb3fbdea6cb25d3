from typing import List, Tuple

from pydantic import BaseModel, Field


class Triangulation(BaseModel):
    """
    A triangulation of an x-sorted point set.
    Fields:
    - vertex_ids: Ids of the triangulated points (1-based positions in a_x).
    - triangles: Id triples, each counterclockwise.
    - hull_edges: Convex hull edges as id pairs, counterclockwise.
    """
    vertex_ids: List[int] = Field(default_factory=list)
    triangles: List[Tuple[int, int, int]] = Field(default_factory=list)
    hull_edges: List[Tuple[int, int]] = Field(default_factory=list)

    @property
    def hull_size(self) -> int:
        return len(self.hull_edges)
