from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from models.rank import Axis


class KdNode(BaseModel):
    """
    One KD-tree node; the split point lives in the node itself.
    Fields:
    - axis: Split axis (x at even depth, y at odd depth).
    - point_id: Id of the median point.
    - left, right: Indices of the children in the node store, None when absent.
    """
    model_config = ConfigDict(frozen=True)

    axis: Axis
    point_id: int = Field(..., ge=1)
    left: Optional[int] = None
    right: Optional[int] = None


class KdTree(BaseModel):
    """
    Fields:
    - nodes: Node store.
    - root: Index of the root, None for an empty tree.
    - n: Number of points.
    """
    nodes: List[KdNode] = Field(default_factory=list)
    root: Optional[int] = None
    n: int = Field(0, ge=0)
