from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from models.square import Square


class NodeKind(str, Enum):
    LEAF = "leaf"
    COMPRESSED = "compressed"
    QUAD = "quad"


class QuadNode(BaseModel):
    """
    One node of a compressed quadtree.
    Fields:
    - square: The cell of the node.
    - kind: Leaf (at most one point), Compressed (one child square inside a quadrant) or Quad (four children).
    - point_id: Id of the point held by a Leaf, None for an empty Leaf and for internal nodes.
    - children: Indices into the tree's node store (1 for Compressed, 4 for Quad in SW, SE, NW, NE order).
    """
    model_config = ConfigDict(frozen=True)

    square: Square
    kind: NodeKind
    point_id: Optional[int] = Field(None, ge=1)
    children: List[int] = Field(default_factory=list)


class CompressedQuadtree(BaseModel):
    """
    A compressed quadtree stored as a flat node list.
    Fields:
    - nodes: Node store; children reference positions in this list.
    - root: Index of the root node.
    - n: Number of points stored.
    """
    nodes: List[QuadNode] = Field(default_factory=list)
    root: int = 0
    n: int = Field(0, ge=0)

    def node(self, ref: int) -> QuadNode:
        return self.nodes[ref]

    def leaf_ids(self) -> List[int]:
        return [nd.point_id for nd in self.nodes if nd.kind == NodeKind.LEAF and nd.point_id is not None]


class BuildStats(BaseModel):
    """
    Counters populated while a presorted builder runs.
    Fields:
    - type1_splits: Compressed hops created.
    - type2_splits: Four-way quadrant splits created.
    - median_splits: Median searches performed (KD-tree builds).
    - total_skiplist_steps: Sum of up-, right- and down-steps over all searches.
    - total_range_queries: Sum of range queries over all searches.
    - max_node_steps: Largest step count spent on a single node.
    - steps_by_depth: Skip-list steps per recursion depth.
    """
    type1_splits: int = Field(0, ge=0)
    type2_splits: int = Field(0, ge=0)
    median_splits: int = Field(0, ge=0)
    total_skiplist_steps: int = Field(0, ge=0)
    total_range_queries: int = Field(0, ge=0)
    max_node_steps: int = Field(0, ge=0)
    steps_by_depth: Dict[int, int] = Field(default_factory=dict)

    def record_node(self, depth: int, steps: int, queries: int) -> None:
        self.total_skiplist_steps += steps
        self.total_range_queries += queries
        self.max_node_steps = max(self.max_node_steps, steps)
        self.steps_by_depth[depth] = self.steps_by_depth.get(depth, 0) + steps
