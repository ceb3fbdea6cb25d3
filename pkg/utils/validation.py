from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from geometry.hull import convex_hull
from geometry.predicates import orient2d, signed_area2
from geometry.squares import split
from models.kdtree import KdTree
from models.point import Point
from models.quadtree import CompressedQuadtree, NodeKind
from models.rank import Axis
from models.triangulation import Triangulation
from models.violation import Violation
from utils.errors import PresortGeomError

# validation.py: Structure verifiers and equality oracles.
# Verifiers never raise: every failed check becomes a Violation so a caller sees all of them at once.

Coords = Tuple[float, float]


def trees_equal(a: CompressedQuadtree, b: CompressedQuadtree) -> bool:
    """
    Structural and geometric equality of two compressed quadtrees.
    Squares (with boundary flags), node kinds and leaf point ids must agree under simultaneous traversal.
    """
    if a.n != b.n or len(a.nodes) != len(b.nodes):
        return False
    stack = [(a.root, b.root)]
    while stack:
        ra, rb = stack.pop()
        na, nb = a.node(ra), b.node(rb)
        if na.kind != nb.kind or na.point_id != nb.point_id or na.square != nb.square:
            return False
        if len(na.children) != len(nb.children):
            return False
        stack.extend(zip(na.children, nb.children))
    return True


def verify_quadtree(tree: CompressedQuadtree, points: Sequence[Point]) -> List[Violation]:
    """
    Check a compressed quadtree against its point set.
    Step-by-step:
    1. Every point must lie in the root square.
    2. Quad children must equal split(parent); each parent point must fall in exactly one child.
    3. A Compressed child must sit inside one quadrant, contain every parent point and not be Compressed itself.
    4. Leaves hold at most one point and name it correctly.
    5. Every node must be reachable exactly once.
    """
    violations: List[Violation] = []
    if not tree.nodes:
        return [Violation(code="structure", detail="Tree has no nodes")]
    root = tree.node(tree.root)
    # Step 1: root coverage
    members = [p for p in points if root.square.contains(p.x, p.y)]
    for p in points:
        if not root.square.contains(p.x, p.y):
            violations.append(Violation(code="partition", detail=f"Point {p.id} lies outside the root square"))
    seen: Set[int] = set()
    stack: List[Tuple[int, List[Point]]] = [(tree.root, members)]
    while stack:
        ref, inside = stack.pop()
        if not 0 <= ref < len(tree.nodes):
            violations.append(Violation(code="structure", detail=f"Dangling child reference {ref}"))
            continue
        if ref in seen:
            violations.append(Violation(code="structure", detail=f"Node {ref} reachable twice"))
            continue
        seen.add(ref)
        node = tree.node(ref)
        if node.kind == NodeKind.LEAF:
            # Step 4: occupancy
            if len(inside) > 1:
                violations.append(Violation(code="occupancy", detail=f"Leaf {ref} holds {len(inside)} points"))
            expected = inside[0].id if len(inside) == 1 else None
            if len(inside) <= 1 and node.point_id != expected:
                violations.append(Violation(
                    code="leaf-id", detail=f"Leaf {ref} names point {node.point_id}, contains {expected}"))
            continue
        try:
            quadrants = split(node.square)
        except PresortGeomError as e:
            violations.append(Violation(code="resolution", detail=f"Node {ref}: {e}"))
            continue
        if node.kind == NodeKind.QUAD:
            # Step 2: exact split and point partition
            if len(node.children) != 4:
                violations.append(Violation(code="structure", detail=f"Quad {ref} has {len(node.children)} children"))
                continue
            parts: List[List[Point]] = [[], [], [], []]
            for i, (child, quadrant) in enumerate(zip(node.children, quadrants)):
                if 0 <= child < len(tree.nodes) and tree.node(child).square != quadrant:
                    violations.append(Violation(
                        code="quad-split", detail=f"Child {i} of node {ref} differs from its quadrant"))
            for p in inside:
                owners = [i for i, c in enumerate(node.children)
                          if 0 <= c < len(tree.nodes) and tree.node(c).square.contains(p.x, p.y)]
                if len(owners) != 1:
                    violations.append(Violation(
                        code="partition", detail=f"Point {p.id} falls in {len(owners)} children of node {ref}"))
                for i in owners:
                    parts[i].append(p)
            for child, part in zip(node.children, parts):
                stack.append((child, part))
            continue
        # Step 3: compressed hop
        if len(node.children) != 1 or not 0 <= node.children[0] < len(tree.nodes):
            violations.append(Violation(code="structure", detail=f"Compressed node {ref} needs one valid child"))
            continue
        child = tree.node(node.children[0])
        if not any(child.square.within(q) for q in quadrants):
            violations.append(Violation(
                code="compressed-quadrant", detail=f"Child of compressed node {ref} is not inside one quadrant"))
        missing = [p.id for p in inside if not child.square.contains(p.x, p.y)]
        if missing:
            violations.append(Violation(
                code="partition", detail=f"Compressed child of node {ref} misses points {missing[:5]}"))
        if child.kind == NodeKind.COMPRESSED:
            violations.append(Violation(code="double-compressed", detail=f"Compressed node {ref} has a compressed child"))
        stack.append((node.children[0], [p for p in inside if child.square.contains(p.x, p.y)]))
    # Step 5: reachability
    unreachable = len(tree.nodes) - len(seen)
    if unreachable > 0:
        violations.append(Violation(code="structure", detail=f"{unreachable} nodes are unreachable from the root"))
    return violations


def kd_trees_equal(a: KdTree, b: KdTree) -> bool:
    """Simultaneous traversal; split point ids and axes must agree at every node."""
    if a.n != b.n:
        return False
    stack: List[Tuple[Optional[int], Optional[int]]] = [(a.root, b.root)]
    while stack:
        ra, rb = stack.pop()
        if ra is None or rb is None:
            if ra is not rb:
                return False
            continue
        na, nb = a.nodes[ra], b.nodes[rb]
        if na.axis != nb.axis or na.point_id != nb.point_id:
            return False
        stack.append((na.left, nb.left))
        stack.append((na.right, nb.right))
    return True


def _axis_value(p: Point, axis: Axis) -> float:
    return p.x if axis == Axis.X else p.y


def verify_kdtree(tree: KdTree, points: Sequence[Point]) -> List[Violation]:
    """
    Check the median convention at every node: axes alternate starting with x, the node holds the
    point of index floor((m-1)/2) along its axis, smaller points go left and larger ones right.
    """
    violations: List[Violation] = []
    if tree.root is None:
        if points:
            violations.append(Violation(code="coverage", detail=f"Empty tree for {len(points)} points"))
        return violations
    stack: List[Tuple[Optional[int], int, List[Point]]] = [(tree.root, 0, list(points))]
    while stack:
        ref, depth, members = stack.pop()
        if ref is None:
            if members:
                violations.append(Violation(code="coverage", detail=f"{len(members)} points have no subtree"))
            continue
        node = tree.nodes[ref]
        if not members:
            violations.append(Violation(code="coverage", detail=f"Node {ref} has no points to hold"))
            continue
        expected_axis = Axis.X if depth % 2 == 0 else Axis.Y
        if node.axis != expected_axis:
            violations.append(Violation(code="axis", detail=f"Node {ref} at depth {depth} splits on {node.axis.value}"))
        ordered = sorted(members, key=lambda p: _axis_value(p, expected_axis))
        k = (len(ordered) - 1) // 2
        if ordered[k].id != node.point_id:
            violations.append(Violation(
                code="median", detail=f"Node {ref} holds {node.point_id}, median is {ordered[k].id}"))
            continue
        stack.append((node.left, depth + 1, ordered[:k]))
        stack.append((node.right, depth + 1, ordered[k + 1:]))
    return violations


def _crossing_pairs(coords: np.ndarray, edges: List[Tuple[int, int]]) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Edge pairs that cross properly (interiors meet, no shared endpoint)."""
    if len(edges) < 2:
        return []
    e = np.array(edges, dtype=np.int64)
    a, b = coords[e[:, 0]], coords[e[:, 1]]
    found = []
    for i in range(len(edges) - 1):
        p, q = a[i], b[i]
        c, d = a[i + 1:], b[i + 1:]

        def side(u, v, w):
            return np.sign((v[..., 0] - u[..., 0]) * (w[..., 1] - u[..., 1])
                           - (v[..., 1] - u[..., 1]) * (w[..., 0] - u[..., 0]))

        crosses = (side(p, q, c) * side(p, q, d) < 0) & (side(c, d, p) * side(c, d, q) < 0)
        shared = ((e[i + 1:, 0] == e[i, 0]) | (e[i + 1:, 0] == e[i, 1])
                  | (e[i + 1:, 1] == e[i, 0]) | (e[i + 1:, 1] == e[i, 1]))
        for j in np.flatnonzero(crosses & ~shared):
            found.append((edges[i], edges[i + 1 + int(j)]))
    return found


def _find(parent: Dict[int, int], v: int) -> int:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def verify_triangulation(points: Sequence[Coords], t: Triangulation) -> List[Violation]:
    """
    Check a triangulation of `points` (ids are 1-based list positions).
    Step-by-step:
    1. Triangle count equals 2n - 2 - h and every id is valid.
    2. Every triangle is counterclockwise.
    3. No two edges cross properly.
    4. Every hull edge is present and every point is a vertex.
    5. The edge graph is connected and the triangle areas sum to the hull area.
    """
    violations: List[Violation] = []
    n = len(points)
    # Step 1: Euler count
    hull = convex_hull(points)
    h = len(hull)
    expected = 2 * n - 2 - h
    if len(t.triangles) != expected:
        violations.append(Violation(code="count", detail=f"{len(t.triangles)} triangles, expected {expected}"))
    bad = [tri for tri in t.triangles if not all(1 <= v <= n for v in tri)]
    if bad:
        violations.append(Violation(code="structure", detail=f"Triangles with unknown ids: {bad[:5]}"))
        return violations
    # Step 2: orientation
    for tri in t.triangles:
        i, j, k = (v - 1 for v in tri)
        if orient2d(points[i], points[j], points[k]) <= 0:
            violations.append(Violation(code="orientation", detail=f"Triangle {tri} is not counterclockwise"))
    # Step 3: crossings
    edges: Set[Tuple[int, int]] = set()
    for tri in t.triangles:
        for u, v in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            edges.add((min(u, v) - 1, max(u, v) - 1))
    edge_list = sorted(edges)
    coords = np.asarray(points, dtype=float)
    for e1, e2 in _crossing_pairs(coords, edge_list):
        violations.append(Violation(code="crossing", detail=f"Edges {e1} and {e2} cross"))
    # Step 4: hull edges and coverage
    for idx in range(h):
        u, v = hull[idx], hull[(idx + 1) % h]
        if (min(u, v), max(u, v)) not in edges:
            violations.append(Violation(code="hull", detail=f"Hull edge ({u + 1}, {v + 1}) missing"))
    used = {v for tri in t.triangles for v in tri}
    missing = [pid for pid in range(1, n + 1) if pid not in used]
    if missing:
        violations.append(Violation(code="coverage", detail=f"Points {missing[:5]} are in no triangle"))
    # Step 5: connectivity and area
    parent = {v: v for v in range(n)}
    for u, v in edge_list:
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[ru] = rv
    roots = {_find(parent, v) for v in range(n)}
    if len(roots) > 1:
        violations.append(Violation(code="connectivity", detail=f"Edge graph has {len(roots)} components"))
    hull_area = sum(signed_area2(points[hull[0]], points[hull[i]], points[hull[i + 1]]) for i in range(1, h - 1))
    tri_area = sum(abs(signed_area2(points[a - 1], points[b - 1], points[c - 1])) for a, b, c in t.triangles)
    if not np.isclose(tri_area, hull_area, rtol=1e-9, atol=1e-12):
        violations.append(Violation(code="area", detail=f"Triangles cover {tri_area / 2}, hull area is {hull_area / 2}"))
    return violations
