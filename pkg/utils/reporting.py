# reporting.py: Writers for every text, JSON and CSV artifact the CLI produces.
# Output is deterministic: floats use the shortest round-trip representation, trees are written
# in pre-order and JSON keys are sorted, so equal inputs give byte-identical files.

import json
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from models.kdtree import KdTree
from models.quadtree import CompressedQuadtree
from models.segment import OrthoSegment
from structures.level_stack import RNG_ALGORITHM

Coords = Tuple[float, float]

CSV_VERSION = 1


def fmt(v: float) -> str:
    return repr(float(v))


def _write(path: str, text: str) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(text)


def format_points(points: Sequence[Coords]) -> str:
    lines = [str(len(points))] + [f"{fmt(x)} {fmt(y)}" for x, y in points]
    return "\n".join(lines) + "\n"


def write_points(path: str, points: Sequence[Coords]) -> None:
    """Point file: first line n, then n lines `x y`."""
    _write(path, format_points(points))


def write_segments(path: str, segments: Sequence[OrthoSegment]) -> None:
    lines = [str(len(segments))] + [f"{s.orientation.value} {fmt(s.fixed)} {fmt(s.lo)} {fmt(s.hi)}" for s in segments]
    _write(path, "\n".join(lines) + "\n")


def serialize_quadtree(tree: CompressedQuadtree) -> str:
    """Pre-order text, one node per line: `kind x0 y0 x1 y1 flags [pointid]`."""
    lines = [f"quadtree {tree.n}"]
    stack = [tree.root]
    while stack:
        node = tree.node(stack.pop())
        sq = node.square
        line = f"{node.kind.value} {fmt(sq.x0)} {fmt(sq.y0)} {fmt(sq.x1)} {fmt(sq.y1)} {sq.flags}"
        if node.point_id is not None:
            line += f" {node.point_id}"
        lines.append(line)
        stack.extend(reversed(node.children))
    return "\n".join(lines) + "\n"


def serialize_kdtree(tree: KdTree) -> str:
    """Pre-order text, one node per line: `axis pointid L R` with L, R = 1 when the child exists."""
    lines = [f"kdtree {tree.n}"]
    stack: List[Optional[int]] = [tree.root]
    while stack:
        ref = stack.pop()
        if ref is None:
            continue
        node = tree.nodes[ref]
        lines.append(f"{node.axis.value} {node.point_id} {int(node.left is not None)} {int(node.right is not None)}")
        stack.append(node.right)
        stack.append(node.left)
    return "\n".join(lines) + "\n"


def write_quadtree(path: str, tree: CompressedQuadtree) -> None:
    _write(path, serialize_quadtree(tree))


def write_kdtree(path: str, tree: KdTree) -> None:
    _write(path, serialize_kdtree(tree))


def write_triangles(path: str, triangles: Sequence[Tuple[int, int, int]]) -> None:
    _write(path, "".join(f"{i} {j} {k}\n" for i, j, k in triangles))


def write_text(path: str, text: str) -> None:
    _write(path, text)


def metadata_path(path: str) -> str:
    return path + ".json"


def write_metadata(path: str, family: str, params: Dict[str, Any], seed: Optional[int]) -> str:
    """
    Write the JSON sidecar of an instance file and return its path.
    The sidecar records the family, its parameters, the seed and the PRNG algorithm.
    """
    meta = {"family": family, "params": params, "seed": seed, "rng": RNG_ALGORITHM}
    side = metadata_path(path)
    _write(side, json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return side


def write_csv(path: str, frame: pd.DataFrame, kind: str) -> None:
    """
    Write a CSV preceded by a versioned header comment naming its columns and the PRNG.
    """
    header = f"# presort-geom {kind} v{CSV_VERSION} rng={RNG_ALGORITHM} columns={','.join(frame.columns)}\n"
    _write(path, header + frame.to_csv(index=False, lineterminator="\n"))
