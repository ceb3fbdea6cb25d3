import json
from typing import Any, Callable, Dict, List, Optional, Tuple, TypeVar

import pandas as pd
from pydantic import ValidationError

from geometry.presorting import make_presorting, validate_presorting
from models.kdtree import KdNode, KdTree
from models.presorting import Presorting
from models.quadtree import CompressedQuadtree, NodeKind, QuadNode
from models.rank import Axis
from models.segment import Orientation, OrthoSegment
from models.square import Square
from utils.errors import InputFileError

# data_loader.py: Readers for every text format the CLI consumes.
# Each reader raises InputFileError naming the file and, where it applies, the offending line.

Coords = Tuple[float, float]
T = TypeVar("T")

LOAD_ERRORS = (ValidationError, KeyError, ValueError, IndexError, OSError, json.JSONDecodeError)


def _read_lines(path: str) -> List[str]:
    try:
        with open(path, "r") as f:
            return [line.strip() for line in f if line.strip() and not line.startswith("#")]
    except OSError as e:
        raise InputFileError(f"{path}: {e}") from e


def _parse(path: str, lineno: int, parse: Callable[[], T]) -> T:
    try:
        return parse()
    except LOAD_ERRORS as e:
        raise InputFileError(f"{path}:{lineno}: {e}") from e


def _count_header(path: str, lines: List[str]) -> int:
    if not lines:
        raise InputFileError(f"{path}: empty file")
    n = _parse(path, 1, lambda: int(lines[0].split()[-1]))
    if n < 0 or len(lines) < n + 1:
        raise InputFileError(f"{path}: header announces {n} records, file has {len(lines) - 1}")
    return n


def _point(path: str, lineno: int, line: str) -> Coords:
    def parse() -> Coords:
        x, y = line.split()
        return float(x), float(y)
    return _parse(path, lineno, parse)


def load_points(path: str) -> List[Coords]:
    """
    Load a point file: first line n, then n lines `x y`.
    """
    lines = _read_lines(path)
    n = _count_header(path, lines)
    return [_point(path, i + 2, lines[i + 1]) for i in range(n)]


def load_presorting(path: str) -> Presorting:
    """
    Load a presorting file (a point file in x order followed by one line of 1-based pi values).
    A bare point file is accepted too; its presorting is then computed by sorting.
    Step-by-step:
    1. Read the points.
    2. If a pi line follows, rebuild a_y from a_x and pi and validate the triple.
    3. Otherwise sort the points both ways.
    """
    lines = _read_lines(path)
    n = _count_header(path, lines)
    a_x = [_point(path, i + 2, lines[i + 1]) for i in range(n)]
    if len(lines) > n + 1:
        pi = _parse(path, n + 2, lambda: [int(v) for v in lines[n + 1].split()])

        def build() -> Presorting:
            a_y: List[Optional[Coords]] = [None] * n
            for i, j in enumerate(pi):
                a_y[j - 1] = a_x[i]
            return validate_presorting(a_x, a_y, pi)
        return _parse(path, n + 2, build)
    return _parse(path, 1, lambda: make_presorting(a_x))


def load_segments(path: str) -> List[OrthoSegment]:
    """
    Load a segment file: first line n, then n lines `H|V fixed lo hi`. Ids are 1-based line order.
    """
    lines = _read_lines(path)
    n = _count_header(path, lines)
    segments = []
    for i in range(n):
        def parse(i: int = i) -> OrthoSegment:
            kind, fixed, lo, hi = lines[i + 1].split()
            return OrthoSegment(id=i + 1, orientation=Orientation(kind.upper()),
                                fixed=float(fixed), lo=float(lo), hi=float(hi))
        segments.append(_parse(path, i + 2, parse))
    return segments


def load_quadtree(path: str) -> CompressedQuadtree:
    """
    Load a pre-order quadtree file: header `quadtree n`, then one node per line
    `kind x0 y0 x1 y1 flags [pointid]`.
    """
    lines = _read_lines(path)
    n = _count_header(path, lines)
    nodes: List[Optional[QuadNode]] = []
    # slots still waiting for their node line, next one on top
    pending: List[int] = []
    cursor = 1

    def parse_node(line: str) -> Tuple[NodeKind, Square, Optional[int]]:
        parts = line.split()
        kind = NodeKind(parts[0])
        x0, y0, x1, y1 = (float(v) for v in parts[1:5])
        flags = parts[5]
        if len(flags) != 4 or set(flags) - {"C", "O"}:
            raise ValueError(f"bad flags {flags!r}")
        left, right, bottom, top = (c == "C" for c in flags)
        square = Square(x0=x0, y0=y0, x1=x1, y1=y1, left=left, right=right, bottom=bottom, top=top)
        point_id = int(parts[6]) if len(parts) > 6 else None
        return kind, square, point_id

    nodes.append(None)
    pending.append(0)
    children_of: Dict[int, List[int]] = {}
    raw: Dict[int, Tuple[NodeKind, Square, Optional[int]]] = {}
    while pending:
        slot = pending.pop()
        if cursor >= len(lines):
            raise InputFileError(f"{path}: truncated tree, node {slot} has no line")
        kind, square, point_id = _parse(path, cursor + 1, lambda: parse_node(lines[cursor]))
        cursor += 1
        arity = {NodeKind.LEAF: 0, NodeKind.COMPRESSED: 1, NodeKind.QUAD: 4}[kind]
        kids = []
        for _ in range(arity):
            nodes.append(None)
            kids.append(len(nodes) - 1)
        raw[slot] = (kind, square, point_id)
        children_of[slot] = kids
        pending.extend(reversed(kids))
    if cursor != len(lines):
        raise InputFileError(f"{path}:{cursor + 1}: trailing lines after the tree")
    built = [QuadNode(square=raw[s][1], kind=raw[s][0], point_id=raw[s][2], children=children_of[s])
             for s in range(len(nodes))]
    return CompressedQuadtree(nodes=built, root=0, n=n)


def load_kdtree(path: str) -> KdTree:
    """
    Load a pre-order KD-tree file: header `kdtree n`, then one node per line `axis pointid L R`
    where L and R are 1 when the child exists.
    """
    lines = _read_lines(path)
    n = _count_header(path, lines)
    if n == 0:
        return KdTree(nodes=[], root=None, n=0)
    fields: Dict[int, Tuple[Axis, int, Optional[int], Optional[int]]] = {}
    count = 1
    pending = [0]
    cursor = 1
    while pending:
        slot = pending.pop()
        if cursor >= len(lines):
            raise InputFileError(f"{path}: truncated tree, node {slot} has no line")

        def parse(line: str = lines[cursor]) -> Tuple[Axis, int, bool, bool]:
            axis, pid, has_left, has_right = line.split()
            return Axis(axis), int(pid), has_left == "1", has_right == "1"
        axis, pid, has_left, has_right = _parse(path, cursor + 1, parse)
        cursor += 1
        left = right = None
        if has_left:
            left, count = count, count + 1
        if has_right:
            right, count = count, count + 1
        fields[slot] = (axis, pid, left, right)
        if right is not None:
            pending.append(right)
        if left is not None:
            pending.append(left)
    if cursor != len(lines):
        raise InputFileError(f"{path}:{cursor + 1}: trailing lines after the tree")
    nodes = [_parse(path, 1, lambda s=s: KdNode(axis=fields[s][0], point_id=fields[s][1],
                                                 left=fields[s][2], right=fields[s][3]))
             for s in range(count)]
    return KdTree(nodes=nodes, root=0, n=n)


def load_triangles(path: str) -> List[Tuple[int, int, int]]:
    """Load a triangle file: one `i j k` line per triangle, 1-based ids."""
    triangles = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        def parse(line: str = line) -> Tuple[int, int, int]:
            i, j, k = (int(v) for v in line.split())
            return i, j, k
        triangles.append(_parse(path, lineno, parse))
    return triangles


def load_intersection(path: str) -> Optional[Tuple[int, int]]:
    """Load an intersection answer file: `none`, or one line `i j` with the pair's segment ids."""
    lines = _read_lines(path)
    if not lines:
        raise InputFileError(f"{path}: empty file")
    if lines[0] == "none":
        return None

    def parse() -> Tuple[int, int]:
        i, j = (int(v) for v in lines[0].split())
        return min(i, j), max(i, j)
    return _parse(path, 1, parse)


def load_metadata(path: str) -> Dict[str, Any]:
    """Load a JSON metadata sidecar."""
    try:
        with open(path, "r") as f:
            return json.load(f)
    except LOAD_ERRORS as e:
        raise InputFileError(f"{path}: {e}") from e


def load_csv(path: str) -> pd.DataFrame:
    """Load a CSV written by the reporting module (header comment lines are skipped)."""
    try:
        return pd.read_csv(path, comment="#")
    except LOAD_ERRORS as e:
        raise InputFileError(f"{path}: {e}") from e
