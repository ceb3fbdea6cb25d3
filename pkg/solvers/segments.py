# segments.py: Orthogonal segment intersection detection from presorted endpoints.
#
# All event ordering below is driven by endpoint ranks; coordinates are compared only for
# equality between neighbours of a presorted order, to collapse ties into dense ranks.

from typing import Dict, List, Optional, Sequence, Tuple

from models.segment import EndpointPresorting, EndpointRef, Orientation, OrthoSegment, Role
from structures.veb import VebSet
from utils.errors import InvalidParams
from utils.logging import get_logger

logger = get_logger("Segments")

Pair = Tuple[int, int]


def make_endpoint_presorting(segments: Sequence[OrthoSegment]) -> EndpointPresorting:
    """
    Sort the 2n endpoints along both axes, ties broken by (coordinate, segment id, role).
    Segment ids must be 1..n in list order.
    """
    for i, s in enumerate(segments, start=1):
        if s.id != i:
            raise InvalidParams(f"Segment at position {i} has id {s.id}; ids must be 1..n in order")
    refs = [EndpointRef(s.id, role) for s in segments for role in (Role.LO, Role.HI)]

    def key(axis: int):
        return lambda r: (segments[r.segment - 1].endpoint(r.role)[axis], r.segment, r.role.value)

    x_order = sorted(refs, key=key(0))
    y_order = sorted(refs, key=key(1))
    y_pos = {ref: i for i, ref in enumerate(y_order, start=1)}
    return EndpointPresorting(segments=list(segments), x_order=x_order, y_order=y_order,
                              pi=[y_pos[ref] for ref in x_order])


def _dense_ranks(ep: EndpointPresorting, order: List[EndpointRef], axis: int) -> Dict[EndpointRef, int]:
    """Rank of each endpoint where equal coordinates share a rank (0-based, gapless)."""
    ranks: Dict[EndpointRef, int] = {}
    rank = -1
    prev = None
    for ref in order:
        c = ep.coordinate(ref, axis)
        if prev is None or c != prev:
            rank += 1
            prev = c
        ranks[ref] = rank
    return ranks


def _collinear_overlap(ep: EndpointPresorting, order: List[EndpointRef], bucket_rank: Dict[EndpointRef, int],
                       span_rank: Dict[EndpointRef, int], orientation: Orientation) -> Optional[Pair]:
    """
    Overlap among segments of one orientation sharing their fixed coordinate.
    Segments are bucketed by the dense rank of the fixed coordinate and arrive in each bucket in
    order of their low endpoint; a running maximum of high-endpoint ranks detects any overlap.
    """
    reach: Dict[int, Tuple[int, int]] = {}
    for ref in order:
        seg = ep.segments[ref.segment - 1]
        if seg.orientation != orientation or ref.role != Role.LO:
            continue
        bucket = bucket_rank[ref]
        lo = span_rank[ref]
        hi = span_rank[EndpointRef(seg.id, Role.HI)]
        if bucket in reach:
            best_hi, owner = reach[bucket]
            if lo <= best_hi:
                return owner, seg.id
            if hi > best_hi:
                reach[bucket] = (hi, seg.id)
        else:
            reach[bucket] = (hi, seg.id)
    return None


def _universe(size: int) -> int:
    u = 2
    while u < size:
        u *= 2
    return u


def _sweep_crossings(ep: EndpointPresorting, dense_x: Dict[EndpointRef, int],
                     dense_y: Dict[EndpointRef, int]) -> Optional[Pair]:
    """
    Horizontal against vertical: a left-to-right sweep over x-rank groups.
    In each group horizontals starting there are inserted, verticals there are queried, and
    horizontals ending there are deleted, so touching endpoints count as intersections.
    """
    active = VebSet(_universe(2 * ep.n))
    owner: Dict[int, int] = {}
    order = ep.x_order
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and dense_x[order[j]] == dense_x[order[i]]:
            j += 1
        group = order[i:j]
        for ref in group:
            seg = ep.segments[ref.segment - 1]
            if seg.is_horizontal and ref.role == Role.LO:
                key = dense_y[ref]
                active.insert(key)
                owner[key] = seg.id
        for ref in group:
            seg = ep.segments[ref.segment - 1]
            if seg.is_horizontal or ref.role != Role.LO:
                continue
            lo = dense_y[ref]
            hi = dense_y[EndpointRef(seg.id, Role.HI)]
            hit = active.min if lo == 0 else active.succ(lo - 1)
            if hit is not None and hit <= hi:
                a, b = owner[hit], seg.id
                return min(a, b), max(a, b)
        for ref in group:
            seg = ep.segments[ref.segment - 1]
            if seg.is_horizontal and ref.role == Role.HI:
                key = dense_y[ref]
                active.delete(key)
                owner.pop(key, None)
        i = j
    return None


def detect_intersection(ep: EndpointPresorting) -> Optional[Pair]:
    """
    First witnessed intersecting pair (smaller id first), or None.
    Step-by-step:
    1. Dense x- and y-ranks from one pass over each presorted order.
    2. Horizontal pairs: bucket by y-rank, scan each bucket in x order.
    3. Vertical pairs: bucket by x-rank, scan each bucket in y order.
    4. Mixed pairs: sweep in x with active horizontals keyed by y-rank in a van Emde Boas set.
    """
    if ep.n < 2:
        return None
    # Step 1: ranks
    dense_x = _dense_ranks(ep, ep.x_order, 0)
    dense_y = _dense_ranks(ep, ep.y_order, 1)
    # Steps 2-4
    found = _collinear_overlap(ep, ep.x_order, dense_y, dense_x, Orientation.HORIZONTAL)
    if found is None:
        found = _collinear_overlap(ep, ep.y_order, dense_x, dense_y, Orientation.VERTICAL)
    if found is None:
        found = _sweep_crossings(ep, dense_x, dense_y)
    if found is not None:
        found = (min(found), max(found))
    logger.debug(f"detect_intersection n={ep.n} result={found}")
    return found


def segments_intersect(a: OrthoSegment, b: OrthoSegment) -> bool:
    """Closed-segment intersection test."""
    if a.orientation == b.orientation:
        return a.fixed == b.fixed and a.lo <= b.hi and b.lo <= a.hi
    h, v = (a, b) if a.is_horizontal else (b, a)
    return h.lo <= v.fixed <= h.hi and v.lo <= h.fixed <= v.hi


def brute_force_pairs(segs: Sequence[OrthoSegment]) -> List[Pair]:
    """All intersecting pairs (by id, smaller first) under closed-segment semantics."""
    pairs = []
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if segments_intersect(segs[i], segs[j]):
                a, b = segs[i].id, segs[j].id
                pairs.append((min(a, b), max(a, b)))
    return pairs


def gen_distinctness_segments(values: Sequence[float]) -> List[OrthoSegment]:
    """
    Element distinctness as segment intersection: value i becomes a unit horizontal segment at
    height v, shifted right by a small positional offset. Two segments meet iff their values are equal.
    """
    n = len(values)
    return [OrthoSegment(id=i + 1, orientation=Orientation.HORIZONTAL, fixed=float(v),
                         lo=i / (2 * n), hi=1.0 + i / (2 * n))
            for i, v in enumerate(values)]
