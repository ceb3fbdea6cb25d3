# predicates.py: Exact orientation test with an error-bounded floating-point filter.

from fractions import Fraction
from typing import Sequence

EPSILON = 2.0 ** -53
CCW_ERRBOUND = (3.0 + 16.0 * EPSILON) * EPSILON


def _exact(pa: Sequence[float], pb: Sequence[float], pc: Sequence[float]) -> int:
    ax, ay = Fraction(pa[0]), Fraction(pa[1])
    bx, by = Fraction(pb[0]), Fraction(pb[1])
    cx, cy = Fraction(pc[0]), Fraction(pc[1])
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return int(det > 0) - int(det < 0)


def orient2d(pa: Sequence[float], pb: Sequence[float], pc: Sequence[float]) -> int:
    """
    Sign of the orientation of (pa, pb, pc): +1 counterclockwise, -1 clockwise, 0 collinear.
    The float determinant is trusted when it clears the forward error bound; otherwise the
    sign is recomputed exactly over rationals.
    """
    detleft = (pa[0] - pc[0]) * (pb[1] - pc[1])
    detright = (pa[1] - pc[1]) * (pb[0] - pc[0])
    det = detleft - detright
    if detleft > 0.0:
        if detright <= 0.0:
            return int(det > 0) - int(det < 0)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return int(det > 0) - int(det < 0)
        detsum = -detleft - detright
    else:
        return _exact(pa, pb, pc)
    errbound = CCW_ERRBOUND * detsum
    if det >= errbound or -det >= errbound:
        return int(det > 0) - int(det < 0)
    return _exact(pa, pb, pc)


def signed_area2(pa: Sequence[float], pb: Sequence[float], pc: Sequence[float]) -> float:
    """Twice the signed area of triangle (pa, pb, pc) in plain floats."""
    return (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0])
