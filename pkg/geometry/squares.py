# squares.py: Quadrant splitting and the canonical minimum enclosing square.

from typing import Optional, Tuple

from models.rank import Extremes
from models.square import Square
from utils.errors import DegenerateResolution, InvalidParams


def split(b: Square) -> Tuple[Square, Square, Square, Square]:
    """
    Split a square into its four quadrants (SW, SE, NW, NE).
    Interior midlines belong to the eastern and northern children; outer edges keep b's flags.
    Raises DegenerateResolution when a midline coincides with an edge after rounding.
    """
    xm = (b.x0 + b.x1) / 2
    ym = (b.y0 + b.y1) / 2
    if not (b.x0 < xm < b.x1 and b.y0 < ym < b.y1):
        raise DegenerateResolution(
            f"Cannot split [{b.x0!r},{b.x1!r}]x[{b.y0!r},{b.y1!r}]: float resolution exhausted")
    sw = Square(x0=b.x0, y0=b.y0, x1=xm, y1=ym, left=b.left, right=False, bottom=b.bottom, top=False)
    se = Square(x0=xm, y0=b.y0, x1=b.x1, y1=ym, left=True, right=b.right, bottom=b.bottom, top=False)
    nw = Square(x0=b.x0, y0=ym, x1=xm, y1=b.y1, left=b.left, right=False, bottom=True, top=b.top)
    ne = Square(x0=xm, y0=ym, x1=b.x1, y1=b.y1, left=True, right=b.right, bottom=True, top=b.top)
    return sw, se, nw, ne


def midlines(b: Square) -> Tuple[float, float]:
    return (b.x0 + b.x1) / 2, (b.y0 + b.y1) / 2


def _fit(lo: float, hi: float, s: float, bound_lo: Optional[float], bound_hi: Optional[float]) -> Tuple[float, float]:
    # Anchor at lo, shift down only when the far edge would overhang the bound.
    start, end = lo, lo + s
    if end < hi:
        end = hi
    if bound_hi is not None and end > bound_hi:
        end = bound_hi
        start = min(end - s, lo)
    if bound_lo is not None and start < bound_lo:
        start = bound_lo
    return start, end


def min_enclosing_square(ex: Extremes, within: Optional[Square] = None) -> Square:
    """
    Canonical closed square of side max(x-extent, y-extent) around a region.
    Step-by-step:
    1. The dominant axis uses the extreme coordinates themselves as edges.
    2. The other axis is anchored at its minimum and shifted down only as far as needed to fit `within`.
    3. A single point gets a canonical tiny square (one ulp-scaled unit around it).
    """
    if ex.is_empty:
        raise InvalidParams("min_enclosing_square needs a non-empty region")
    lx, rx = ex.leftmost.x, ex.rightmost.x
    by, ty = ex.bottommost.y, ex.topmost.y
    s = max(rx - lx, ty - by)
    if s == 0:
        s = max(abs(lx), abs(by), 1.0) * 2.0 ** -40
        return Square(x0=lx - s, y0=by - s, x1=lx + s, y1=by + s)
    wx0 = within.x0 if within else None
    wx1 = within.x1 if within else None
    wy0 = within.y0 if within else None
    wy1 = within.y1 if within else None
    if rx - lx >= ty - by:
        x0, x1 = lx, rx
        y0, y1 = _fit(by, ty, s, wy0, wy1)
    else:
        y0, y1 = by, ty
        x0, x1 = _fit(lx, rx, s, wx0, wx1)
    return Square(x0=x0, y0=y0, x1=x1, y1=y1)
