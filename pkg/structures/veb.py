# veb.py: van Emde Boas set over the integer universe [0, U), U a power of two.
#
# Minimum and maximum live at the node and are not stored in clusters; clusters are created
# lazily and dropped when they empty, so memory follows the member count, not U.

from typing import Dict, Optional

from models.search import QueryTrace
from utils.errors import InvalidParams


class VebSet:
    """
    Fields:
    - universe: U, the number of representable keys.
    - min, max: Smallest and largest member, None when empty.
    - summary: VebSet over cluster numbers (universes above 2 only).
    - clusters: Non-empty clusters by high part.
    - last_depth: Recursion depth reached by the latest public operation.
    - max_depth: Largest recursion depth reached by any public operation.
    """

    def __init__(self, universe: int):
        if universe < 2 or universe & (universe - 1):
            raise InvalidParams(f"VebSet universe must be a power of two >= 2, got {universe}")
        self.universe = universe
        self.min: Optional[int] = None
        self.max: Optional[int] = None
        self.last_depth = 0
        self.max_depth = 0
        self.summary: Optional[VebSet] = None
        self.clusters: Dict[int, VebSet] = {}
        bits = universe.bit_length() - 1
        self._low_bits = bits // 2
        self._high_bits = bits - self._low_bits
        self._mask = (1 << self._low_bits) - 1

    def _high(self, x: int) -> int:
        return x >> self._low_bits

    def _low(self, x: int) -> int:
        return x & self._mask

    def _index(self, high: int, low: int) -> int:
        return (high << self._low_bits) | low

    def _check(self, key: int) -> None:
        if not 0 <= key < self.universe:
            raise InvalidParams(f"Key {key} outside universe [0, {self.universe})")

    def _finish(self, trace: QueryTrace) -> None:
        self.last_depth = trace.max_depth
        self.max_depth = max(self.max_depth, trace.max_depth)

    @property
    def is_empty(self) -> bool:
        return self.min is None

    # -- membership -------------------------------------------------------------

    def member(self, key: int) -> bool:
        self._check(key)
        trace = QueryTrace()
        found = self._member(key, 0, trace)
        self._finish(trace)
        return found

    def _member(self, x: int, depth: int, trace: QueryTrace) -> bool:
        trace.visit(depth)
        if x == self.min or x == self.max:
            return True
        if self.universe == 2:
            return False
        cluster = self.clusters.get(self._high(x))
        return cluster is not None and cluster._member(self._low(x), depth + 1, trace)

    # -- updates ----------------------------------------------------------------

    def insert(self, key: int) -> bool:
        """Insert key; False when it was already present."""
        if self.member(key):
            return False
        trace = QueryTrace()
        self._insert(key, 0, trace)
        self._finish(trace)
        return True

    def _insert(self, x: int, depth: int, trace: QueryTrace) -> None:
        trace.visit(depth)
        if self.min is None:
            self.min = self.max = x
            return
        if x < self.min:
            x, self.min = self.min, x
        if self.universe > 2:
            high, low = self._high(x), self._low(x)
            cluster = self.clusters.get(high)
            if cluster is None:
                cluster = VebSet(1 << self._low_bits)
                self.clusters[high] = cluster
                if self.summary is None:
                    self.summary = VebSet(1 << self._high_bits)
                self.summary._insert(high, depth + 1, trace)
                cluster.min = cluster.max = low
            else:
                cluster._insert(low, depth + 1, trace)
        if x > self.max:
            self.max = x

    def delete(self, key: int) -> bool:
        """Delete key; False (and no change) when it was absent."""
        if not self.member(key):
            return False
        trace = QueryTrace()
        self._delete(key, 0, trace)
        self._finish(trace)
        return True

    def _delete(self, x: int, depth: int, trace: QueryTrace) -> None:
        trace.visit(depth)
        if self.min == self.max:
            self.min = self.max = None
            return
        if self.universe == 2:
            self.min = 1 if x == 0 else 0
            self.max = self.min
            return
        if x == self.min:
            first = self.summary.min
            x = self._index(first, self.clusters[first].min)
            self.min = x
        high = self._high(x)
        cluster = self.clusters[high]
        cluster._delete(self._low(x), depth + 1, trace)
        if cluster.min is None:
            del self.clusters[high]
            self.summary._delete(high, depth + 1, trace)
            if x == self.max:
                top = self.summary.max
                self.max = self.min if top is None else self._index(top, self.clusters[top].max)
        elif x == self.max:
            self.max = self._index(high, cluster.max)

    # -- neighbours -------------------------------------------------------------

    def succ(self, key: int) -> Optional[int]:
        """Smallest member strictly greater than key."""
        self._check(key)
        trace = QueryTrace()
        found = self._succ(key, 0, trace)
        self._finish(trace)
        return found

    def _succ(self, x: int, depth: int, trace: QueryTrace) -> Optional[int]:
        trace.visit(depth)
        if self.universe == 2:
            return 1 if x == 0 and self.max == 1 else None
        if self.min is not None and x < self.min:
            return self.min
        high, low = self._high(x), self._low(x)
        cluster = self.clusters.get(high)
        if cluster is not None and low < cluster.max:
            return self._index(high, cluster._succ(low, depth + 1, trace))
        if self.summary is None:
            return None
        nxt = self.summary._succ(high, depth + 1, trace)
        if nxt is None:
            return None
        return self._index(nxt, self.clusters[nxt].min)

    def pred(self, key: int) -> Optional[int]:
        """Largest member strictly smaller than key."""
        self._check(key)
        trace = QueryTrace()
        found = self._pred(key, 0, trace)
        self._finish(trace)
        return found

    def _pred(self, x: int, depth: int, trace: QueryTrace) -> Optional[int]:
        trace.visit(depth)
        if self.universe == 2:
            return 0 if x == 1 and self.min == 0 else None
        if self.max is not None and x > self.max:
            return self.max
        high, low = self._high(x), self._low(x)
        cluster = self.clusters.get(high)
        if cluster is not None and low > cluster.min:
            return self._index(high, cluster._pred(low, depth + 1, trace))
        prv = self.summary._pred(high, depth + 1, trace) if self.summary is not None else None
        if prv is None:
            if self.min is not None and x > self.min:
                return self.min
            return None
        return self._index(prv, self.clusters[prv].max)

    def __len__(self) -> int:
        return sum(1 for _ in self)

    def __iter__(self):
        key = self.min
        while key is not None:
            yield key
            key = self._succ(key, 0, QueryTrace())
