# bitvector.py: Plain bit vector with a full prefix-count rank directory and select by position list.

from typing import List, Optional, Sequence

import numpy as np

from arith.backends import Arithmetic


class BitVec:
    """
    Static bit vector.
    rank1(i) counts ones in positions [0, i); select1(j) is the position of the j-th one (1-based).
    """

    def __init__(self, bits: Sequence[int], arith: Optional[Arithmetic] = None):
        self.bits = np.asarray(bits, dtype=np.uint8)
        if arith is None:
            ranks = np.zeros(len(self.bits) + 1, dtype=np.int64)
            np.cumsum(self.bits, out=ranks[1:])
            self._rank1: List[int] = ranks.tolist()
        else:
            self._rank1 = [0]
            for b in bits:
                self._rank1.append(arith.add(self._rank1[-1], b))
        self._ones: List[int] = np.flatnonzero(self.bits).tolist()

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def ones(self) -> int:
        return self._rank1[-1]

    def access(self, i: int) -> int:
        return int(self.bits[i])

    def rank1(self, i: int, arith: Arithmetic) -> int:
        return arith.lookup(self._rank1, i)

    def rank0(self, i: int, arith: Arithmetic) -> int:
        return arith.sub(i, arith.lookup(self._rank1, i))

    def select1(self, j: int) -> int:
        return self._ones[j - 1]
