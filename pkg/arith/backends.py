# backends.py: The integer arithmetic the rank index runs on, native or restricted.

import operator
from abc import ABC, abstractmethod
from typing import List, Optional, Sequence

from arith.restricted import PrimitiveOps, build_shift_table, chunk, universe_for
from models.bench import ArithBackend
from models.counters import OpCounter


class Arithmetic(ABC):
    """
    Interface shared by the arithmetic backends.
    The rank index routes its index arithmetic, comparisons and directory reads through it.
    """
    name: str = "abstract"

    @abstractmethod
    def add(self, a: int, b: int) -> int: ...

    @abstractmethod
    def sub(self, a: int, b: int) -> int: ...

    @abstractmethod
    def lt(self, a: int, b: int) -> bool: ...

    @abstractmethod
    def le(self, a: int, b: int) -> bool: ...

    @abstractmethod
    def lookup(self, table: Sequence[int], i: int) -> int: ...

    @abstractmethod
    def half(self, v: int) -> int:
        """floor(v / 2)"""

    @abstractmethod
    def bits(self, v: int, width: int) -> List[int]:
        """The low `width` bits of v, least significant first."""


class NativeArithmetic(Arithmetic):
    name = ArithBackend.NATIVE.value

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    lt = staticmethod(operator.lt)
    le = staticmethod(operator.le)
    lookup = staticmethod(operator.getitem)

    @staticmethod
    def half(v: int) -> int:
        return v >> 1

    @staticmethod
    def bits(v: int, width: int) -> List[int]:
        return [(v >> j) & 1 for j in range(width)]


class RestrictedArithmetic(Arithmetic):
    """
    Arithmetic restricted to the audited primitives; halving and bit extraction read a
    k = 1 shift table over the word universe of n.
    """
    name = ArithBackend.RESTRICTED.value

    def __init__(self, n: int, counter: Optional[OpCounter] = None):
        self.ops = PrimitiveOps(counter)
        self.universe = universe_for(n)
        self.halves = build_shift_table(self.universe, 1, PrimitiveOps())

    @property
    def counter(self) -> OpCounter:
        return self.ops.counter

    def add(self, a: int, b: int) -> int:
        return self.ops.add(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.ops.sub(a, b)

    def lt(self, a: int, b: int) -> bool:
        return self.ops.lt(a, b) == 1

    def le(self, a: int, b: int) -> bool:
        return self.ops.le(a, b) == 1

    def lookup(self, table: Sequence[int], i: int) -> int:
        return self.ops.lookup(table, i)

    def half(self, v: int) -> int:
        return self.ops.lookup(self.halves.table, v)

    def bits(self, v: int, width: int) -> List[int]:
        return chunk(v, self.halves, self.ops, width)


def make_arithmetic(backend: ArithBackend, n: int) -> Arithmetic:
    if backend == ArithBackend.RESTRICTED:
        return RestrictedArithmetic(n)
    return NativeArithmetic()
