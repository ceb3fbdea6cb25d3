from typing import Dict

from pydantic import BaseModel, Field

PRIMITIVES = ("add", "sub", "mul", "cmp", "lookup")


class OpCounter(BaseModel):
    """
    Counts of the audited primitive operations executed by the restricted arithmetic layer.
    Fields:
    - add, sub, mul, cmp, lookup: Monotone counters, one per primitive.
    """
    add: int = Field(0, ge=0)
    sub: int = Field(0, ge=0)
    mul: int = Field(0, ge=0)
    cmp: int = Field(0, ge=0)
    lookup: int = Field(0, ge=0)

    @property
    def total(self) -> int:
        return self.add + self.sub + self.mul + self.cmp + self.lookup

    def snapshot(self) -> Dict[str, int]:
        return {name: getattr(self, name) for name in PRIMITIVES}
