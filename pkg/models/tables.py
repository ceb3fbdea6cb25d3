from typing import List

from pydantic import BaseModel, Field


class ShiftTable(BaseModel):
    """
    Right-shift lookup table: table[i] = floor(i / 2^k) for 0 <= i < N.
    Fields:
    - k: Shift amount (chunk width).
    - step: 2^k.
    - size: N.
    - table: The N entries.
    """
    k: int = Field(..., ge=1)
    step: int = Field(..., ge=2)
    size: int = Field(..., ge=2)
    table: List[int]


class SmallDivTables(BaseModel):
    """
    Small-operand division tables in base beta = 2^k.
    Fields:
    - k, beta: Digit width and base.
    - est_quot / est_rem: Two-digit numerator (< beta^2) over normalised one-digit divisor
      (beta/2 <= v < beta), indexed [v - beta/2][u].
    - split_quot / split_rem: Division by beta for values below 4 * beta^2 (carry extraction).
    - norm: norm[v] = 2^s with v * 2^s in [beta/2, beta), for 1 <= v < beta.
    - powers: beta^0 .. beta^4.
    """
    k: int
    beta: int
    est_quot: List[List[int]]
    est_rem: List[List[int]]
    split_quot: List[int]
    split_rem: List[int]
    norm: List[int]
    powers: List[int]
