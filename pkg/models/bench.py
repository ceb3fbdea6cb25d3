from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class IndexBackend(str, Enum):
    WAVELET = "wavelet"
    NAIVE = "naive"


class ArithBackend(str, Enum):
    NATIVE = "native"
    RESTRICTED = "restricted"


class RunConfig(BaseModel):
    """
    Resolved options of one CLI invocation.
    Fields:
    - command: Subcommand name.
    - input_path / output_path: Files read and written, if any.
    - seed: PRNG seed, recorded in every output artifact.
    - n: Instance size.
    - index_backend / arith_backend: Rank-index backend selection.
    - repetitions: Seeds per size for benchmarks.
    """
    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    seed: int = Field(0, ge=0)
    n: int = Field(0, ge=0)
    index_backend: IndexBackend = IndexBackend.WAVELET
    arith_backend: ArithBackend = ArithBackend.NATIVE
    repetitions: int = Field(1, ge=1)

    @property
    def backend_label(self) -> str:
        if self.arith_backend == ArithBackend.RESTRICTED:
            return "restricted"
        return self.index_backend.value


class BenchRecord(BaseModel):
    """
    One benchmark row per (structure, n, seed).
    Fields mirror BuildStats plus run identification and the verification outcome.
    primitive_ops counts instrumented primitive operations (orientation tests for triangulation,
    audited arithmetic for the restricted backend).
    """
    structure: str
    n: int
    seed: int
    backend: str
    wall_time: float
    type1_splits: int = 0
    type2_splits: int = 0
    median_splits: int = 0
    total_skiplist_steps: int = 0
    total_range_queries: int = 0
    primitive_ops: int = 0
    verified: bool = False
