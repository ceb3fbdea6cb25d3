# config.py: Environment-driven settings for the presorted geometry engine.

import os
from functools import lru_cache

from pydantic import BaseModel, Field, field_validator

DEFAULT_MEM_CAP = 1 << 26


class Settings(BaseModel):
    """
    Process-wide settings read from the environment.
    Fields:
    - mem_cap: Maximum number of entries any lookup table may allocate (PRESORT_GEOM_MEM_CAP).
    - log_level: Logging level name (PRESORT_GEOM_LOG_LEVEL).
    """
    mem_cap: int = Field(DEFAULT_MEM_CAP, gt=0, description="Maximum lookup-table entries.")
    log_level: str = Field("INFO", description="Logging level name.")

    @field_validator("log_level")
    @classmethod
    def _upper(cls, value: str) -> str:
        return value.upper()


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Build the settings from the environment once per process.
    Step-by-step:
    1. Read PRESORT_GEOM_MEM_CAP and PRESORT_GEOM_LOG_LEVEL if present.
    2. Validate them through the Settings model (raises pydantic.ValidationError on bad values).
    """
    raw = {}
    if "PRESORT_GEOM_MEM_CAP" in os.environ:
        raw["mem_cap"] = os.environ["PRESORT_GEOM_MEM_CAP"]
    if "PRESORT_GEOM_LOG_LEVEL" in os.environ:
        raw["log_level"] = os.environ["PRESORT_GEOM_LOG_LEVEL"]
    return Settings(**raw)
