from pydantic import BaseModel, ConfigDict, Field


class Violation(BaseModel):
    """
    One failed check reported by a verifier.
    Fields:
    - code: Short machine-readable check name (e.g. "partition", "orientation").
    - detail: Human-readable description with node or triangle context.
    """
    model_config = ConfigDict(frozen=True)

    code: str = Field(..., description="Check name.")
    detail: str = Field(..., description="What went wrong.")
