"""
WassVal - Certificate Models
Pydantic schemas for tolerance schedules and validation certificates
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator


# === Tolerances ===

class ToleranceSchedule(BaseModel):
    """Per-snapshot tolerances gamma_k > 0"""
    gammas: list[float] = Field(description="One tolerance per snapshot time")

    @field_validator("gammas")
    @classmethod
    def _positive(cls, gammas: list[float]) -> list[float]:
        if not gammas:
            raise ValueError("tolerance schedule is empty")
        if any(not g > 0 for g in gammas):
            raise ValueError("tolerances must be positive")
        return gammas

    @classmethod
    def piecewise(cls, levels: list[tuple[int, float]]) -> "ToleranceSchedule":
        """Schedule from (count, gamma) runs, e.g. [(10, 0.8), (30, 0.6)]."""
        return cls(gammas=[gamma for count, gamma in levels for _ in range(count)])

    def __len__(self) -> int:
        return len(self.gammas)


# === Certificates ===

class SnapshotValue(BaseModel):
    """Certificate entry at one snapshot time"""
    t: float = Field(description="Snapshot time")
    value: float = Field(description="Validation probability (PRVC) or worst-case gap (PWVC)")
    count: Optional[int] = Field(default=None, description="Indicator count behind a PRVC value")


class ValidationCertificate(BaseModel):
    """Probabilistic (PRVC) or worst-case (PWVC) validation certificate"""
    kind: Literal["PRVC", "PWVC"] = Field(description="Certificate kind")
    epsilon: float = Field(description="Accuracy")
    delta: float = Field(description="Confidence parameter")
    N: int = Field(description="Number of sampled initial densities")
    nu: int = Field(description="Particles per sampled density")
    seed: int = Field(description="Master seed")
    model_id: str = Field(description="Registry id of the validated model")
    snapshots: list[SnapshotValue] = Field(default_factory=list)

    @property
    def values(self) -> list[float]:
        return [s.value for s in self.snapshots]

    @property
    def times(self) -> list[float]:
        return [s.t for s in self.snapshots]
