"""
WassVal - Report Models
Pydantic schema for run reports and the digest used to compare runs
"""

import hashlib
from typing import Optional

from pydantic import BaseModel, Field

from .certificate import ValidationCertificate

REPORT_VERSION = "1"


class SeriesRecord(BaseModel):
    """W2 trajectory of one sampled initial density"""
    label: str = Field(description="Density label (e.g., sigma0.6)")
    t: list[float] = Field(default_factory=list, description="Snapshot times")
    w2: list[float] = Field(default_factory=list, description="W2 at each snapshot")


class BoundRecord(BaseModel):
    """LTI W2 with its upper bounds at step k"""
    k: int
    w2: float
    sharper: float
    omega: Optional[float] = Field(default=None, description="Spectral bound (None when undefined)")


class WarningRecord(BaseModel):
    """Recoverable condition met during a run"""
    code: str = Field(description="UNCONVERGED, QUADRATURE, NOSERIES, LAW_INTERPRETATION or OMEGA_RADICAND")
    message: str = Field(default="")


class PrajnaRecord(BaseModel):
    witness: float
    verdict: str


class StationaryRecord(BaseModel):
    """Asymptotic W2 between the truth and model output laws"""
    w2: Optional[float] = Field(default=None, description="None when the quadrature failed")
    masses: list[float] = Field(default_factory=list, description="Truth mass per attractor")
    unconverged: int = Field(default=0, description="Trajectories left unclassified")


class Report(BaseModel):
    """Everything a validation run produced"""
    version: str = Field(default=REPORT_VERSION)
    model_id: str = Field(description="Validated model")
    seed: int = Field(description="Master seed")
    config_digest: str = Field(default="", description="sha256 of the canonical config JSON")
    certificates: list[ValidationCertificate] = Field(default_factory=list)
    series: list[SeriesRecord] = Field(default_factory=list)
    bounds: list[BoundRecord] = Field(default_factory=list)
    warnings: list[WarningRecord] = Field(default_factory=list)
    prajna: Optional[PrajnaRecord] = Field(default=None)
    stationary: Optional[StationaryRecord] = Field(default=None)
    timings: dict[str, float] = Field(default_factory=dict, description="Wall-clock seconds per stage")

    def certificate(self, kind: str) -> Optional[ValidationCertificate]:
        return next((c for c in self.certificates if c.kind == kind), None)

    def warn(self, code: str, message: str) -> None:
        self.warnings.append(WarningRecord(code=code, message=message))


def report_digest(report: Report) -> str:
    """sha256 of the report JSON without timings."""
    canonical = report.model_dump_json(exclude={"timings"})
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
