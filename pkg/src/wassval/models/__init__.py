"""
WassVal - Models
Pydantic schemas for configs, certificates and reports
"""

from .certificate import SnapshotValue, ToleranceSchedule, ValidationCertificate
from .config import (
    FamilySpec,
    LawConfig,
    LtiSpec,
    ModelSpec,
    OutputSpec,
    ParametricSpec,
    PrajnaSpec,
    PropagationSpec,
    StationarySpec,
    ValidationConfig,
    load_config,
    parse_config,
)
from .report import (
    BoundRecord,
    PrajnaRecord,
    Report,
    SeriesRecord,
    StationaryRecord,
    WarningRecord,
    report_digest,
)

__all__ = [
    "SnapshotValue",
    "ToleranceSchedule",
    "ValidationCertificate",
    "FamilySpec",
    "LawConfig",
    "LtiSpec",
    "ModelSpec",
    "OutputSpec",
    "ParametricSpec",
    "PrajnaSpec",
    "PropagationSpec",
    "StationarySpec",
    "ValidationConfig",
    "load_config",
    "parse_config",
    "BoundRecord",
    "PrajnaRecord",
    "Report",
    "SeriesRecord",
    "StationaryRecord",
    "WarningRecord",
    "report_digest",
]
