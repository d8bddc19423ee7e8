"""
WassVal - Certificate I/O
JSON files for certificates and tolerance schedules
"""

from pathlib import Path
from typing import Union

from pydantic import BaseModel, ValidationError

from ..errors import DataError
from ..models.certificate import ToleranceSchedule, ValidationCertificate


def _write(model: BaseModel, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2, exclude_none=True), encoding="utf-8")
    return path


def _read(model_type: type[BaseModel], path: Union[str, Path]):
    path = Path(path)
    try:
        return model_type.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise DataError(f"cannot read {path.name}: {e}", location=str(path)) from e
    except ValidationError as e:
        raise DataError(f"invalid {model_type.__name__}: {e.errors()[0]['msg']}", location=str(path)) from e


def write_certificate(certificate: ValidationCertificate, path: Union[str, Path]) -> Path:
    return _write(certificate, path)


def read_certificate(path: Union[str, Path]) -> ValidationCertificate:
    return _read(ValidationCertificate, path)


def write_tolerance(schedule: ToleranceSchedule, path: Union[str, Path]) -> Path:
    return _write(schedule, path)


def read_tolerance(path: Union[str, Path]) -> ToleranceSchedule:
    """Read `{"gammas": [...]}`."""
    return _read(ToleranceSchedule, path)
