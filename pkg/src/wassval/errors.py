"""
WassVal - Errors
Coded exceptions shared by the numerical modules and the valctl driver
"""

from typing import Optional


class WassvalError(Exception):
    """Base error carrying a machine-readable code and an optional location"""

    code: str = "ERROR"

    def __init__(self, message: str, code: Optional[str] = None, location: Optional[str] = None):
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code
        self.location = location

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "location": self.location}

    def __str__(self) -> str:
        if self.location:
            return f"[{self.code}] {self.message} (at {self.location})"
        return f"[{self.code}] {self.message}"


class PropagationError(WassvalError):
    """Non-finite state or density while propagating an ensemble"""
    code = "PROPAGATION"


class QuadratureError(WassvalError):
    """A quadrature failed its node-doubling convergence check"""
    code = "QUADRATURE"


class DomainError(WassvalError):
    """A map or preimage was evaluated outside its declared domain"""
    code = "DOMAIN"


class NonHurwitzError(WassvalError):
    code = "NON_HURWITZ"


class IndefiniteCovarianceError(WassvalError):
    code = "INDEFINITE"


class DivergentNormalizationError(WassvalError):
    code = "NORMALIZATION"


class ConfigError(WassvalError):
    """Validation config does not satisfy its schema or invariants"""
    code = "SCHEMA"


class DataError(WassvalError):
    """Measured data could not be read or does not match the config"""
    code = "DATA_IO"
