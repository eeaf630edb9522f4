"""Exception types shared across the package."""


class TrustLpError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidInstance(TrustLpError):
    """Input data violates a structural requirement (dimensions, stochasticity, ...)."""


class ParseError(TrustLpError):
    """Malformed utility-matrix text. Carries 1-based line/column of the offending token."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ResourceLimit(TrustLpError):
    """Requested computation exceeds a documented exact-search bound."""


class VerificationFailure(TrustLpError):
    """An oracle cross-check contradicted a solver result. Carries a witness description."""


class CertificationFailure(TrustLpError):
    """An exact optimality check (feasibility, duality, slackness) failed."""


class NotApplicable(TrustLpError):
    """A closed form was requested for a structure it does not cover."""
