"""Exception types raised across the package."""


class DomainError(ValueError):
    """Input is well-formed but outside the mathematical domain."""


class GraphFormatError(DomainError):
    """Malformed G-set text; carries the offending line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class CapacityError(ValueError):
    """Requested exhaustive computation exceeds the configured size cap."""


class ConvergenceError(RuntimeError):
    """An iterative method hit its iteration cap before its tolerance."""

    def __init__(self, message, residual=None, vector=None):
        super().__init__(message)
        self.residual = residual
        self.vector = vector
