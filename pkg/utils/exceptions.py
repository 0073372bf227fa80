"""
Exceptions

Error types raised by the services. Each carries a stable error code and the
process exit code the command line reports for it.
"""


class WealthMapsError(Exception):
    """Base class for all application errors"""

    error_code = 'ERROR'
    exit_code = 1

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        """Serializable view of the error"""
        return {
            'error': self.message,
            'error_code': self.error_code,
            'details': self.details or None
        }


class DomainError(WealthMapsError, ValueError):
    """Input outside the domain of an operation"""

    error_code = 'VALIDATION_ERROR'
    exit_code = 2


class SingularParameterError(DomainError):
    """Environmental pressure a = 1 makes the uniform map degenerate"""

    error_code = 'SINGULAR_PARAMETER'


class NoFixedPointError(DomainError):
    """No positive fixed point exists (r <= 1)"""

    error_code = 'NO_FIXED_POINT'


class FitError(WealthMapsError):
    """A distribution fit could not be produced"""

    error_code = 'FIT_ERROR'
    exit_code = 3


class InsufficientDataError(FitError):
    error_code = 'INSUFFICIENT_DATA'


class DegenerateFitError(FitError):
    error_code = 'DEGENERATE_FIT'


class UndefinedGiniError(FitError):
    error_code = 'UNDEFINED_GINI'


class UsageError(WealthMapsError):
    """Malformed command-line flags, ranges or config files"""

    error_code = 'USAGE_ERROR'
    exit_code = 2


class OutputError(WealthMapsError):
    """An output file could not be written"""

    error_code = 'OUTPUT_ERROR'
    exit_code = 4
