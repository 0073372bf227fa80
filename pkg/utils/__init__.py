"""
Utilities package for wealthmaps

This package contains utility functions and classes for common operations
like error types, logging, validation and seed derivation.
"""

from .exceptions import (
    WealthMapsError, DomainError, SingularParameterError, NoFixedPointError,
    FitError, InsufficientDataError, DegenerateFitError, UndefinedGiniError,
    UsageError, OutputError
)
from .logging_utils import setup_logging, log_error, log_system_event, get_logger
from .rng_utils import derive_seed, make_generator
from .validation_utils import parse_range, validate_protocol_data

__all__ = [
    'WealthMapsError',
    'DomainError',
    'SingularParameterError',
    'NoFixedPointError',
    'FitError',
    'InsufficientDataError',
    'DegenerateFitError',
    'UndefinedGiniError',
    'UsageError',
    'OutputError',
    'setup_logging',
    'log_error',
    'log_system_event',
    'get_logger',
    'derive_seed',
    'make_generator',
    'parse_range',
    'validate_protocol_data'
]
