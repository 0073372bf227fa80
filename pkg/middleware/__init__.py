"""
Middleware package for wealthmaps

This package contains the error handling wrapped around every subcommand.
"""

from .error_handler import ErrorHandler

__all__ = [
    'ErrorHandler'
]
