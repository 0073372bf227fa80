"""
Error Handler Middleware

Provides centralized error handling for the command-line subcommands.
"""

import sys
from functools import wraps

from utils.exceptions import WealthMapsError
from utils.logging_utils import log_error, log_system_event


class ErrorHandler:
    """Centralized error handling for the application"""

    @staticmethod
    def handle_command_error(error: Exception, command: str) -> int:
        """Log the error, report it on stderr and return the exit code"""
        if isinstance(error, WealthMapsError):
            log_error(error, f"command {command}", **error.to_dict())
            print(f"error [{error.error_code}]: {error.message}", file=sys.stderr)
            return error.exit_code

        log_error(error, f"command {command}")

        # Log system event for critical errors
        log_system_event("Critical error occurred", "error",
                         error_type=type(error).__name__,
                         error_message=str(error))

        print(f"error [UNEXPECTED_ERROR]: {type(error).__name__}: {error}", file=sys.stderr)
        return 1

    @staticmethod
    def wrap_command(func):
        """Run a subcommand handler and turn any exception into an exit code"""
        @wraps(func)
        def wrapper(args) -> int:
            try:
                result = func(args)
                return 0 if result is None else int(result)
            except Exception as e:
                return ErrorHandler.handle_command_error(e, getattr(args, 'command', func.__name__))
        return wrapper
