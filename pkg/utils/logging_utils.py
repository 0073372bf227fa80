"""
Logging Utilities

Provides centralized logging configuration and structured logging helpers
for simulations, exchange runs and parameter sweeps.
"""

import logging
import logging.handlers
import os
import time
from datetime import datetime, timezone
from functools import wraps
from typing import Optional

DETAILED_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s'
SIMPLE_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

MAX_LOG_BYTES = 10 * 1024 * 1024  # 10MB
LOG_BACKUP_COUNT = 5

# Named loggers that get their own rotating file
DOMAIN_LOGGERS = ('simulation', 'exchange', 'sweep')


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _rotating_handler(path: str, level: int, formatter: logging.Formatter) -> logging.Handler:
    handler = logging.handlers.RotatingFileHandler(
        path,
        maxBytes=MAX_LOG_BYTES,
        backupCount=LOG_BACKUP_COUNT
    )
    handler.setLevel(level)
    handler.setFormatter(formatter)
    return handler


def _drop_handlers(logger: logging.Logger):
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


def setup_logging(log_level: str = 'INFO', log_file: Optional[str] = None,
                  log_dir: str = 'logs'):
    """Setup application logging configuration"""

    os.makedirs(log_dir, exist_ok=True)

    if not log_file:
        log_file = os.path.join(log_dir, 'app.log')

    level = getattr(logging, log_level.upper())

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    _drop_handlers(root_logger)

    detailed_formatter = logging.Formatter(DETAILED_FORMAT)
    simple_formatter = logging.Formatter(SIMPLE_FORMAT)

    # Console output goes to stderr so stdout stays clean for piping
    console_handler = logging.StreamHandler()
    console_handler.setLevel(max(level, logging.INFO))
    console_handler.setFormatter(simple_formatter)
    root_logger.addHandler(console_handler)

    root_logger.addHandler(_rotating_handler(log_file, level, detailed_formatter))
    root_logger.addHandler(_rotating_handler(
        os.path.join(log_dir, 'error.log'), logging.ERROR, detailed_formatter))

    for name in DOMAIN_LOGGERS:
        domain_logger = logging.getLogger(name)
        _drop_handlers(domain_logger)
        domain_logger.addHandler(_rotating_handler(
            os.path.join(log_dir, f'{name}.log'), level, detailed_formatter))
        domain_logger.setLevel(level)
        domain_logger.propagate = False

    logging.info(f"Logging configured - Level: {log_level}, File: {log_file}")


def _log_status(logger: logging.Logger, label: str, operation: str, status: str, **kwargs):
    log_data = {
        'operation': operation,
        'status': status,
        'timestamp': _utc_now()
    }
    log_data.update(kwargs)

    if status == 'error':
        logger.error(f"{label} {operation}: {status}", extra=log_data)
    elif status == 'warning':
        logger.warning(f"{label} {operation}: {status}", extra=log_data)
    else:
        logger.info(f"{label} {operation}: {status}", extra=log_data)


def log_simulation_event(operation: str, status: str, **kwargs):
    """Log lattice and uniform-map operations"""
    _log_status(logging.getLogger('simulation'), 'Simulation', operation, status, **kwargs)


def log_exchange_event(operation: str, status: str, **kwargs):
    """Log exchange-model operations"""
    _log_status(logging.getLogger('exchange'), 'Exchange', operation, status, **kwargs)


def log_sweep_event(operation: str, status: str, **kwargs):
    """Log protocol and sweep operations"""
    _log_status(logging.getLogger('sweep'), 'Sweep', operation, status, **kwargs)


def log_error(error: Exception, context: str = None, /, **kwargs):
    """Log error with context"""
    logger = logging.getLogger()

    error_data = {
        'error_type': type(error).__name__,
        'error_message': str(error),
        'context': context,
        'timestamp': _utc_now()
    }
    error_data.update(kwargs)

    logger.error(f"Error in {context}: {str(error)}", extra=error_data,
                 exc_info=not hasattr(error, 'error_code'))


def log_system_event(event: str, level: str = 'info', **kwargs):
    """Log system events"""
    logger = logging.getLogger()

    log_data = {
        'event': event,
        'level': level,
        'timestamp': _utc_now()
    }
    log_data.update(kwargs)

    if level == 'error':
        logger.error(f"System Event: {event}", extra=log_data)
    elif level == 'warning':
        logger.warning(f"System Event: {event}", extra=log_data)
    else:
        logger.info(f"System Event: {event}", extra=log_data)


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance"""
    return logging.getLogger(name)


def log_performance(operation: str, duration: float, **kwargs):
    """Log performance metrics"""
    logger = logging.getLogger('performance')

    log_data = {
        'operation': operation,
        'duration': duration,
        'timestamp': _utc_now()
    }
    log_data.update(kwargs)

    if duration > 5.0:
        logger.warning(f"Slow Operation: {operation} - {duration:.3f}s", extra=log_data)
    elif duration > 1.0:
        logger.info(f"Operation: {operation} - {duration:.3f}s", extra=log_data)
    else:
        logger.debug(f"Fast Operation: {operation} - {duration:.3f}s", extra=log_data)


def log_timed(operation: str):
    """Decorator reporting the wall time of a call via log_performance"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                log_performance(operation, time.perf_counter() - start_time)
        return wrapper
    return decorator
