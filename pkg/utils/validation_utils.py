"""
Validation Utilities

Provides validation functions for model parameters, wealth vectors,
protocol settings and command-line ranges.
"""

import math
import re
from typing import Any, Dict, List

import numpy as np

from utils.exceptions import UsageError

RANGE_PATTERN = re.compile(r'^\s*([^:]+):([^:]+):([^:]+)\s*$')


def validate_positive_number(value: Any) -> bool:
    """Validate that value is a positive finite number"""
    try:
        num = float(value)
        return math.isfinite(num) and num > 0
    except (ValueError, TypeError):
        return False


def validate_non_negative_number(value: Any) -> bool:
    """Validate that value is a non-negative finite number"""
    try:
        num = float(value)
        return math.isfinite(num) and num >= 0
    except (ValueError, TypeError):
        return False


def validate_open_unit_interval(value: Any) -> bool:
    """Validate that value lies strictly inside (0, 1)"""
    try:
        num = float(value)
        return 0.0 < num < 1.0
    except (ValueError, TypeError):
        return False


def validate_count(value: Any, minimum: int = 0) -> bool:
    """Validate an integer count with a lower bound"""
    if isinstance(value, bool):
        return False
    if isinstance(value, (int, np.integer)):
        return int(value) >= minimum
    return False


def validate_wealth_vector(values: np.ndarray) -> bool:
    """Validate a 1-D vector of finite non-negative reals"""
    if values.ndim != 1:
        return False
    return bool(np.all(np.isfinite(values)) and np.all(values >= 0))


def validate_protocol_data(protocol_data: Dict) -> List[str]:
    """Validate measurement protocol settings"""
    errors = []

    if not validate_count(protocol_data.get('n'), 2):
        errors.append("System size n must be an integer >= 2")

    lo = protocol_data.get('init_lo')
    hi = protocol_data.get('init_hi')
    if not validate_non_negative_number(lo) or not validate_positive_number(hi):
        errors.append("Initial wealth interval bounds must be finite and non-negative")
    elif float(lo) >= float(hi):
        errors.append("Initial wealth interval requires init_lo < init_hi")

    if not validate_count(protocol_data.get('transient'), 0):
        errors.append("Transient must be an integer >= 0")

    if not validate_count(protocol_data.get('measure_iters'), 1):
        errors.append("measure_iters must be an integer >= 1")

    if not validate_count(protocol_data.get('realizations'), 1):
        errors.append("Realizations must be an integer >= 1")

    if not validate_count(protocol_data.get('workers', 1), 1):
        errors.append("Workers must be an integer >= 1")

    return errors


def parse_range(text: str) -> np.ndarray:
    """Parse a 'lo:hi:step' range into an inclusive grid of values.

    The upper bound is included when it falls on the grid (within a small
    fraction of the step), which is what a user typing 1:7:0.01 expects.
    """
    match = RANGE_PATTERN.match(text or '')
    if not match:
        raise UsageError(f"Malformed range '{text}' (expected lo:hi:step)")

    try:
        lo, hi, step = (float(part) for part in match.groups())
    except ValueError:
        raise UsageError(f"Malformed range '{text}' (bounds and step must be numbers)")

    if not all(math.isfinite(v) for v in (lo, hi, step)):
        raise UsageError(f"Malformed range '{text}' (non-finite value)")
    if step <= 0:
        raise UsageError(f"Malformed range '{text}' (step must be positive)")
    if hi < lo:
        raise UsageError(f"Malformed range '{text}' (hi must be >= lo)")

    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    # lo + k*step avoids the drift of repeated addition
    return lo + step * np.arange(count, dtype=np.float64)
