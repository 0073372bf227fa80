"""
Uniform Map Service

When every agent starts with the same wealth the lattice collapses onto the
scalar map

    x(t+1) = r x(t) exp(-|1-a| x(t)),

which the change of variable y = |1-a| x turns into the parameter-free map
y(t+1) = r y(t) exp(-y(t)). This service covers fixed points, their
stability, the flip bifurcation at r = e^2 and bifurcation scans.
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from configs import config
from models import Orbit, ScalarMapParams
from utils.exceptions import DomainError, NoFixedPointError, SingularParameterError
from utils.logging_utils import get_logger, log_simulation_event, log_timed
from utils.validation_utils import validate_count, validate_positive_number

logger = get_logger('simulation')


def _require_state(x: float):
    if not (math.isfinite(x) and x >= 0):
        raise DomainError(f"Uniform map needs a finite non-negative x, got {x}", x=x)


def _require_regular(params: ScalarMapParams):
    if params.is_singular:
        raise SingularParameterError("Environmental pressure a = 1 is singular for the uniform map",
                                     a=params.a)


class UniformMapService:
    """Service class for the scalar reduction of the lattice"""

    @staticmethod
    def uniform_map(x: float, params: ScalarMapParams) -> float:
        _require_state(x)
        return params.r * x * math.exp(-params.c * x)

    @staticmethod
    def generic_map(y: float, r: float) -> float:
        _require_state(y)
        return r * y * math.exp(-y)

    @staticmethod
    def to_generic(x: float, params: ScalarMapParams) -> float:
        """Change of variable y = |1-a| x"""
        _require_regular(params)
        return params.c * x

    @staticmethod
    def iterate(x: float, params: ScalarMapParams, steps: int) -> List[float]:
        """Trajectory x(0)..x(steps) of the uniform map"""
        if not validate_count(steps, 0):
            raise DomainError("Step count must be an integer >= 0", steps=steps)
        trajectory = [float(x)]
        for _ in range(steps):
            trajectory.append(UniformMapService.uniform_map(trajectory[-1], params))
        return trajectory

    @staticmethod
    def fixed_point(params: ScalarMapParams) -> float:
        """x0 = ln r / |1-a|, the positive fixed point for r > 1"""
        _require_regular(params)
        if params.r <= 1.0:
            raise NoFixedPointError(f"No positive fixed point for r = {params.r} <= 1", r=params.r)
        return math.log(params.r) / params.c

    @staticmethod
    def multiplier(params: ScalarMapParams) -> float:
        """Derivative of the map at x0, equal to 1 - ln r for every a"""
        UniformMapService.fixed_point(params)
        return 1.0 - math.log(params.r)

    @staticmethod
    def locate_flip(a: float = 0.0, lo: float = math.e, hi: float = 10.0,
                    xtol: float = config.FLIP_XTOL) -> float:
        """Bisect |multiplier(r)| = 1 for the flip onset (r = e^2)"""
        def excess(r: float) -> float:
            return abs(UniformMapService.multiplier(ScalarMapParams(r, a))) - 1.0

        if excess(lo) * excess(hi) > 0:
            raise DomainError(f"Bracket [{lo}, {hi}] does not contain the flip onset", lo=lo, hi=hi)
        return float(optimize.bisect(excess, lo, hi, xtol=xtol))

    @staticmethod
    def default_x_init(params: ScalarMapParams) -> float:
        """Half the fixed point when it exists, else 0.5"""
        if params.r <= 1.0:
            return 0.5
        return 0.5 * UniformMapService.fixed_point(params)

    @staticmethod
    @log_timed('bifurcation_scan')
    def bifurcation_scan(r_values: Sequence[float], a: float,
                         transient: int = config.BIFURCATION_TRANSIENT,
                         kept: int = config.BIFURCATION_KEPT,
                         x_init: Optional[float] = None) -> List[Orbit]:
        """Orbits after `transient` iterations for every r, all r iterated together.

        Element-wise numpy arithmetic gives each r the same values as a scalar
        loop would.
        """
        if not validate_count(transient, 0) or not validate_count(kept, 1):
            raise DomainError("transient must be >= 0 and kept >= 1", transient=transient, kept=kept)

        r = np.asarray(r_values, dtype=np.float64)
        if r.ndim != 1 or r.size == 0 or not np.all(np.isfinite(r)) or np.any(r <= 0):
            raise DomainError("Bifurcation scan needs a non-empty list of positive r values")

        params = [ScalarMapParams(float(value), a) for value in r]
        _require_regular(params[0])
        c = params[0].c

        if x_init is None:
            x = np.array([UniformMapService.default_x_init(p) for p in params])
        else:
            if not validate_positive_number(x_init):
                raise DomainError("x_init must be positive", x_init=x_init)
            x = np.full(r.size, float(x_init))

        for _ in range(transient):
            x = r * x * np.exp(-c * x)

        samples = np.empty((kept, r.size))
        for k in range(kept):
            x = r * x * np.exp(-c * x)
            samples[k] = x

        log_simulation_event('bifurcation_scan', 'success',
                             r_count=int(r.size), a=a, transient=transient, kept=kept)

        return [
            Orbit(samples[:, j], params[j], transient, kept)
            for j in range(r.size)
        ]

    @staticmethod
    def detect_period(samples: Sequence[float], max_period: int = config.MAX_PERIOD,
                      rtol: float = config.PERIOD_RTOL,
                      atol: float = config.PERIOD_ATOL) -> Optional[int]:
        """Smallest p <= max_period with samples[i+p] matching samples[i] for all i"""
        values = np.asarray(samples, dtype=np.float64)
        for p in range(1, min(max_period, values.size - 1) + 1):
            if np.allclose(values[p:], values[:-p], rtol=rtol, atol=atol):
                return p
        return None

    @staticmethod
    def orbit_periods(orbits: Sequence[Orbit],
                      max_period: int = config.MAX_PERIOD) -> List[Tuple[float, Optional[int]]]:
        return [
            (orbit.params.r, UniformMapService.detect_period(orbit.samples, max_period))
            for orbit in orbits
        ]
