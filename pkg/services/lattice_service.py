"""
Lattice Service

Coupled exponential maps on a ring of N agents. Each agent grows by its
capacity r_i and is inhibited by the distance between its wealth and the
pressure-weighted local field:

    x_i(t+1) = r_i x_i(t) exp(-|x_i(t) - a_i Psi_i(t)|),
    Psi_i(t) = (x_{i-1}(t) + x_{i+1}(t)) / 2

with periodic boundaries and a synchronous update.
"""

from typing import Callable, List, TypeVar

import numpy as np

from configs import config
from models import LatticeState, ModelParams
from utils.exceptions import DomainError
from utils.logging_utils import get_logger
from utils.rng_utils import SeedLike, make_generator
from utils.validation_utils import validate_count, validate_non_negative_number

logger = get_logger('simulation')

T = TypeVar('T')


def _advance(current: np.ndarray, out: np.ndarray, scratch: np.ndarray, r, a):
    """Write the next state of `current` into `out`.

    `current` is only read, so every site sees its neighbours' old values.
    step() and run() both go through here, which keeps them bit-identical.
    """
    np.add(np.roll(current, 1), np.roll(current, -1), out=scratch)
    scratch *= 0.5
    np.multiply(scratch, a, out=scratch)
    np.subtract(current, scratch, out=out)
    np.abs(out, out=out)
    np.negative(out, out=out)
    np.exp(out, out=out)
    np.multiply(current, r, out=scratch)
    np.multiply(scratch, out, out=out)


class LatticeService:
    """Service class for the deterministic lattice dynamics"""

    @staticmethod
    def local_field(state: LatticeState, i: int) -> float:
        """Mean wealth of the two ring neighbours of site i"""
        n = state.n
        if not 0 <= i < n:
            raise DomainError(f"Site index {i} outside 0..{n - 1}", index=i)
        x = state.wealth
        return 0.5 * (x[(i - 1) % n] + x[(i + 1) % n])

    @staticmethod
    def local_fields(wealth: np.ndarray) -> np.ndarray:
        """Local field of every site at once"""
        return 0.5 * (np.roll(wealth, 1) + np.roll(wealth, -1))

    @staticmethod
    def step(state: LatticeState, params: ModelParams) -> LatticeState:
        """Advance every site one iteration from the same old state"""
        params.check_dimension(state.n)
        x = state.wealth
        if not np.all(np.isfinite(x)):
            raise DomainError("Non-finite wealth in lattice state", time=state.time)

        x_next = np.empty_like(x)
        _advance(x, x_next, np.empty_like(x), params.r, params.a)
        return LatticeState(x_next, state.time + 1)

    @staticmethod
    def run(state: LatticeState, params: ModelParams, steps: int) -> LatticeState:
        """Apply `step` repeatedly; steps=0 returns the state unchanged"""
        if not validate_count(steps, 0):
            raise DomainError("Step count must be an integer >= 0", steps=steps)
        params.check_dimension(state.n)

        if steps == 0:
            return state

        # Two buffers swapped each iteration; the state object is built once at the end
        current = np.array(state.wealth, dtype=np.float64)
        following = np.empty_like(current)
        scratch = np.empty_like(current)
        for _ in range(steps):
            _advance(current, following, scratch, params.r, params.a)
            current, following = following, current

        if not np.all(np.isfinite(current)):
            raise DomainError("Lattice wealth became non-finite", time=state.time + steps)

        return LatticeState(current, state.time + steps)

    @staticmethod
    def trajectory(state: LatticeState, params: ModelParams, steps: int,
                   observe: Callable[[LatticeState], T]) -> List[T]:
        """Run `steps` steps and collect observe(state) after each one"""
        if not validate_count(steps, 0):
            raise DomainError("Step count must be an integer >= 0", steps=steps)
        observations = []
        for _ in range(steps):
            state = LatticeService.step(state, params)
            observations.append(observe(state))
        return observations

    @staticmethod
    def init_random(n: int, lo: float, hi: float, seed: SeedLike) -> LatticeState:
        """Independent Uniform(lo, hi) draws from a seeded counter-based generator"""
        if not validate_count(n, 2):
            raise DomainError("Lattice size n must be an integer >= 2", n=n)
        if not validate_non_negative_number(lo) or not validate_non_negative_number(hi) or lo >= hi:
            raise DomainError(f"Invalid initial wealth bounds ({lo}, {hi})", lo=lo, hi=hi)

        rng = make_generator(seed)
        return LatticeState(rng.uniform(lo, hi, size=n), 0)

    @staticmethod
    def uniform_state(n: int, value: float) -> LatticeState:
        if not validate_count(n, 2):
            raise DomainError("Lattice size n must be an integer >= 2", n=n)
        return LatticeState(np.full(n, float(value)), 0)

    @staticmethod
    def perturb(state: LatticeState, amplitude: float, seed: SeedLike) -> LatticeState:
        """Add Uniform(-amplitude, amplitude) noise to each site, clipped at zero"""
        if not validate_non_negative_number(amplitude):
            raise DomainError("Perturbation amplitude must be non-negative", amplitude=amplitude)
        rng = make_generator(seed)
        noise = rng.uniform(-amplitude, amplitude, size=state.n)
        return LatticeState(np.clip(state.wealth + noise, 0.0, None), state.time)

    @staticmethod
    def uniformity_deviation(state: LatticeState) -> float:
        """Largest relative distance of a site from the lattice mean"""
        mean = float(np.mean(state.wealth))
        if mean == 0.0:
            return 0.0
        return float(np.max(np.abs(state.wealth - mean)) / mean)

    @staticmethod
    def is_collapsed(state: LatticeState, threshold: float = config.COLLAPSE_THRESHOLD) -> bool:
        return float(np.mean(state.wealth)) < threshold
