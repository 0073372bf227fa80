"""
Exchange Service

Stochastic money-exchange reference models. A random ordered pair (i, j)
trades at each transaction and money is conserved:

- DY: the pair pools its money and splits it at a random fraction eps.
- ANGLE: agent i hands over du = eps * omega * u_i.
- ANGLE_HETEROGENEOUS: as ANGLE, with agent i's own omega_i.
"""

import math
import time
from typing import Sequence, Tuple

import numpy as np
from tqdm import tqdm

from configs import config
from models import ExchangeRule, ExchangeState, ExchangeVariant, WealthSample
from utils.exceptions import DomainError
from utils.logging_utils import get_logger, log_exchange_event, log_performance
from utils.rng_utils import derive_seed, make_generator
from utils.validation_utils import (
    validate_count, validate_non_negative_number, validate_open_unit_interval
)

logger = get_logger('exchange')

# eps is drawn as k / 2**53 with k in [1, 2**53), strictly inside (0, 1)
EPS_RESOLUTION = 2 ** 53

TRANSACTION_STREAM = 0
OMEGA_STREAM = 1

CONSERVATION_RTOL = 1e-9


def _require_pair(ui: float, uj: float):
    if not validate_non_negative_number(ui) or not validate_non_negative_number(uj):
        raise DomainError(f"Exchanged amounts must be finite and non-negative, got ({ui}, {uj})")


def _require_eps(eps: float):
    if not validate_open_unit_interval(eps):
        raise DomainError(f"eps must lie in (0, 1), got {eps}", eps=eps)


class ExchangeService:
    """Service class for the random exchange baselines"""

    @staticmethod
    def dy_exchange(ui: float, uj: float, eps: float) -> Tuple[float, float]:
        """(u_i, u_j) -> (eps (u_i+u_j), (1-eps) (u_i+u_j))"""
        _require_pair(ui, uj)
        _require_eps(eps)
        total = ui + uj
        return eps * total, (1.0 - eps) * total

    @staticmethod
    def angle_exchange(ui: float, uj: float, eps: float, omega: float) -> Tuple[float, float]:
        """(u_i, u_j) -> (u_i - du, u_j + du) with du = eps omega u_i"""
        _require_pair(ui, uj)
        _require_eps(eps)
        if not validate_open_unit_interval(omega):
            raise DomainError(f"omega must lie in (0, 1), got {omega}", omega=omega)
        delta = eps * omega * ui
        return ui - delta, uj + delta

    @staticmethod
    def draw_omegas(n: int, seed: int, lo: float = config.OMEGA_LO,
                    hi: float = config.OMEGA_HI) -> np.ndarray:
        """Per-agent exchange parameters omega_i ~ Uniform(lo, hi)"""
        if not validate_count(n, 2):
            raise DomainError("Number of agents must be an integer >= 2", n=n)
        if not (0.0 < lo < hi < 1.0):
            raise DomainError(f"omega range ({lo}, {hi}) must lie inside (0, 1)")
        rng = make_generator(derive_seed(seed, OMEGA_STREAM))
        return rng.uniform(lo, hi, size=n)

    @staticmethod
    def draw_transactions(rng: np.random.Generator, n: int,
                          count: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Ordered pairs i != j, uniform over all n (n-1) choices, plus eps"""
        i = rng.integers(0, n, size=count)
        j = (i + rng.integers(1, n, size=count)) % n
        eps = rng.integers(1, EPS_RESOLUTION, size=count) / EPS_RESOLUTION
        return i, j, eps

    @staticmethod
    def apply_transactions(money: np.ndarray, i_seq: Sequence[int], j_seq: Sequence[int],
                           eps_seq: Sequence[float], rule: ExchangeRule) -> np.ndarray:
        """Apply an explicit transaction sequence and return the new money vector"""
        u = np.asarray(money, dtype=np.float64).tolist()
        pairs = zip(np.asarray(i_seq).tolist(), np.asarray(j_seq).tolist(),
                    np.asarray(eps_seq, dtype=np.float64).tolist())

        # Plain-float loop: each transaction depends on the previous one
        if rule.variant is ExchangeVariant.DY:
            for i, j, eps in pairs:
                total = u[i] + u[j]
                u[i] = eps * total
                u[j] = (1.0 - eps) * total
        elif rule.variant is ExchangeVariant.ANGLE:
            omega = rule.omega
            for i, j, eps in pairs:
                delta = eps * omega * u[i]
                u[i] -= delta
                u[j] += delta
        else:
            omegas = rule.omega_per_agent.tolist()
            if len(omegas) != len(u):
                raise DomainError("omega_per_agent length must equal the number of agents",
                                  agents=len(u), omegas=len(omegas))
            for i, j, eps in pairs:
                delta = eps * omegas[i] * u[i]
                u[i] -= delta
                u[j] += delta

        return np.array(u)

    @staticmethod
    def run_exchange(n: int, rule: ExchangeRule, transactions: int, seed: int,
                     endowment: float = config.INITIAL_ENDOWMENT,
                     chunk_size: int = config.TRANSACTION_CHUNK,
                     progress: bool = False) -> WealthSample:
        """Start from equal money and perform `transactions` random exchanges"""
        if not validate_count(n, 2):
            raise DomainError("Number of agents must be an integer >= 2", n=n)
        if not validate_count(transactions, 0):
            raise DomainError("Transaction count must be an integer >= 0", transactions=transactions)
        if not validate_count(chunk_size, 1):
            raise DomainError("Chunk size must be a positive integer", chunk_size=chunk_size)
        if rule.variant is ExchangeVariant.ANGLE_HETEROGENEOUS and rule.omega_per_agent.size != n:
            raise DomainError("omega_per_agent length must equal n", n=n)

        start_time = time.perf_counter()
        state = ExchangeState.equal(n, endowment)
        rng = make_generator(derive_seed(seed, TRANSACTION_STREAM))

        chunks = range(math.ceil(transactions / chunk_size))
        for chunk in tqdm(chunks, desc=f'exchange {rule.variant.value}', unit='chunk',
                          disable=not progress):
            count = min(chunk_size, transactions - chunk * chunk_size)
            i, j, eps = ExchangeService.draw_transactions(rng, n, count)
            state.money = ExchangeService.apply_transactions(state.money, i, j, eps, rule)

        drift = state.conservation_error()
        if drift > CONSERVATION_RTOL:
            log_exchange_event('run_exchange', 'warning', conservation_error=drift)
            logger.warning(f"Total money drifted by {drift:.3e} (relative)")

        duration = time.perf_counter() - start_time
        log_performance('run_exchange', duration, n=n, transactions=transactions)
        log_exchange_event('run_exchange', 'success', variant=rule.variant.value,
                           n=n, transactions=transactions, seed=seed,
                           conservation_error=drift)

        return WealthSample(state.money, {
            'model': f'exchange-{rule.variant.value.lower()}',
            'rule': rule.to_dict(),
            'n': n,
            'transactions': transactions,
            'seed': seed,
            'endowment': endowment,
            'total': state.total,
            'conservation_error': drift
        })
