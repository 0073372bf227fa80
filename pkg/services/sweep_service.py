"""
Sweep Service

Runs the measurement protocol on the lattice and explores the (a, r)
parameter plane.

Protocol per realization k: draw the initial state from a seed keyed on
(base_seed, a-index, r-index, k), discard `transient` iterations, keep the
state at t = transient for pooled distribution fits, and average mean,
standard deviation and Gini over the following `measure_iters` iterations
(or over the snapshot itself in snapshot-only mode). Realization averages
are then averaged again across realizations.

Work is split across a process pool; results are always assembled in index
order, so they do not depend on the number of workers.
"""

import dataclasses
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Iterable, List, Sequence, Tuple, TypeVar

import numpy as np
from tqdm import tqdm

from models import (
    CellResult, LatticeState, ModelParams, PhaseDiagram, ProtocolConfig, ProtocolResult,
    Regime, RegimeThresholds, ScalarMapParams, ScalarStats, WealthSample
)
from services.lattice_service import LatticeService
from services.stats_service import StatsService
from services.uniform_map_service import UniformMapService
from utils.exceptions import DomainError
from utils.logging_utils import get_logger, log_error, log_performance, log_sweep_event
from utils.rng_utils import derive_seed
from utils.validation_utils import validate_count

logger = get_logger('sweep')

Cell = Tuple[int, int]
T = TypeVar('T')
R = TypeVar('R')


def _parallel_map(func: Callable[[T], R], items: Sequence[T], workers: int,
                  progress: bool = False, desc: str = '') -> List[R]:
    """Ordered map over items, in-process or on a process pool"""
    bar = tqdm(total=len(items), desc=desc, disable=not progress)
    try:
        if workers <= 1 or len(items) <= 1:
            results = []
            for item in items:
                results.append(func(item))
                bar.update()
            return results

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = []
            # pool.map yields in submission order, whatever the completion order
            for result in pool.map(func, items):
                results.append(result)
                bar.update()
            return results
    finally:
        bar.close()


def _realization_task(k: int, params: ModelParams, config: ProtocolConfig,
                      cell: Cell) -> Tuple[np.ndarray, ScalarStats]:
    return SweepService.run_realization(params, config, cell, k)


def _cell_task(task: Tuple[int, float, int, float], config: ProtocolConfig,
               thresholds: RegimeThresholds) -> CellResult:
    a_index, a, r_index, r = task
    return SweepService.run_cell(a, r, a_index, r_index, config, thresholds)


class SweepService:
    """Service class for the measurement protocol and (a, r) sweeps"""

    @staticmethod
    def derive_seed(base_seed: int, a_index: int, r_index: int,
                    realization: int) -> np.random.SeedSequence:
        return derive_seed(base_seed, a_index, r_index, realization)

    @staticmethod
    def scalar_stats(values: np.ndarray) -> ScalarStats:
        """Mean, std and Gini of one lattice state (Gini absent at zero mean)"""
        sample = WealthSample(values)
        mean, std = StatsService.mean_std(sample)
        gini = StatsService.gini(sample) if mean > 0 else None
        return ScalarStats(mean=mean, std=std, gini=gini)

    @staticmethod
    def average_stats(records: Iterable[ScalarStats]) -> ScalarStats:
        records = list(records)
        if not records:
            raise DomainError("Cannot average an empty list of statistics")
        ginis = [record.gini for record in records if record.gini is not None]
        return ScalarStats(
            mean=float(np.mean([record.mean for record in records])),
            std=float(np.mean([record.std for record in records])),
            gini=float(np.mean(ginis)) if ginis else None
        )

    @staticmethod
    def measure(state: LatticeState, params: ModelParams, iterations: int) -> List[ScalarStats]:
        """Statistics after each of the next `iterations` steps"""
        return LatticeService.trajectory(
            state, params, iterations, lambda s: SweepService.scalar_stats(s.wealth))

    @staticmethod
    def run_realization(params: ModelParams, config: ProtocolConfig, cell: Cell,
                        k: int) -> Tuple[np.ndarray, ScalarStats]:
        """One realization: snapshot at t = transient plus its averaged statistics"""
        seed = SweepService.derive_seed(config.base_seed, cell[0], cell[1], k)
        state = LatticeService.init_random(config.n, config.init_lo, config.init_hi, seed)
        state = LatticeService.run(state, params, config.transient)

        if config.snapshot_only:
            stats = SweepService.scalar_stats(state.wealth)
        else:
            stats = SweepService.average_stats(
                SweepService.measure(state, params, config.measure_iters))

        return np.array(state.wealth), stats

    @staticmethod
    def run_protocol(params: ModelParams, config: ProtocolConfig,
                     cell: Cell = (0, 0)) -> ProtocolResult:
        """Pooled snapshot sample plus two-level averaged statistics"""
        params.check_dimension(config.n)
        start_time = time.perf_counter()

        task = partial(_realization_task, params=params, config=config, cell=cell)
        outcomes = _parallel_map(task, list(range(config.realizations)), config.workers,
                                 progress=config.progress, desc='realizations')

        pooled = np.concatenate([snapshot for snapshot, _ in outcomes])
        stats = SweepService.average_stats(stats for _, stats in outcomes)

        sample = WealthSample(pooled, {
            'model': 'lattice',
            'params': params.to_dict(),
            'n': config.n,
            'times_sampled': [config.transient],
            'realization_seeds': [
                {'entropy': config.base_seed, 'spawn_key': [cell[0], cell[1], k]}
                for k in range(config.realizations)
            ],
            'protocol': config.to_dict()
        })

        duration = time.perf_counter() - start_time
        log_performance('run_protocol', duration, n=config.n, realizations=config.realizations)
        log_sweep_event('run_protocol', 'success', params=params.to_dict(), cell=list(cell),
                        n_pooled=sample.size, mean=stats.mean)
        return ProtocolResult(sample=sample, stats=stats)

    @staticmethod
    def run_cell(a: float, r: float, a_index: int, r_index: int, config: ProtocolConfig,
                 thresholds: RegimeThresholds = RegimeThresholds()) -> CellResult:
        """One grid cell; failures are recorded in the cell instead of raised"""
        try:
            result = SweepService.run_protocol(ModelParams(r=r, a=a), config, (a_index, r_index))
            report = StatsService.regime_report(result.sample, thresholds)
        except Exception as e:
            log_error(e, 'run_cell', a=a, r=r, a_index=a_index, r_index=r_index)
            return CellResult(a=a, r=r, label=Regime.UNCLASSIFIED, error=str(e))

        exponential, pareto = report.exponential, report.pareto
        return CellResult(
            a=a, r=r, label=report.label,
            mu=exponential.mu if exponential else None,
            h=exponential.h if exponential else None,
            alpha=pareto.alpha if pareto else None,
            gini=result.stats.gini,
            mean=result.stats.mean,
            std=result.stats.std,
            n_pooled=result.sample.size
        )

    @staticmethod
    def sweep_grid(a_values: Sequence[float], r_values: Sequence[float], config: ProtocolConfig,
                   thresholds: RegimeThresholds = RegimeThresholds()) -> PhaseDiagram:
        """One CellResult per (a, r), a-major then r-minor"""
        a_values = [float(a) for a in a_values]
        r_values = [float(r) for r in r_values]
        if not a_values or not r_values:
            raise DomainError("Sweep needs at least one a value and one r value")

        start_time = time.perf_counter()
        tasks = [
            (a_index, a, r_index, r)
            for a_index, a in enumerate(a_values)
            for r_index, r in enumerate(r_values)
        ]
        # Parallelism lives at the cell level; each cell runs its realizations serially
        cell_config = dataclasses.replace(config, workers=1, progress=False)
        task = partial(_cell_task, config=cell_config, thresholds=thresholds)
        cells = _parallel_map(task, tasks, config.workers, progress=config.progress, desc='cells')

        failed = sum(1 for cell in cells if cell.error)
        log_performance('sweep_grid', time.perf_counter() - start_time, cells=len(cells))
        log_sweep_event('sweep_grid', 'warning' if failed else 'success',
                        a_count=len(a_values), r_count=len(r_values), failed_cells=failed)

        return PhaseDiagram(a_values=a_values, r_values=r_values, cells=cells, config=config)

    @staticmethod
    def instability_growth(params: ModelParams, n: int, amplitude: float, steps: int,
                           seed: int) -> List[float]:
        """Relative deviation from uniformity of a perturbed uniform fixed point.

        Entry 0 is the deviation right after the perturbation, entry t after t steps.
        """
        if not params.is_homogeneous:
            raise DomainError("Instability experiment needs homogeneous parameters")
        if not validate_count(steps, 0):
            raise DomainError("Step count must be an integer >= 0", steps=steps)

        fixed_point = UniformMapService.fixed_point(ScalarMapParams(params.r, params.a))
        state = LatticeService.perturb(LatticeService.uniform_state(n, fixed_point), amplitude, seed)

        deviations = [LatticeService.uniformity_deviation(state)]
        deviations.extend(LatticeService.trajectory(state, params, steps,
                                                    LatticeService.uniformity_deviation))

        log_sweep_event('instability_growth', 'success', params=params.to_dict(), n=n,
                        amplitude=amplitude, final_deviation=deviations[-1])
        return deviations

    @staticmethod
    def realization_timeseries(params: ModelParams, config: ProtocolConfig,
                               k: int = 0, cell: Cell = (0, 0)) -> List[Tuple[int, ScalarStats]]:
        """(t, stats) over the measurement window of one realization"""
        seed = SweepService.derive_seed(config.base_seed, cell[0], cell[1], k)
        state = LatticeService.init_random(config.n, config.init_lo, config.init_hi, seed)
        state = LatticeService.run(state, params, config.transient)
        records = SweepService.measure(state, params, config.measure_iters)
        return [(config.transient + offset + 1, record) for offset, record in enumerate(records)]
