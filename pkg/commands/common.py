"""
Shared Command Helpers

Flag groups and output bundles used by more than one subcommand.
"""

import argparse
from typing import Any, Dict

import numpy as np

from configs import config
from models import (
    Binning, BinningSpec, ProtocolConfig, RegimeThresholds, ScalarStats, WealthSample
)
from services.output_service import OutputService
from services.stats_service import StatsService
from utils.cli_utils import CommandRun
from utils.exceptions import FitError
from utils.logging_utils import get_logger

logger = get_logger(__name__)

PROTOCOL_DEFAULTS = {
    'n': config.N_AGENTS,
    'init_lo': config.INIT_LO,
    'init_hi': config.INIT_HI,
    'transient': config.TRANSIENT,
    'measure_iters': config.MEASURE_ITERS,
    'realizations': config.REALIZATIONS,
    'seed': config.BASE_SEED,
    'snapshot_only': config.SNAPSHOT_ONLY,
    'workers': config.WORKERS,
    'out_dir': None,
}


def add_out_dir_flag(parser: argparse.ArgumentParser):
    parser.add_argument('--out-dir', default=None,
                        help=f'output directory (default ${config.OUTPUT_DIR_ENV}/<command> '
                             f'or {config.OUTPUT_FOLDER}/<command>)')


def add_protocol_flags(parser: argparse.ArgumentParser):
    """Measurement protocol flags; all default to None so files and profiles can fill them"""
    group = parser.add_argument_group('protocol')
    group.add_argument('-n', type=int, default=None, help=f'lattice size (default {config.N_AGENTS})')
    group.add_argument('--init-lo', type=float, default=None, help='lower bound of initial wealth')
    group.add_argument('--init-hi', type=float, default=None, help='upper bound of initial wealth')
    group.add_argument('--transient', type=int, default=None,
                       help=f'iterations discarded before measuring (default {config.TRANSIENT})')
    group.add_argument('--measure-iters', type=int, default=None,
                       help=f'iterations averaged after the transient (default {config.MEASURE_ITERS})')
    group.add_argument('--realizations', type=int, default=None,
                       help=f'independent initial conditions (default {config.REALIZATIONS})')
    group.add_argument('--seed', type=int, default=None, help=f'base seed (default {config.BASE_SEED})')
    group.add_argument('--snapshot-only', action=argparse.BooleanOptionalAction, default=None,
                       help='take mean, std and Gini from the t=transient state only '
                            '(default: average over --measure-iters steps)')


def protocol_from_options(options: Dict[str, Any], progress: bool) -> ProtocolConfig:
    return ProtocolConfig(
        n=options['n'],
        init_lo=options['init_lo'],
        init_hi=options['init_hi'],
        transient=options['transient'],
        measure_iters=options['measure_iters'],
        realizations=options['realizations'],
        base_seed=options['seed'],
        snapshot_only=options['snapshot_only'],
        workers=options['workers'],
        progress=progress
    )


def write_distribution_outputs(run: CommandRun, sample: WealthSample, stats: ScalarStats,
                               bins: int = config.HISTOGRAM_BINS,
                               thresholds: RegimeThresholds = RegimeThresholds()):
    """sample, histograms, fit, stats, CCDF and Lorenz curve of one pooled sample"""
    writer = run.writer
    report = StatsService.regime_report(sample, thresholds)

    writer.csv('sample.csv', OutputService.sample_frame(sample))

    linear = StatsService.histogram(sample, BinningSpec(kind=Binning.LINEAR, bins=bins))
    writer.csv('hist_linear.csv', OutputService.histogram_frame(linear))

    log_histogram = None
    if np.any(sample.values > 0):
        log_histogram = StatsService.histogram(sample, BinningSpec(kind=Binning.LOG, bins=bins))
    writer.csv('hist_log.csv', OutputService.histogram_frame(log_histogram))

    writer.json('fit.json', OutputService.fit_document(report))
    writer.json('stats.json', OutputService.stats_document(stats, report, sample.size))

    writer.csv('ccdf.csv', OutputService.curve_frame(('x', 'ccdf'), StatsService.ccdf(sample)))

    try:
        lorenz = StatsService.lorenz_curve(sample)
    except FitError as e:
        logger.warning(f"Lorenz curve skipped: {e}")
        lorenz = None
    writer.csv('lorenz.csv', OutputService.curve_frame(('population_share', 'wealth_share'), lorenz))

    logger.info(f"Sample of {sample.size} values classified {report.label.value}")
    return report
