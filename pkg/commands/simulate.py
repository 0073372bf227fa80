"""
Simulate Command

Runs the measurement protocol for one (a, r) point and writes the pooled
distribution, its fits and summary statistics.
"""

from configs import config
from configs.config_full_scale import FullScaleConfig
from commands.common import (
    PROTOCOL_DEFAULTS, add_out_dir_flag, add_protocol_flags, protocol_from_options,
    write_distribution_outputs
)
from middleware.error_handler import ErrorHandler
from models import ModelParams
from services.output_service import OutputService
from services.sweep_service import SweepService
from utils.cli_utils import CommandRun, load_config_file, log_command, resolve_options

DEFAULTS = dict(PROTOCOL_DEFAULTS, a=config.DEFAULT_A, r=config.DEFAULT_R,
                bins=config.HISTOGRAM_BINS, timeseries=False)


def register(subparsers):
    parser = subparsers.add_parser('simulate', help='simulate one (a, r) point of the lattice')
    parser.add_argument('--a', type=float, default=None,
                        help=f'environmental pressure (default {config.DEFAULT_A})')
    parser.add_argument('--r', type=float, default=None,
                        help=f'growth capacity (default {config.DEFAULT_R})')
    add_protocol_flags(parser)
    parser.add_argument('--bins', type=int, default=None, help='histogram bins')
    parser.add_argument('--timeseries', action='store_true', default=None,
                        help='also write per-iteration statistics of realization 0')
    add_out_dir_flag(parser)
    parser.set_defaults(handler=cmd_simulate)


@ErrorHandler.wrap_command
@log_command
def cmd_simulate(args) -> int:
    profile = FullScaleConfig.protocol_overrides() if args.full_scale else None
    options = resolve_options(args, DEFAULTS, profile, load_config_file(args.config))

    params = ModelParams(r=options['r'], a=options['a'])
    protocol = protocol_from_options(options, progress=not args.quiet)

    run = CommandRun('simulate', args.argv, options, base_seed=protocol.base_seed)
    result = SweepService.run_protocol(params, protocol)
    write_distribution_outputs(run, result.sample, result.stats, options['bins'])

    if options['timeseries']:
        records = SweepService.realization_timeseries(params, protocol)
        run.writer.csv('timeseries.csv', OutputService.timeseries_frame(records))

    run.finish()
    return 0
