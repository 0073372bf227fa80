"""
Bifurcate Command

Bifurcation diagram of the uniform map over a range of r.
"""

from configs import config
from commands.common import add_out_dir_flag
from middleware.error_handler import ErrorHandler
from services.output_service import OutputService
from services.uniform_map_service import UniformMapService
from utils.cli_utils import (
    CommandRun, load_config_file, log_command, require_options, resolve_options
)
from utils.validation_utils import parse_range

DEFAULTS = {
    'a': config.BIFURCATION_A,
    'r_range': None,
    'transient': config.BIFURCATE_TRANSIENT,
    'kept': config.BIFURCATION_KEPT,
    'x_init': None,
    'max_period': config.MAX_PERIOD,
    'out_dir': None,
}


def register(subparsers):
    parser = subparsers.add_parser('bifurcate', help='bifurcation diagram of the uniform map')
    parser.add_argument('--a', type=float, default=None,
                        help=f'environmental pressure (default {config.BIFURCATION_A})')
    parser.add_argument('--r-range', default=None, metavar='LO:HI:STEP', help='r values')
    parser.add_argument('--transient', type=int, default=None,
                        help=f'iterations discarded per r (default {config.BIFURCATE_TRANSIENT})')
    parser.add_argument('--kept', type=int, default=None,
                        help=f'iterates kept per r (default {config.BIFURCATION_KEPT})')
    parser.add_argument('--x-init', type=float, default=None,
                        help='initial value (default half the fixed point)')
    parser.add_argument('--max-period', type=int, default=None,
                        help=f'longest period looked for (default {config.MAX_PERIOD})')
    add_out_dir_flag(parser)
    parser.set_defaults(handler=cmd_bifurcate)


@ErrorHandler.wrap_command
@log_command
def cmd_bifurcate(args) -> int:
    options = resolve_options(args, DEFAULTS, None, load_config_file(args.config))
    require_options(options, ['r_range'])
    r_values = parse_range(options['r_range'])

    run = CommandRun('bifurcate', args.argv, options)
    orbits = UniformMapService.bifurcation_scan(
        r_values, options['a'], options['transient'], options['kept'], options['x_init'])

    run.writer.csv('bifurcation.csv', OutputService.bifurcation_frame(orbits))
    periods = UniformMapService.orbit_periods(orbits, options['max_period'])
    run.writer.csv('periods.csv', OutputService.periods_frame(periods))

    run.finish()
    return 0
