"""
Sweep Command

Runs the protocol over an (a, r) grid and writes the phase table.
"""

from configs.config_full_scale import FullScaleConfig
from commands.common import (
    PROTOCOL_DEFAULTS, add_out_dir_flag, add_protocol_flags, protocol_from_options
)
from middleware.error_handler import ErrorHandler
from services.output_service import OutputService
from services.sweep_service import SweepService
from utils.cli_utils import (
    CommandRun, load_config_file, log_command, require_options, resolve_options
)
from utils.validation_utils import parse_range

DEFAULTS = dict(PROTOCOL_DEFAULTS, a_range=None, r_range=None)


def register(subparsers):
    parser = subparsers.add_parser('sweep', help='phase diagram over an (a, r) grid')
    parser.add_argument('--a-range', default=None, metavar='LO:HI:STEP', help='a values')
    parser.add_argument('--r-range', default=None, metavar='LO:HI:STEP', help='r values')
    add_protocol_flags(parser)
    add_out_dir_flag(parser)
    parser.set_defaults(handler=cmd_sweep)


@ErrorHandler.wrap_command
@log_command
def cmd_sweep(args) -> int:
    profile = FullScaleConfig.protocol_overrides() if args.full_scale else None
    options = resolve_options(args, DEFAULTS, profile, load_config_file(args.config))
    require_options(options, ['a_range', 'r_range'])

    a_values = parse_range(options['a_range'])
    r_values = parse_range(options['r_range'])
    protocol = protocol_from_options(options, progress=not args.quiet)

    run = CommandRun('sweep', args.argv, options, base_seed=protocol.base_seed)
    diagram = SweepService.sweep_grid(a_values, r_values, protocol)
    run.writer.csv('phase.csv', OutputService.phase_frame(diagram))

    run.finish()
    return 0
