"""
Instability Command

Perturbs the uniform fixed point of the lattice and records how far the
state drifts from uniformity at every step.
"""

from configs import config
from commands.common import add_out_dir_flag
from middleware.error_handler import ErrorHandler
from models import ModelParams
from services.output_service import OutputService
from services.sweep_service import SweepService
from utils.cli_utils import CommandRun, load_config_file, log_command, resolve_options

DEFAULTS = {
    'a': config.DEFAULT_A,
    'r': config.DEFAULT_R,
    'n': config.INSTABILITY_AGENTS,
    'amplitude': config.PERTURBATION_AMPLITUDE,
    'steps': config.INSTABILITY_STEPS,
    'seed': config.BASE_SEED,
    'out_dir': None,
}


def register(subparsers):
    parser = subparsers.add_parser('instability', help='growth of a perturbed uniform state')
    parser.add_argument('--a', type=float, default=None,
                        help=f'environmental pressure (default {config.DEFAULT_A})')
    parser.add_argument('--r', type=float, default=None,
                        help=f'growth capacity (default {config.DEFAULT_R})')
    parser.add_argument('-n', type=int, default=None,
                        help=f'lattice size (default {config.INSTABILITY_AGENTS})')
    parser.add_argument('--amplitude', type=float, default=None,
                        help=f'uniform noise half-width (default {config.PERTURBATION_AMPLITUDE})')
    parser.add_argument('--steps', type=int, default=None,
                        help=f'steps to follow (default {config.INSTABILITY_STEPS})')
    parser.add_argument('--seed', type=int, default=None, help=f'seed (default {config.BASE_SEED})')
    add_out_dir_flag(parser)
    parser.set_defaults(handler=cmd_instability)


@ErrorHandler.wrap_command
@log_command
def cmd_instability(args) -> int:
    options = resolve_options(args, DEFAULTS, None, load_config_file(args.config))

    params = ModelParams(r=options['r'], a=options['a'])
    run = CommandRun('instability', args.argv, options, base_seed=options['seed'])
    deviations = SweepService.instability_growth(
        params, options['n'], options['amplitude'], options['steps'], options['seed'])
    run.writer.csv('instability.csv', OutputService.instability_frame(deviations))

    run.finish()
    return 0
