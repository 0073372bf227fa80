"""
Exchange Command

Runs one of the random money-exchange baselines and writes the same
distribution outputs as `simulate`.
"""

from configs import config
from configs.config_full_scale import FullScaleConfig
from commands.common import add_out_dir_flag, write_distribution_outputs
from middleware.error_handler import ErrorHandler
from models import ExchangeRule, ExchangeVariant, RegimeThresholds
from services.exchange_service import ExchangeService
from services.sweep_service import SweepService
from utils.cli_utils import CommandRun, load_config_file, log_command, resolve_options
from utils.exceptions import UsageError

MODEL_VARIANTS = {
    'dy': ExchangeVariant.DY,
    'angle': ExchangeVariant.ANGLE,
    'angle-het': ExchangeVariant.ANGLE_HETEROGENEOUS,
}

DEFAULTS = {
    'model': 'dy',
    'omega': None,
    'n': config.N_AGENTS,
    'transactions': config.EXCHANGE_TRANSACTIONS,
    'seed': config.BASE_SEED,
    'endowment': config.INITIAL_ENDOWMENT,
    'bins': config.HISTOGRAM_BINS,
    'out_dir': None,
}


def register(subparsers):
    parser = subparsers.add_parser('exchange', help='random money-exchange baseline')
    parser.add_argument('--model', choices=sorted(MODEL_VARIANTS), default=None,
                        help='exchange rule (default dy)')
    parser.add_argument('--omega', type=float, default=None,
                        help='largest fraction of wealth lost per trade (angle only)')
    parser.add_argument('-n', type=int, default=None, help=f'agents (default {config.N_AGENTS})')
    parser.add_argument('--transactions', type=int, default=None,
                        help=f'number of trades (default {config.EXCHANGE_TRANSACTIONS})')
    parser.add_argument('--seed', type=int, default=None, help=f'seed (default {config.BASE_SEED})')
    parser.add_argument('--endowment', type=float, default=None,
                        help=f'initial money per agent (default {config.INITIAL_ENDOWMENT})')
    parser.add_argument('--bins', type=int, default=None, help='histogram bins')
    add_out_dir_flag(parser)
    parser.set_defaults(handler=cmd_exchange)


def build_rule(model: str, omega, n: int, seed: int) -> ExchangeRule:
    if model not in MODEL_VARIANTS:
        raise UsageError(f"Unknown exchange model '{model}'", model=model)
    variant = MODEL_VARIANTS[model]

    if variant is ExchangeVariant.ANGLE:
        if omega is None:
            raise UsageError("--omega is required for --model angle")
        return ExchangeRule(variant, omega=omega)
    if omega is not None:
        raise UsageError(f"--omega only applies to --model angle, not {model}")
    if variant is ExchangeVariant.ANGLE_HETEROGENEOUS:
        return ExchangeRule(variant, omega_per_agent=ExchangeService.draw_omegas(n, seed))
    return ExchangeRule(variant)


@ErrorHandler.wrap_command
@log_command
def cmd_exchange(args) -> int:
    profile = FullScaleConfig.exchange_overrides() if args.full_scale else None
    options = resolve_options(args, DEFAULTS, profile, load_config_file(args.config))

    rule = build_rule(options['model'], options['omega'], options['n'], options['seed'])

    run = CommandRun('exchange', args.argv, options, base_seed=options['seed'])
    sample = ExchangeService.run_exchange(
        options['n'], rule, options['transactions'], options['seed'],
        endowment=options['endowment'], progress=not args.quiet)

    stats = SweepService.scalar_stats(sample.values)
    write_distribution_outputs(run, sample, stats, options['bins'],
                               RegimeThresholds(exponential_xmin=config.EXCHANGE_EXPONENTIAL_XMIN))

    run.finish()
    return 0
