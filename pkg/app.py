"""
wealthmaps command line

    python app.py simulate --a 0.92 --r 8
    python app.py sweep --a-range 0:1:0.1 --r-range 1:10:0.5 --workers 8
    python app.py bifurcate --a 0 --r-range 1:10:0.01
    python app.py exchange --model angle --omega 0.75
    python app.py instability --a 0.6 --r 4
"""

import argparse
import sys
from typing import List, Optional

from configs import config
from configs.config_full_scale import FullScaleConfig
from commands import register_commands
from utils.logging_utils import log_system_event, setup_logging
from version import VERSION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='wealthmaps',
        description='Wealth distributions of a coupled exponential-map lattice '
                    'and of random exchange baselines.'
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    parser.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help=f'logging level (default {config.LOG_LEVEL})')
    parser.add_argument('--log-dir', default=None, help=f'log directory (default {config.LOG_DIR})')
    parser.add_argument('--config', default=None, metavar='PATH',
                        help='JSON file supplying any subcommand flag (flags override it)')
    parser.add_argument('--full-scale', action='store_true',
                        help='full-size protocol (N=1e5, 100 realizations)')
    parser.add_argument('--workers', type=int, default=None,
                        help=f'process pool size (default {config.WORKERS})')
    parser.add_argument('--quiet', action='store_true', help='no progress bars')

    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    register_commands(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv

    if args.full_scale:
        log_level, log_dir = FullScaleConfig.LOG_LEVEL, FullScaleConfig.LOG_DIR
    else:
        log_level, log_dir = config.LOG_LEVEL, config.LOG_DIR
    setup_logging(args.log_level or log_level, log_dir=args.log_dir or log_dir)
    log_system_event(f"wealthmaps {VERSION} started", command=args.command)

    return args.handler(args)


if __name__ == '__main__':
    sys.exit(main())
