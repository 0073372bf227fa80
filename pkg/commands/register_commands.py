"""
Command Registration

Registers every subcommand with the top-level argument parser.
"""


def register_commands(subparsers):
    """Register all subcommands"""
    from commands import bifurcate, exchange, instability, simulate, sweep

    simulate.register(subparsers)
    sweep.register(subparsers)
    bifurcate.register(subparsers)
    exchange.register(subparsers)
    instability.register(subparsers)
