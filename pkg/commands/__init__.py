"""
Commands package

One module per subcommand: simulate, sweep, bifurcate, exchange and
instability.
"""

from .register_commands import register_commands

__all__ = [
    'register_commands'
]
