"""
Services package for wealthmaps

This package contains the simulation, statistics and output logic, kept
separate from the command-line layer for testability.
"""

from .lattice_service import LatticeService
from .uniform_map_service import UniformMapService
from .exchange_service import ExchangeService
from .stats_service import StatsService
from .sweep_service import SweepService
from .output_service import OutputService, OutputWriter

__all__ = [
    'LatticeService',
    'UniformMapService',
    'ExchangeService',
    'StatsService',
    'SweepService',
    'OutputService',
    'OutputWriter'
]
