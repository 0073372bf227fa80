import os

from configs import config

# Full-scale configuration for wealthmaps
# Full measurement protocol: N=1e5 agents, 100 realizations


class FullScaleConfig:
    """Full-size protocol, selected with --full-scale"""

    # Measurement Protocol
    N_AGENTS = 100_000
    INIT_LO = config.INIT_LO
    INIT_HI = config.INIT_HI
    TRANSIENT = 10_000
    MEASURE_ITERS = 100
    REALIZATIONS = 100
    BASE_SEED = int(os.environ.get('WEALTHMAPS_BASE_SEED', config.BASE_SEED))

    # Parallelism
    WORKERS = int(os.environ.get('WEALTHMAPS_WORKERS', os.cpu_count() or 1))

    # Exchange Models
    EXCHANGE_AGENTS = 100_000
    EXCHANGE_TRANSACTIONS = 100_000_000

    # Logging
    LOG_LEVEL = os.environ.get('WEALTHMAPS_LOG_LEVEL', config.LOG_LEVEL)
    LOG_DIR = os.environ.get('WEALTHMAPS_LOG_DIR', config.LOG_DIR)

    @classmethod
    def protocol_overrides(cls) -> dict:
        """Flag defaults this profile replaces"""
        return {
            'n': cls.N_AGENTS,
            'init_lo': cls.INIT_LO,
            'init_hi': cls.INIT_HI,
            'transient': cls.TRANSIENT,
            'measure_iters': cls.MEASURE_ITERS,
            'realizations': cls.REALIZATIONS,
            'seed': cls.BASE_SEED,
            'workers': cls.WORKERS,
        }

    @classmethod
    def exchange_overrides(cls) -> dict:
        return {
            'n': cls.EXCHANGE_AGENTS,
            'transactions': cls.EXCHANGE_TRANSACTIONS,
            'seed': cls.BASE_SEED,
        }
