"""
Random Number Utilities

Seed derivation for reproducible parallel runs. Every stream is keyed on a
tuple of indices, never on execution order, so results do not depend on how
work is split across workers.
"""

from typing import Sequence, Union

import numpy as np

SeedLike = Union[int, Sequence[int], np.random.SeedSequence]


def derive_seed(base_seed: int, *indices: int) -> np.random.SeedSequence:
    """Key a seed sequence on (base_seed, indices...)"""
    return np.random.SeedSequence(entropy=int(base_seed), spawn_key=tuple(int(i) for i in indices))


def make_generator(seed: SeedLike) -> np.random.Generator:
    """Counter-based Philox generator for an integer, index tuple or seed sequence"""
    if isinstance(seed, np.random.SeedSequence):
        seed_sequence = seed
    elif isinstance(seed, (int, np.integer)):
        seed_sequence = np.random.SeedSequence(int(seed))
    else:
        seed_sequence = np.random.SeedSequence([int(s) for s in seed])
    return np.random.Generator(np.random.Philox(seed_sequence))
