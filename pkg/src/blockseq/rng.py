"""The one pseudorandom source used across the package.

Everything random goes through :func:`make_rng`, a numpy ``Generator`` over
PCG64 seeded with an explicit unsigned 64-bit integer. PCG64 output is
identical across platforms for a given seed, which keeps experiments
reproducible.
"""
import numpy as np

SEED_MAX = 2**64 - 1


def make_rng(seed: int) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))
