"""
Reproducible Gaussian Streams
============================

Seed splitting and standard normal sampling for the Monte Carlo engine.

- stream seeds: stream_seed_i = splitmix64(master_seed + i * 0x9E3779B97F4A7C15 mod 2^64),
  i.e. output number i + 1 of a SplitMix64 generator seeded with master_seed.
- bits: numpy's counter-based Philox generator keyed with the stream seed.
- normals: inverse CDF (scipy ndtri) of u = ((b >> 12) + 0.5) * 2^-52, exactly
  one 64-bit word per variate. The sum is exact in double precision, so
  2^-53 <= u <= 1 - 2^-53.

Everything is a pure function of its integer inputs and identical across
platforms.
"""

import numpy as np
from scipy.special import ndtri

from src.errors import ContractError

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(seed: int) -> int:
    z = (seed + GOLDEN_GAMMA) & MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def stream_seed(master_seed: int, index: int) -> int:
    """
    Seed of replication `index` derived from the master seed.
    """
    return splitmix64((master_seed + index * GOLDEN_GAMMA) & MASK64)


def uniform_open(raw: np.ndarray) -> np.ndarray:
    """
    Map uint64 words to doubles in (0, 1) using the top 52 bits.
    """
    return ((raw >> np.uint64(12)).astype(np.float64) + 0.5) * 2.0 ** -52


def sample_gaussian(s: int, n: int, seed: int) -> np.ndarray:
    """
    n i.i.d. standard normal points in R^s as an (n, s) array, row-major in
    the order the bits are drawn.
    """
    if n < 1 or s < 1:
        raise ContractError(f'Need n >= 1 and s >= 1, got n={n}, s={s}')
    bit_generator = np.random.Philox(key=seed & MASK64)
    raw = bit_generator.random_raw(n * s)
    return ndtri(uniform_open(raw)).reshape(n, s)
