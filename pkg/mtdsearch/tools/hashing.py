"""Functions for deriving reproducible 64-bit keys.

All keys in the package are plain python integers in the range :math:`[0, 2^{64})`.
Synthetic trees derive their structure from the :func:`splitmix64` finalizer, so a
node is fully determined by the seed and the path leading to it. Board games use
classical Zobrist tables created by :func:`make_zobrist_table`.

.. autosummary::
   :nosignatures:

   splitmix64
   mix_keys
   uniform_int
   uniform_float
   make_zobrist_table
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
"""int: mask restricting integers to 64 bits"""

_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    """Return the splitmix64 finalizer of a 64-bit integer.

    Args:
        value (int):
            The input, which is truncated to 64 bits

    Returns:
        int: A well-mixed 64-bit integer
    """
    z = (value + _GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_keys(*values: int) -> int:
    """Combine several integers into a single 64-bit key.

    The combination is order dependent, i.e., `mix_keys(a, b)` and `mix_keys(b, a)`
    differ in general.

    Args:
        *values (int):
            The integers that are combined

    Returns:
        int: The combined key
    """
    key = 0
    for value in values:
        key = splitmix64(key ^ (value & MASK64))
    return key


def uniform_int(key: int, low: int, high: int) -> int:
    """Map a key to an integer in the closed interval `[low, high]`.

    Args:
        key (int):
            The 64-bit key determining the result
        low (int):
            Smallest possible result
        high (int):
            Largest possible result

    Returns:
        int: The deterministic draw
    """
    if high < low:
        raise ValueError(f"Empty interval [{low}, {high}]")
    return low + splitmix64(key) % (high - low + 1)


def uniform_float(key: int) -> float:
    """Map a key to a float in the half-open interval `[0, 1)`.

    Args:
        key (int):
            The 64-bit key determining the result

    Returns:
        float: The deterministic draw
    """
    return (splitmix64(key) >> 11) / float(1 << 53)


def make_zobrist_table(shape: tuple[int, ...], seed: int = 0) -> np.ndarray:
    """Create a table of random 64-bit keys for Zobrist hashing.

    Args:
        shape (tuple):
            Shape of the returned table, e.g. `(2, num_squares)`
        seed (int):
            Seed of the random number generator, so tables are reproducible

    Returns:
        :class:`~numpy.ndarray`: An object array of python integers
    """
    rng = np.random.default_rng(seed)
    # draw two 32-bit halves to stay clear of platform-dependent integer limits
    high = rng.integers(0, 1 << 32, size=shape, dtype=np.uint64)
    low = rng.integers(0, 1 << 32, size=shape, dtype=np.uint64)
    table = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        table[idx] = (int(high[idx]) << 32) | int(low[idx])
    return table
