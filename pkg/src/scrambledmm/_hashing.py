"""64-bit mixing primitives shared by the pseudo-random source and the scramble.

Everything here is built on the SplitMix64 finalizer, which is a bijection on
64-bit words with good avalanche behaviour.  Numpy ``uint64`` arithmetic wraps
modulo 2**64, which is exactly what the finalizer needs.
"""

from __future__ import annotations

import zlib

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def mix64(x):
    """SplitMix64 finalizer applied elementwise to a ``uint64`` array."""
    x = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = x ^ (x >> np.uint64(30))
        z = z * _M1
        z = z ^ (z >> np.uint64(27))
        z = z * _M2
        return z ^ (z >> np.uint64(31))


def _mix_int(x: int) -> int:
    x &= _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _token(part) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode()) | (1 << 40)
    return int(part)


def derive_key(seed: int, *path) -> int:
    """Split-hash ``seed`` along ``path`` into a new 64-bit key.

    Each path element (an int or a short string label) is folded in with
    a full mixing round, so keys for distinct paths are unrelated.

    >>> derive_key(1, 2) != derive_key(1, 3)
    True
    """
    key = _mix_int(int(seed) + 0x9E3779B97F4A7C15)
    for part in path:
        key = _mix_int(key ^ _mix_int(_token(part) + 0x632BE59BD9B4E019))
    return key


def counter_words(key: int, count: int, offset: int = 0) -> np.ndarray:
    """Return ``count`` pseudo-random 64-bit words ``mix64(key + k * GOLDEN)``."""
    k = np.arange(offset, offset + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(np.uint64(key) + k * GOLDEN)


def words_to_open_unit(words: np.ndarray) -> np.ndarray:
    """Map 64-bit words to odd multiples of 2**-53, i.e. the open interval (0, 1).

    Using odd multiples keeps ``1 - u`` exactly representable, so reflected
    (antithetic) draws are exact.
    """
    top = (np.asarray(words, dtype=np.uint64) >> np.uint64(12)).astype(np.float64)
    return (2.0 * top + 1.0) * 2.0**-53
