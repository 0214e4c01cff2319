"""Counter-based seedable random generator.

The value stream is a pure function of (seed, counter):

    key        = splitmix64(seed mod 2^64)
    value(c)   = splitmix64(key XOR c)
    uniform(c) = (value(c) >> 11) / 2^53

splitmix64 is the standard finalizer (Steele, Lea & Flood). Counter-based
draws make sampling order-independent: any worker can produce any slice of
the stream, so partitioned sampling merges deterministically.
"""
from __future__ import annotations

import numpy as np

_U64 = np.uint64
_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_INV_2_53 = float(2.0 ** -53)


def _splitmix64(x: np.ndarray) -> np.ndarray:
    # multiplication wraps mod 2^64 on purpose; silence numpy's overflow warning
    with np.errstate(over="ignore"):
        z = (x + _GOLDEN) & _MASK
        z = (z ^ (z >> _U64(30))) * _M1 & _MASK
        z = (z ^ (z >> _U64(27))) * _M2 & _MASK
        return z ^ (z >> _U64(31))


def counter_uniform(seed: int, counters) -> np.ndarray:
    """Uniform [0, 1) doubles for the given counters under the given seed."""
    key = _splitmix64(np.array([seed & 0xFFFFFFFFFFFFFFFF], dtype=_U64))[0]
    c = np.asarray(counters, dtype=_U64)
    values = _splitmix64(key ^ c)
    return (values >> _U64(11)).astype(np.float64) * _INV_2_53
