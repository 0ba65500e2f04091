"""Deterministic counter-based random numbers.

Every draw is a pure function of (seed, stream, index, slot): one splitmix64
step evaluated at an explicit counter. Generating a block of points is
therefore order-independent -- workers can fill disjoint index ranges in any
order, in any chunking, and the bits are identical to a serial pass.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15  # splitmix64 golden-ratio increment
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Stream tags keep independent draw families on disjoint counters.
FUTURE_STREAM = 1
PAST_STREAM = 2
PAIR_STREAM = 3


def _mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return (z ^ (z >> 31)) & _MASK


def _finalize(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def stream_key(seed: int, stream: int) -> int:
    """64-bit key for one (seed, stream) draw family."""
    return _mix64(_mix64(seed + _GAMMA * stream) + _GAMMA)


def _words(key: int, counters: np.ndarray) -> np.ndarray:
    # splitmix64 output at explicit counter positions: mix(key + (c+1)*gamma)
    return _finalize(np.uint64(key) + (counters + np.uint64(1)) * np.uint64(_GAMMA))


def uniform_block(seed: int, stream: int, start: int, count: int, slots: int) -> np.ndarray:
    """(count, slots) array of float64 uniforms in [0, 1).

    Entry [i, k] depends only on (seed, stream, start + i, k).
    """
    key = stream_key(seed, stream)
    idx = np.arange(start, start + count, dtype=np.uint64) << np.uint64(32)
    c = idx[:, None] + np.arange(slots, dtype=np.uint64)[None, :]
    return (_words(key, c) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def symbol_block(
    seed: int, stream: int, start: int, count: int, length: int, p_plus: float
) -> np.ndarray:
    """(count, length) matrix of i.i.d. +/-1 symbols, +1 with probability p_plus.

    Built column-by-column so the transient uniforms never exceed one
    (count,) vector regardless of length.
    """
    key = stream_key(seed, stream)
    idx = np.arange(start, start + count, dtype=np.uint64) << np.uint64(32)
    out = np.empty((count, length), dtype=np.int8)
    for k in range(length):
        u = (_words(key, idx + np.uint64(k)) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        out[:, k] = np.where(u < p_plus, 1, -1)
    return out
