"""Counter-based SplitMix64 streams.

Draw ``j`` of sample ``i`` in a stream of width ``w`` is::

    key     = mix64(seed XOR mix64(tag))
    z       = key + (i * w + j + 1) * 0x9E3779B97F4A7C15      (mod 2**64)
    raw     = mix64(z)
    uniform = ((raw >> 11) + 0.5) * 2**-53                     (open interval (0, 1))

with ``mix64`` the SplitMix64 finaliser (shifts 30/27/31, multipliers
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB). Because every value depends only
on ``(seed, tag, i, j)``, any partition of the sample range over workers
reproduces the same numbers.
"""
from __future__ import annotations

import numpy as np
from scipy.special import ndtri

GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1


def mix64(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def stream_key(seed: int, tag: int) -> np.uint64:
    t = mix64(np.array([tag & _MASK], dtype=np.uint64))
    return mix64(np.array([seed & _MASK], dtype=np.uint64) ^ t)[0]


def raw(seed: int, tag: int, start: int, count: int, width: int) -> np.ndarray:
    """``(count, width)`` uint64 block for samples ``start .. start + count - 1``."""
    key = stream_key(seed, tag)
    counters = np.arange(start * width + 1, (start + count) * width + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = key + counters * GAMMA
    return mix64(z).reshape(count, width)


def uniforms(seed: int, tag: int, count: int, width: int, start: int = 0) -> np.ndarray:
    r = raw(seed, tag, start, count, width)
    return ((r >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def normals(seed: int, tag: int, count: int, width: int, start: int = 0) -> np.ndarray:
    """Standard normals by inverse CDF of the uniform stream."""
    return ndtri(uniforms(seed, tag, count, width, start))
