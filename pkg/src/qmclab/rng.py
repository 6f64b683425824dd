"""Seedable pseudo-random source, crude Monte Carlo sampler and permutations.

All randomness in the package flows through a RandomStream so that every
experiment is reproducible from a single 64-bit seed. Replicate k of an
experiment is seeded with base_seed + k.
"""
from __future__ import annotations

import numpy as np

__all__ = ["RandomStream", "make_stream", "mc_point_set", "random_permutation"]


class RandomStream:
    """Deterministic uniform [0, 1) source backed by PCG64.

    Identical seeds yield identical draw sequences. Uniform doubles use the
    generator's 53-bit mantissa path, so every draw lies in [0, 1).
    A stream is single-owner: do not share one between concurrent tasks.
    """

    def __init__(self, seed: int):
        if seed < 0 or seed >= 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, *shape: int) -> np.ndarray:
        """Draw an array of independent uniforms on [0, 1)."""
        return self._gen.random(shape if shape else None)

    def permutation0(self, n: int) -> np.ndarray:
        """Unbiased random permutation of 0..n-1 (Fisher-Yates)."""
        return self._gen.permutation(n)


def make_stream(seed: int) -> RandomStream:
    """Create a deterministic RandomStream from a 64-bit unsigned seed."""
    return RandomStream(seed)


def mc_point_set(stream: RandomStream, n: int, count: int) -> np.ndarray:
    """Sample `count` independent uniform points in [0, 1)^n.

    Returns a (count, n) float64 array; every coordinate is an independent
    draw from the stream, consumed row by row.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if count < 1:
        raise ValueError("point count must be >= 1")
    return stream.uniform(count, n)


def random_permutation(stream: RandomStream, n: int) -> np.ndarray:
    """Uniform random permutation of the integers 1..n."""
    if n < 1:
        raise ValueError("permutation size must be >= 1")
    return stream.permutation0(n) + 1
