"""Latin Hypercube designs: standard and maxmin-selected.

A design of size N places exactly one point in every axis stratum
[(i-1)/N, i/N) of every coordinate: coordinate (i, k) is
(perm_k(i) - 1 + U_i^k) / N with an independent permutation per dimension
and an independent uniform per cell. Stratum interiors are half-open.

Designs are not extensible: permutations of {1..N} do not embed in
permutations of {1..N+1}, so growing a design means resampling it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .rng import RandomStream

__all__ = ["LhsDesign", "lhs_sample", "maxmin_lhs", "min_pairwise_distance"]


@dataclass(frozen=True)
class LhsDesign:
    points: np.ndarray  # (N, n) in [0, 1)^n
    seed: int
    variant: str        # "standard" | "maxmin"
    candidates: int = 1


def lhs_sample(stream: RandomStream, n: int, count: int) -> LhsDesign:
    """Standard Latin Hypercube design of `count` points in [0, 1)^n."""
    points = _lhs_points(stream, n, count)
    return LhsDesign(points, stream.seed, "standard")


def _lhs_points(stream: RandomStream, n: int, count: int) -> np.ndarray:
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if count < 1:
        raise ValueError("point count must be >= 1")
    points = np.empty((count, n))
    for k in range(n):
        points[:, k] = stream.permutation0(count)
    points += stream.uniform(count, n)
    points /= count
    return points


def min_pairwise_distance(points: np.ndarray) -> float:
    """Minimum Euclidean distance over all point pairs."""
    points = np.asarray(points)
    count = points.shape[0]
    if count < 2:
        raise ValueError("need at least two points")
    if count <= 2048:
        return float(pdist(points).min())
    # blocked to keep the pairwise matrix bounded for large designs
    best = np.inf
    block = 1024
    for i0 in range(0, count, block):
        xi = points[i0:i0 + block]
        d = cdist(xi, points[i0:])
        rows = np.arange(xi.shape[0])
        d[rows, rows] = np.inf  # self distances
        best = min(best, float(d.min()))
    return best


def maxmin_lhs(stream: RandomStream, n: int, count: int,
               candidates: int = 4) -> LhsDesign:
    """Best of `candidates` independent standard designs by maxmin distance.

    Candidates are drawn sequentially from the stream; ties keep the
    earliest design. A single candidate degenerates to lhs_sample.
    """
    if candidates < 1:
        raise ValueError("need at least one candidate design")
    best_points = None
    best_dist = -np.inf
    for _ in range(candidates):
        pts = _lhs_points(stream, n, count)
        d = min_pairwise_distance(pts) if count >= 2 else np.inf
        if d > best_dist:
            best_points, best_dist = pts, d
    return LhsDesign(best_points, stream.seed, "maxmin", candidates)
