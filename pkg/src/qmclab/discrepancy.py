"""Uniformity metrics for point sets in the unit hypercube.

Local discrepancy compares the fraction of points inside an origin-anchored
box [0, t) with the box volume. The star discrepancy is its supremum over
all boxes (exact enumeration, feasible only at toy sizes); the L2 variant
is the root-mean-square over boxes, which has a closed O(N^2 n) form due to
Warnock and is the practical measure at experiment scale.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from ._backend import l2_star_sq

__all__ = [
    "local_discrepancy",
    "star_discrepancy_bruteforce",
    "l2_discrepancy",
    "l2_discrepancy_oracle",
]

# exact star-discrepancy enumeration is O(C^n); keep it at desk scale
_STAR_LIMITS = {1: None, 2: 64, 3: 16}


def _as_points(points) -> np.ndarray:
    x = np.atleast_2d(np.ascontiguousarray(points, dtype=np.float64))
    if x.ndim != 2 or x.shape[0] < 1:
        raise ValueError("points must be a non-empty (N, n) array")
    return x


def local_discrepancy(points, t) -> float:
    """h(t): fraction of points inside the half-open box [0, t) minus its volume."""
    x = _as_points(points)
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if t.shape != (x.shape[1],):
        raise ValueError("box corner must have one coordinate per dimension")
    if np.any(t < 0) or np.any(t > 1):
        raise ValueError("box corner must lie in [0, 1]^n")
    inside = np.all(x < t, axis=1).sum()
    return inside / x.shape[0] - float(np.prod(t))


def star_discrepancy_bruteforce(points) -> float:
    """Exact sup |h(t)| by enumerating critical boxes.

    The supremum is attained at boxes whose upper corners lie on point
    coordinates (or 1), approached from either side, so both the open and
    the closed point count are evaluated at every candidate corner.
    Sizes beyond the enumeration limits raise; use l2_discrepancy there.
    """
    x = _as_points(points)
    count, n = x.shape
    limit = _STAR_LIMITS.get(n)
    if n not in _STAR_LIMITS or (limit is not None and count > limit):
        raise ValueError(
            f"exact star discrepancy is limited to N <= {_STAR_LIMITS.get(n, 0)} "
            f"at n = {n}; use l2_discrepancy for larger sets")

    if n == 1:
        xs = np.sort(x[:, 0])
        cand = np.unique(np.append(xs, 1.0))
        open_counts = np.searchsorted(xs, cand, side="left")
        closed_counts = np.searchsorted(xs, cand, side="right")
        h_lo = cand - open_counts / count
        h_hi = closed_counts / count - cand
        return float(np.maximum(h_lo, h_hi).max())

    cands = [np.unique(np.append(x[:, k], 1.0)) for k in range(n)]
    best = 0.0
    for corner in itertools.product(*cands):
        t = np.array(corner)
        vol = float(np.prod(t))
        n_open = int(np.all(x < t, axis=1).sum())
        n_closed = int(np.all(x <= t, axis=1).sum())
        best = max(best, vol - n_open / count, n_closed / count - vol)
    return best


def l2_discrepancy(points) -> float:
    """L2 star discrepancy via Warnock's closed form.

    sqrt of (1/N^2) sum_ij prod_k (1 - max(x_i^k, x_j^k))
    - (2^(1-n)/N) sum_i prod_k (1 - (x_i^k)^2) + 3^-n.
    """
    x = _as_points(points)
    sq = l2_star_sq(x)
    if sq < -1e-12:
        raise ArithmeticError(f"squared discrepancy {sq} is negative beyond rounding")
    return math.sqrt(max(sq, 0.0))


def l2_discrepancy_oracle(points, grid: int = 2000) -> float:
    """Midpoint-rule quadrature of the defining integral of the L2 discrepancy.

    Independent check of the closed form; converges as `grid` grows.
    Only n <= 3 (cost grows as grid^n).
    """
    x = _as_points(points)
    count, n = x.shape
    if n > 3:
        raise ValueError("quadrature oracle supports n <= 3 only")
    if grid < 1:
        raise ValueError("grid must be >= 1")
    mids = (np.arange(grid) + 0.5) / grid

    if n == 1:
        xs = np.sort(x[:, 0])
        counts = np.searchsorted(xs, mids, side="left")
        h = counts / count - mids
        return math.sqrt(float(np.mean(h * h)))

    lt0 = (x[:, 0][:, None] < mids[None, :]).astype(np.float64)
    lt1 = (x[:, 1][:, None] < mids[None, :]).astype(np.float64)
    if n == 2:
        inside = lt0.T @ lt1
        h = inside / count - np.outer(mids, mids)
        return math.sqrt(float(np.mean(h * h)))

    total = 0.0
    vol12 = np.outer(mids, mids)
    for g3 in mids:
        w = lt0 * (x[:, 2] < g3)[:, None]
        inside = w.T @ lt1
        h = inside / count - vol12 * g3
        total += float(np.sum(h * h))
    return math.sqrt(total / grid ** 3)
