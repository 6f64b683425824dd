"""Quadrature estimators and RMSE convergence experiments.

An estimate is the plain sample mean (1/N) sum f(x_i) over a sampler's
points. Convergence is measured as the root-mean-square error over K
independent replicates at power-of-two checkpoints, then summarized by a
fitted power law rmse ~ c * N^-alpha on log2-log2 axes.

Replicate independence follows the sampler type: MC and LHS replicates get
fresh seeds (base_seed + k); Sobol' replicate k reads the aligned index
block [(k+1) N, (k+2) N) for a checkpoint of size N. Aligned power-of-two
blocks are exact digital nets, and none of them contains the degenerate
origin point at index 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .functions import TestFunction
from .lhs import lhs_sample, maxmin_lhs
from .rng import make_stream
from .sobol import (DirectionTable, SobolEngine, load_direction_table,
                    sobol_point_set)

__all__ = [
    "METHODS",
    "SamplerSpec",
    "SlopeFit",
    "ConvergenceReport",
    "estimate_integral",
    "update_mean",
    "rmse_experiment",
    "fit_slope",
    "single_run_convergence",
    "generate_points",
]

METHODS = ("mc", "lhs", "maxmin-lhs", "sobol")

_CHUNK = 8192  # points per generation/evaluation block


@dataclass(frozen=True)
class SamplerSpec:
    """A sampling method bound to a dimension and its reproducibility anchor.

    `seed` drives mc/lhs/maxmin-lhs; `skip` is the first Sobol' index read
    (default 1: experiments never consume the origin). `candidates` only
    affects maxmin-lhs.
    """
    method: str
    n: int
    seed: int = 0
    skip: int = 1
    candidates: int = 4
    table: DirectionTable | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {METHODS}")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")

    def for_replicate(self, k: int, block: int) -> "SamplerSpec":
        """Spec for replicate k: seed offset, or a disjoint Sobol' index block.

        `block` is the block size N: Sobol' replicate k starts at (k+1) N,
        so replicates are consecutive aligned blocks after the one holding
        the origin.
        """
        if self.method == "sobol":
            return replace(self, skip=(k + 1) * block)
        return replace(self, seed=self.seed + k)

    def direction_table(self) -> DirectionTable:
        table = self.table
        if table is None:
            table = load_direction_table()
            object.__setattr__(self, "table", table)
        return table


@dataclass(frozen=True)
class SlopeFit:
    c: float
    alpha: float
    r2: float


@dataclass
class ConvergenceReport:
    function: str
    n: int
    method: str
    replicates: int
    rows: list[tuple[int, float]]  # (N, rmse), N strictly increasing powers of 2
    fit: SlopeFit | None = None
    base_seed: int = 0
    extra: dict = field(default_factory=dict)


def update_mean(prev: float, count: int, value: float) -> float:
    """Running mean after folding in the count-th value.

    I_N = I_{N-1} + (f(x_N) - I_{N-1}) / N; `prev` is ignored at count 1.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if count == 1:
        return float(value)
    return prev + (value - prev) / count


def _chunk_sizes(total: int) -> list[int]:
    sizes = [_CHUNK] * (total // _CHUNK)
    if total % _CHUNK:
        sizes.append(total % _CHUNK)
    return sizes


class _IncrementalSource:
    """Block generator for the samplers that support prefix extension."""

    def __init__(self, spec: SamplerSpec):
        self.spec = spec
        if spec.method == "mc":
            self._stream = make_stream(spec.seed)
            self._engine = None
        elif spec.method == "sobol":
            if spec.skip < 1:
                raise ValueError("experiments read Sobol' indices >= 1 "
                                 "(the origin breaks inverse-CDF transforms)")
            self._engine = SobolEngine(spec.direction_table(), spec.n)
            self._engine.seek(spec.skip - 1)
        else:
            raise ValueError(f"{spec.method} designs are not prefix-extensible")

    def take(self, count: int) -> np.ndarray:
        if self._engine is not None:
            return self._engine.take(count)
        return self._stream.uniform(count, self.spec.n)


def generate_points(spec: SamplerSpec, count: int) -> np.ndarray:
    """The (count, n) point set this spec denotes (whole design for LHS).

    For Sobol', `spec.skip` is the first index read; skip=0 includes the
    origin point.
    """
    if spec.method == "lhs":
        return lhs_sample(make_stream(spec.seed), spec.n, count).points
    if spec.method == "maxmin-lhs":
        return maxmin_lhs(make_stream(spec.seed), spec.n, count,
                          spec.candidates).points
    if spec.method == "sobol":
        return sobol_point_set(spec.direction_table(), spec.n, count,
                               start=spec.skip)
    source = _IncrementalSource(spec)
    blocks = [source.take(size) for size in _chunk_sizes(count)]
    return np.concatenate(blocks, axis=0) if len(blocks) > 1 else blocks[0]


def _neumaier_add(s: float, c: float, v: float) -> tuple[float, float]:
    t = s + v
    if abs(s) >= abs(v):
        c += (s - t) + v
    else:
        c += (v - t) + s
    return t, c


def _prefix_means(f: TestFunction, spec: SamplerSpec,
                  checkpoints: list[int]) -> list[float]:
    """Means of f over the first N points, for each checkpoint N (ascending)."""
    source = _IncrementalSource(spec)
    means = []
    s = c = 0.0
    done = 0
    for target in checkpoints:
        for size in _chunk_sizes(target - done):
            values = f(source.take(size))
            s, c = _neumaier_add(s, c, float(np.sum(values)))
        done = target
        means.append((s + c) / done)
    return means


def _design_means(f: TestFunction, spec: SamplerSpec,
                  checkpoints: list[int]) -> list[float]:
    """Means over a fresh LHS design per checkpoint (designs are not extensible)."""
    stream = make_stream(spec.seed)
    means = []
    for target in checkpoints:
        if spec.method == "maxmin-lhs":
            design = maxmin_lhs(stream, spec.n, target, spec.candidates)
        else:
            design = lhs_sample(stream, spec.n, target)
        means.append(float(np.sum(f(design.points))) / target)
    return means


def _checkpoint_estimates(f, spec, checkpoints):
    if spec.method in ("lhs", "maxmin-lhs"):
        return _design_means(f, spec, checkpoints)
    return _prefix_means(f, spec, checkpoints)


def estimate_integral(spec: SamplerSpec, f: TestFunction, count: int) -> float:
    """Sample-mean estimate of the integral of f with `count` points."""
    if count < 1:
        raise ValueError("point count must be >= 1")
    return _checkpoint_estimates(f, spec, [count])[0]


def fit_slope(rows: list[tuple[int, float]]) -> SlopeFit:
    """Least-squares power law through (N, rmse) rows on log2-log2 axes.

    alpha is the negated slope, c the back-transformed intercept. Rows with
    rmse = 0 are rejected (the log is undefined; exact integrands have no
    meaningful convergence rate).
    """
    if len(rows) < 3:
        raise ValueError("need at least 3 checkpoints to fit a slope")
    if any(r <= 0 for _, r in rows):
        raise ValueError("rmse values must be positive to fit a power law")
    x = np.log2([n for n, _ in rows])
    y = np.log2([r for _, r in rows])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return SlopeFit(c=float(2.0 ** intercept), alpha=float(-slope), r2=r2)


def rmse_experiment(f: TestFunction, spec: SamplerSpec, log2_range,
                    replicates: int = 50) -> ConvergenceReport:
    """RMSE against the exact integral over K replicates per checkpoint.

    rmse(N) = sqrt((1/K) sum_k (I[f] - I_N^k)^2) with the replicate
    independence rule of the sampler. Deterministic given spec.seed/skip.
    """
    if replicates < 2:
        raise ValueError("need at least 2 replicates")
    log2_list = sorted(log2_range)
    checkpoints = [2 ** j for j in log2_list]
    exact = f.exact_integral

    sq_err = np.zeros(len(checkpoints))
    if spec.method == "sobol":
        spec = replace(spec, table=spec.direction_table())
        for j, count in enumerate(checkpoints):
            for k in range(replicates):
                est = _prefix_means(f, spec.for_replicate(k, count), [count])[0]
                sq_err[j] += (exact - est) ** 2
    else:
        for k in range(replicates):
            estimates = _checkpoint_estimates(
                f, spec.for_replicate(k, checkpoints[-1]), checkpoints)
            err = exact - np.asarray(estimates)
            sq_err += err * err
    rmse = np.sqrt(sq_err / replicates)

    rows = list(zip(checkpoints, rmse.tolist()))
    fit = (fit_slope(rows) if len(rows) >= 3 and all(r > 0 for _, r in rows)
           else None)
    return ConvergenceReport(f.fid, f.n, spec.method, replicates, rows, fit,
                             base_seed=spec.seed)


def single_run_convergence(f: TestFunction, spec: SamplerSpec,
                           log2_range) -> list[tuple[int, float]]:
    """Running estimates (N, I_N) of one run, no replicate averaging.

    MC and Sobol' checkpoints extend the same point stream through
    update_mean; each LHS checkpoint is a fresh design of the full size.
    """
    log2_list = sorted(log2_range)
    checkpoints = [2 ** j for j in log2_list]
    if spec.method in ("lhs", "maxmin-lhs"):
        means = _design_means(f, spec, checkpoints)
        return list(zip(checkpoints, means))

    source = _IncrementalSource(spec)
    rows = []
    mean = 0.0
    done = 0
    for target in checkpoints:
        for size in _chunk_sizes(target - done):
            for value in f(source.take(size)):
                done += 1
                mean = update_mean(mean, done, float(value))
        rows.append((target, mean))
    return rows
