"""Quantile estimation for a chi-squared statistic under the three samplers.

Unit-cube points are pushed through the inverse normal CDF coordinate-wise;
the statistic sum(z_i^2) of an n-vector of standard normals follows a
chi-squared law with n degrees of freedom. Empirical quantiles of the
statistic are compared against the exact values (for n = 5 and levels
5% / 95%: 1.146 and 11.071) as an RMSE over replicates.

The inverse CDF is a rational approximation (Acklam's coefficients) with a
single Halley refinement against the erfc-based normal CDF, giving absolute
error well below 1e-9. It is singular at 0 and 1: samplers must feed
points strictly inside the cube, which is why experiments skip the Sobol'
origin and nudge any zero coordinate up to 2^-53.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import ndtr

from .integrate import ConvergenceReport, SamplerSpec, fit_slope, generate_points
from .lhs import lhs_sample, maxmin_lhs
from .rng import make_stream

__all__ = [
    "inv_normal_cdf",
    "chi2_statistic",
    "empirical_quantile",
    "QuantileExperiment",
    "quantile_rmse_experiment",
    "CHI2_5_PERCENTILES",
]

# exact chi-squared(5) percentiles used in the reference experiment
CHI2_5_PERCENTILES = {0.05: 1.146, 0.95: 11.071}

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Acklam's rational approximation coefficients
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)

_TAIL_SPLIT = 0.02425


def _acklam(p: np.ndarray) -> np.ndarray:
    """Raw rational approximation on (0, 0.5]; relative error ~1e-9."""
    x = np.empty_like(p)
    lower = p < _TAIL_SPLIT
    if np.any(lower):
        q = np.sqrt(-2.0 * np.log(p[lower]))
        x[lower] = ((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q
                      + _C[4]) * q + _C[5])
                    / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    central = ~lower
    if np.any(central):
        q = p[central] - 0.5
        r = q * q
        x[central] = ((((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r
                        + _A[4]) * r + _A[5]) * q
                      / (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r
                          + _B[4]) * r + 1.0))
    return x


def inv_normal_cdf(u):
    """Standard normal quantile of u in (0, 1), absolute error <= 1e-9.

    Values at or beyond the boundary raise: the function is singular there
    (sampler boundary policy keeps inputs strictly interior).
    """
    arr = np.asarray(u, dtype=np.float64)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise ValueError("inverse normal CDF needs arguments strictly inside (0, 1)")

    # mirror the upper half: 1 - u is exact for u >= 0.5, and refining
    # against the small-tail CDF avoids cancellation near 1
    flip = arr > 0.5
    uc = np.where(flip, 1.0 - arr, arr)
    x = _acklam(uc)

    # one Halley step against the erfc-based CDF; evaluated in log space so
    # deep-tail magnitudes cannot overflow exp(x^2/2)
    refine = uc >= 1e-300
    err = ndtr(x) - uc
    with np.errstate(divide="ignore", invalid="ignore"):
        ln_delta = np.log(np.abs(err)) + 0.5 * x * x + _LOG_SQRT_2PI
        delta = np.where(err == 0.0, 0.0, np.sign(err) * np.exp(ln_delta))
    step = delta / (1.0 + x * delta / 2.0)
    x = np.where(refine, x - step, x)

    out = np.where(flip, -x, x)
    return float(out[0]) if scalar else out


def chi2_statistic(points, n: int | None = None):
    """sum_i normal_quantile(u_i)^2 per point; chi-squared(n) distributed.

    Accepts a single point (n,) or a stack (N, n); coordinates must be
    strictly inside (0, 1).
    """
    x = np.asarray(points, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if n is not None and x.shape[1] != n:
        raise ValueError(f"expected dimension {n}, got {x.shape[1]}")
    z = inv_normal_cdf(x)
    stat = np.sum(z * z, axis=1)
    return float(stat[0]) if single else stat


def empirical_quantile(values, q: float) -> float:
    """Order statistic at rank ceil(q N) of the sorted values."""
    v = np.sort(np.asarray(values, dtype=np.float64).ravel())
    if v.size == 0:
        raise ValueError("need at least one value")
    if not 0.0 < q < 1.0:
        raise ValueError("quantile level must be strictly inside (0, 1)")
    # small backoff so that an exactly-representable q*N is not pushed to
    # the next rank by floating-point excess (e.g. 0.05 * 100 -> 5.0000...01)
    rank = math.ceil(q * v.size - 1e-9)
    rank = min(max(rank, 1), v.size)
    return float(v[rank - 1])


@dataclass(frozen=True)
class QuantileExperiment:
    n: int = 5
    levels: tuple[float, ...] = (0.05, 0.95)
    true_values: tuple[float, ...] = (1.146, 11.071)
    method: str = "sobol"
    log2_range: tuple[int, ...] = tuple(range(6, 15))
    replicates: int = 25
    base_seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.levels) != len(self.true_values):
            raise ValueError("one true value per quantile level")
        for q in self.levels:
            if not 0.0 < q < 1.0:
                raise ValueError("levels must be strictly inside (0, 1)")


_MIN_COORD = 2.0 ** -53  # inverse-CDF boundary guard


def _interior(points: np.ndarray) -> np.ndarray:
    return np.maximum(points, _MIN_COORD)


def quantile_rmse_experiment(exp: QuantileExperiment,
                             table=None) -> list[ConvergenceReport]:
    """One ConvergenceReport per quantile level (extra = {"quantile": q}).

    Replicates follow the integrator protocol: fresh seeds for mc/lhs,
    disjoint index blocks for Sobol'. Within a replicate the checkpoint
    samples are prefixes of one stream (fresh designs per N for LHS).
    """
    checkpoints = [2 ** j for j in sorted(exp.log2_range)]
    block = checkpoints[-1]
    spec = SamplerSpec(exp.method, exp.n, seed=exp.base_seed, table=table)
    if exp.method == "sobol":
        spec = replace(spec, table=spec.direction_table())

    sq_err = np.zeros((len(exp.levels), len(checkpoints)))
    for k in range(exp.replicates):
        rep = spec.for_replicate(k, block)
        if exp.method in ("lhs", "maxmin-lhs"):
            stream = make_stream(rep.seed)
            for j, target in enumerate(checkpoints):
                if exp.method == "maxmin-lhs":
                    pts = maxmin_lhs(stream, exp.n, target, rep.candidates).points
                else:
                    pts = lhs_sample(stream, exp.n, target).points
                stats = chi2_statistic(_interior(pts))
                for qi, (q, truth) in enumerate(zip(exp.levels, exp.true_values)):
                    err = empirical_quantile(stats, q) - truth
                    sq_err[qi, j] += err * err
        elif exp.method == "sobol":
            for j, target in enumerate(checkpoints):
                pts = generate_points(replace(spec, skip=(k + 1) * target), target)
                stats = chi2_statistic(_interior(pts))
                for qi, (q, truth) in enumerate(zip(exp.levels, exp.true_values)):
                    err = empirical_quantile(stats, q) - truth
                    sq_err[qi, j] += err * err
        else:
            pts = generate_points(rep, block)
            stats = chi2_statistic(_interior(pts))
            for j, target in enumerate(checkpoints):
                prefix = stats[:target]
                for qi, (q, truth) in enumerate(zip(exp.levels, exp.true_values)):
                    err = empirical_quantile(prefix, q) - truth
                    sq_err[qi, j] += err * err

    reports = []
    for qi, q in enumerate(exp.levels):
        rmse = np.sqrt(sq_err[qi] / exp.replicates)
        rows = list(zip(checkpoints, rmse.tolist()))
        fit = fit_slope(rows) if len(rows) >= 3 and all(r > 0 for _, r in rows) else None
        reports.append(ConvergenceReport(
            function=f"chi2({exp.n})", n=exp.n, method=exp.method,
            replicates=exp.replicates, rows=rows, fit=fit,
            base_seed=exp.base_seed, extra={"quantile": q}))
    return reports
