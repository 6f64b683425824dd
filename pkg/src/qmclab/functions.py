"""Benchmark integrands over the unit hypercube.

Six functions in three difficulty classes:

  A (few dominant variables):      1A alternating cumulative products,
                                   2A weighted g-function
  B (equal variables, low-order):  1B near-constant product,
                                   2B geometric-mean product
  C (equal variables, high-order): 1C bare g-function, 2C scaled product

All exact integrals equal 1 except 1A, whose integral is
-(1/3) (1 - (-1/2)^n). The product-form functions carry per-factor moments
from which exact variances and sensitivity indices follow in closed form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "TestFunction",
    "AnalyticIndices",
    "FUNCTION_IDS",
    "lookup",
    "from_spec",
    "evaluate",
    "analytic_first_order",
    "analytic_subset_total",
]

FUNCTION_IDS = ("1A", "2A", "1B", "2B", "1C", "2C")

_DEFAULT_DIMS = {"1A": 360, "2A": 100, "1B": 30, "2B": 30, "1C": 10, "2C": 10}


@dataclass(frozen=True)
class TestFunction:
    fid: str
    type_class: str
    n: int
    exact_integral: float
    evaluator: Callable[[np.ndarray], np.ndarray]
    # (constant C, per-factor means, per-factor second moments) when
    # f = C * prod g_i(x_i); None for non-product forms (1A)
    product_moments: tuple[float, np.ndarray, np.ndarray] | None = None
    params: dict = field(default_factory=dict)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return evaluate(self, x)


@dataclass(frozen=True)
class AnalyticIndices:
    mean: float
    variance: float
    first_order_variance: np.ndarray   # V_i
    first_order: np.ndarray            # S_i
    total: np.ndarray                  # S_i^tot


def _neumaier_sum_axis1(terms: np.ndarray) -> np.ndarray:
    # compensated row sums; 1A's alternating series at n = 360 must stay
    # accurate to ~1e-12 against the incremental-mean identity checks
    s = np.zeros(terms.shape[0])
    c = np.zeros(terms.shape[0])
    for j in range(terms.shape[1]):
        v = terms[:, j]
        t = s + v
        big = np.abs(s) >= np.abs(v)
        c += np.where(big, (s - t) + v, (v - t) + s)
        s = t
    return s + c


def _make_1a(n: int) -> TestFunction:
    signs = np.where(np.arange(1, n + 1) % 2 == 0, 1.0, -1.0)

    def evaluator(x):
        return _neumaier_sum_axis1(np.cumprod(x, axis=1) * signs)

    exact = -(1.0 / 3.0) * (1.0 - (-0.5) ** n)
    return TestFunction("1A", "A", n, exact, evaluator)


def _product_function(fid, type_class, n, const, factor, mean, second,
                      params=None) -> TestFunction:
    def evaluator(x):
        return const * np.prod(factor(x), axis=1)

    moments = (const, np.asarray(mean, dtype=float), np.asarray(second, dtype=float))
    return TestFunction(fid, type_class, n, 1.0, evaluator, moments, params or {})


def _make_2a(n: int) -> TestFunction:
    if n < 3:
        raise ValueError("2A needs n >= 3 (a_1 = a_2 = 0, a_i = 6.52 beyond)")
    a = np.full(n, 6.52)
    a[:2] = 0.0
    mean = np.ones(n)
    second = 1.0 + (1.0 / 3.0) / (1.0 + a) ** 2
    return _product_function(
        "2A", "A", n, 1.0,
        lambda x: (np.abs(4.0 * x - 2.0) + a) / (1.0 + a),
        mean, second, {"a": a})


def _make_1b(n: int) -> TestFunction:
    mean = np.ones(n)
    second = np.full(n, 1.0 + (1.0 / 12.0) / (n - 0.5) ** 2)
    return _product_function(
        "1B", "B", n, 1.0, lambda x: (n - x) / (n - 0.5), mean, second)


def _make_2b(n: int) -> TestFunction:
    const = (1.0 + 1.0 / n) ** n
    mean = np.full(n, n / (n + 1.0))
    second = np.full(n, n / (n + 2.0))
    return _product_function(
        "2B", "B", n, const, lambda x: x ** (1.0 / n), mean, second)


def _make_1c(n: int) -> TestFunction:
    return _product_function(
        "1C", "C", n, 1.0, lambda x: np.abs(4.0 * x - 2.0),
        np.ones(n), np.full(n, 4.0 / 3.0))


def _make_2c(n: int) -> TestFunction:
    return _product_function(
        "2C", "C", n, 2.0 ** n, lambda x: x,
        np.full(n, 0.5), np.full(n, 1.0 / 3.0))


_MAKERS = {"1A": _make_1a, "2A": _make_2a, "1B": _make_1b,
           "2B": _make_2b, "1C": _make_1c, "2C": _make_2c}


def lookup(fid: str, n: int | None = None) -> TestFunction:
    """Benchmark function by id ("1A".."2C") at dimension `n` (default canonical)."""
    key = fid.strip().upper()
    if key not in _MAKERS:
        raise KeyError(f"unknown test function {fid!r}; known: {', '.join(FUNCTION_IDS)}")
    if n is None:
        n = _DEFAULT_DIMS[key]
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return _MAKERS[key](n)


def from_spec(spec: str) -> TestFunction:
    """Parse an "id:dim" string such as "1A:360" ("1A" alone uses the default)."""
    fid, _, dim = spec.partition(":")
    return lookup(fid, int(dim) if dim else None)


def evaluate(f: TestFunction, x: np.ndarray) -> np.ndarray:
    """Evaluate `f` on points `x` of shape (N, n) or a single point (n,)."""
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.shape[1] != f.n:
        raise ValueError(f"{f.fid} expects dimension {f.n}, got {x.shape[1]}")
    out = f.evaluator(x)
    return float(out[0]) if single else out


def analytic_first_order(f: TestFunction) -> AnalyticIndices | None:
    """Exact per-variable variances and indices for product-form functions.

    For f = C prod g_i with per-factor mean mu_i and second moment s_i:
      mean    = C prod mu_i
      V       = C^2 prod s_i - mean^2
      V_i     = C^2 (s_i - mu_i^2) prod_{j != i} mu_j^2
      V_i^tot = C^2 (s_i - mu_i^2) prod_{j != i} s_j

    Returns None for 1A (no product representation implemented).
    """
    if f.product_moments is None:
        return None
    const, mu, second = f.product_moments
    mean = const * float(np.prod(mu))
    m2 = const ** 2 * float(np.prod(second))
    variance = m2 - mean ** 2
    var1 = second - mu ** 2
    prod_mu2 = float(np.prod(mu ** 2))
    prod_s = float(np.prod(second))
    v_first = const ** 2 * var1 * prod_mu2 / mu ** 2
    v_total = const ** 2 * var1 * prod_s / second
    return AnalyticIndices(mean, variance, v_first,
                           v_first / variance, v_total / variance)


def analytic_subset_total(f: TestFunction, subset: Sequence[int]) -> float:
    """Exact total sensitivity index of a variable subset (1-based indices).

    Uses the complement identity: the total index of y is one minus the
    closed index of its complement z.
    """
    if f.product_moments is None:
        raise ValueError(f"{f.fid} has no closed-form ANOVA data")
    const, mu, second = f.product_moments
    y = set(subset)
    if not y or not y.issubset(range(1, f.n + 1)):
        raise ValueError("subset must be a non-empty subset of 1..n")
    mean = const * float(np.prod(mu))
    variance = const ** 2 * float(np.prod(second)) - mean ** 2
    z = [i for i in range(1, f.n + 1) if i not in y]
    # closed variance of z: Var(E[f | x_z])
    factors = np.array([second[i - 1] if i in set(z) else mu[i - 1] ** 2
                        for i in range(1, f.n + 1)])
    closed_z = const ** 2 * float(np.prod(factors)) - mean ** 2
    return 1.0 - closed_z / variance
