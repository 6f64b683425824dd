"""Sampling and numerical-integration toolkit.

Monte Carlo, Latin Hypercube and Sobol' sequence samplers over the unit
hypercube, with discrepancy measures, convergence-rate benchmarks on
classified test integrands, variance-based sensitivity indices, effective
dimensions and quantile-estimation experiments.

Hot kernels (Sobol' point generation, the O(N^2) L2 discrepancy sum) run
through a compiled extension when available; `qmclab.kernel_backend()`
reports which implementation is active.
"""
from ._backend import BACKEND as _KERNEL_BACKEND
from .discrepancy import (l2_discrepancy, l2_discrepancy_oracle,
                          local_discrepancy, star_discrepancy_bruteforce)
from .functions import (analytic_first_order, analytic_subset_total, evaluate,
                        from_spec, lookup)
from .integrate import (ConvergenceReport, SamplerSpec, SlopeFit,
                        estimate_integral, fit_slope, generate_points,
                        rmse_experiment, single_run_convergence, update_mean)
from .lhs import LhsDesign, lhs_sample, maxmin_lhs, min_pairwise_distance
from .quantile import (QuantileExperiment, chi2_statistic, empirical_quantile,
                       inv_normal_cdf, quantile_rmse_experiment)
from .rng import RandomStream, make_stream, mc_point_set, random_permutation
from .sensitivity import (SensitivityReport, analyze, classify_type,
                          first_order_indices, subset_total_index,
                          superposition_dimension_bound, total_indices,
                          truncation_dimension)
from .sobol import (DirectionTable, SobolEngine, load_direction_table,
                    parse_direction_table, sobol_point, sobol_point_set,
                    verify_property_a, verify_property_aprime)

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Active hot-kernel implementation: "cython" or "python"."""
    return _KERNEL_BACKEND
