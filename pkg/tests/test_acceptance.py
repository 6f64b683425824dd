"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criteria run at desk scale with fixed seeds and deterministic protocols, so
every line below is reproducible bit-for-bit. Known-unattainable
sub-criteria are asserted faithfully anyway; the analysis of why they
cannot pass with this implementation lives outside the package.
"""
import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

import qmclab
from qmclab import (analytic_first_order, l2_discrepancy,
                    l2_discrepancy_oracle, load_direction_table, lookup,
                    make_stream, mc_point_set, sobol_point_set, update_mean,
                    verify_property_a, verify_property_aprime)
from qmclab.integrate import (SamplerSpec, estimate_integral, generate_points,
                              rmse_experiment, single_run_convergence)
from qmclab.quantile import (CHI2_5_PERCENTILES, QuantileExperiment,
                             quantile_rmse_experiment)
from qmclab.sensitivity import analyze, truncation_dimension


def report(number, ok, detail):
    flag = "PASS" if ok else "FAIL"
    print(f"[{flag}] criterion {number}: {detail}")
    return ok


@pytest.fixture(scope="module")
def table():
    return load_direction_table()


def test_criterion_01_warnock_cross_check():
    start = time.perf_counter()
    exact_ok = (abs(l2_discrepancy([[0.5]]) - math.sqrt(1 / 12)) <= 1e-12
                and abs(l2_discrepancy([[0.0]]) - math.sqrt(1 / 3)) <= 1e-12)
    worst = 0.0
    stream = make_stream(101)
    for trial in range(20):
        n = 1 + trial % 2
        count = 1 + (trial * 5) % 16
        pts = stream.uniform(count, n)
        gap = abs(l2_discrepancy(pts) - l2_discrepancy_oracle(pts, grid=2000))
        worst = max(worst, gap)
    elapsed = time.perf_counter() - start
    ok = exact_ok and worst <= 2e-3 and elapsed < 60
    assert report(1, ok, f"closed form vs quadrature oracle: worst gap "
                         f"{worst:.2e} (<=2e-3), analytic cases "
                         f"{'exact' if exact_ok else 'WRONG'}, {elapsed:.1f}s")


def test_criterion_02_stratification_properties(table):
    start = time.perf_counter()
    sobol_ok = True
    for n in range(2, 7):
        seg = 2 ** n
        for k in range(16):
            if not verify_property_a(sobol_point_set(table, n, seg, start=k * seg)):
                sobol_ok = False
    for n in (2, 3):
        if not verify_property_aprime(sobol_point_set(table, n, 4 ** n)):
            sobol_ok = False

    mc_failures = 0
    for seed in range(1, 21):
        stream = make_stream(seed)
        battery = all(
            verify_property_a(mc_point_set(stream, n, 2 ** n))
            for n in range(2, 7)
        ) and all(
            verify_property_aprime(mc_point_set(stream, n, 4 ** n))
            for n in (2, 3)
        )
        if not battery:
            mc_failures += 1
    elapsed = time.perf_counter() - start
    ok = sobol_ok and mc_failures >= 19 and elapsed < 10
    assert report(2, ok, f"Sobol' segments satisfy A (n=2..6, k=0..15) and "
                         f"A' (n=2,3): {sobol_ok}; MC fails {mc_failures}/20, "
                         f"{elapsed:.1f}s")


def _table_criterion(number, fid, n, bands, extra_checks, runtime_cap):
    start = time.perf_counter()
    f = lookup(fid, n)
    reports = {}
    for method in ("sobol", "mc", "lhs"):
        spec = SamplerSpec(method, n, seed=0)
        reports[method] = rmse_experiment(f, spec, range(6, 17), replicates=10)
    elapsed = time.perf_counter() - start

    parts = []
    ok = elapsed < runtime_cap
    for method, (lo, hi) in bands.items():
        alpha = reports[method].fit.alpha
        in_band = lo <= alpha <= hi
        ok = ok and in_band
        parts.append(f"alpha_{method}={alpha:.3f}{'' if in_band else f'!in[{lo},{hi}]'}")
    for label, passed in extra_checks(reports):
        ok = ok and passed
        parts.append(f"{label}={'yes' if passed else 'NO'}")
    assert report(number, ok, f"{fid}:{n} " + " ".join(parts) + f", {elapsed:.0f}s")


def test_criterion_03_type_a_convergence():
    def extras(reports):
        yield "c_sobol<c_mc", reports["sobol"].fit.c < reports["mc"].fit.c

    _table_criterion(3, "1A", 360,
                     {"sobol": (0.80, 1.05), "mc": (0.40, 0.60),
                      "lhs": (0.40, 0.65)},
                     extras, runtime_cap=180)


def test_criterion_04_type_b_convergence():
    def extras(reports):
        lhs = dict(reports["lhs"].rows)
        mc = dict(reports["mc"].rows)
        yield "lhs<mc from 2^8", all(lhs[nn] < mc[nn] for nn in lhs if nn >= 2 ** 8)

    _table_criterion(4, "1B", 30,
                     {"sobol": (0.85, 1.05), "lhs": (0.55, 0.80),
                      "mc": (0.40, 0.62)},
                     extras, runtime_cap=180)


def test_criterion_05_type_c_convergence():
    def extras(reports):
        gap = abs(reports["lhs"].fit.alpha - reports["mc"].fit.alpha)
        yield f"|alpha_lhs-alpha_mc|={gap:.3f}<=0.1", gap <= 0.1

    _table_criterion(5, "1C", 10, {"sobol": (0.55, 0.78)}, extras,
                     runtime_cap=180)


def test_criterion_06_single_run_convergence():
    f = lookup("1A", 360)
    exact = f.exact_integral

    qmc_rows = single_run_convergence(f, SamplerSpec("sobol", 360), range(2, 17))
    qmc_ok = all(abs(est - exact) <= 1e-2 for count, est in qmc_rows
                 if count >= 2 ** 5)

    def first_sustained(method):
        rows = single_run_convergence(f, SamplerSpec(method, 360, seed=1),
                                      range(2, 17))
        errs = [(count, abs(est - exact)) for count, est in rows]
        for i, (count, _) in enumerate(errs):
            if all(e <= 1e-2 for _, e in errs[i:]):
                return count
        return None

    mc_first = first_sustained("mc")
    lhs_first = first_sustained("lhs")
    mc_ok = mc_first is not None and mc_first >= 2 ** 8
    lhs_ok = lhs_first is not None and lhs_first >= 2 ** 8
    ok = qmc_ok and mc_ok and lhs_ok
    assert report(6, ok, f"QMC within 1e-2 from 2^5: {qmc_ok}; first sustained "
                         f"N: mc=2^{(mc_first or 0).bit_length() - 1} "
                         f"lhs=2^{(lhs_first or 0).bit_length() - 1} "
                         f"(required >= 2^8)")


def test_criterion_07_l2_discrepancy_ordering():
    medians = {}
    for method in ("sobol", "mc", "lhs"):
        spec = SamplerSpec(method, 5, seed=0)
        values = []
        for k in range(20):
            rep = spec.for_replicate(k, 2 ** 14)
            values.append(l2_discrepancy(generate_points(rep, 2 ** 14)))
        medians[method] = float(np.median(values))
    ok = (medians["sobol"] < medians["lhs"]
          and medians["sobol"] < medians["mc"]
          and medians["sobol"] <= medians["mc"] / 3)
    assert report(7, ok, "median L2 at n=5, N=2^14: "
                         + " ".join(f"{m}={v:.3e}" for m, v in medians.items())
                         + f", sobol <= mc/3: {medians['sobol'] <= medians['mc'] / 3}")


def test_criterion_08_quantile_experiment():
    def pdf(x):
        return x ** 1.5 * math.exp(-x / 2) / (2 ** 2.5 * math.gamma(2.5))

    oracle_ok = all(
        abs(quad(pdf, 0, x, limit=200)[0] - q) <= 0.001
        for q, x in CHI2_5_PERCENTILES.items()
    )

    rmse = {}
    for method in ("sobol", "mc"):
        exp = QuantileExperiment(method=method, log2_range=(12,), replicates=25)
        rmse[method] = {r.extra["quantile"]: r.rows[0][1]
                        for r in quantile_rmse_experiment(exp)}
    qmc_wins = all(rmse["sobol"][q] < rmse["mc"][q] for q in (0.05, 0.95))
    ok = oracle_ok and qmc_wins
    assert report(8, ok, f"chi2(5) CDF anchors 1.146/11.071 ok: {oracle_ok}; "
                         f"QMC<MC at q=0.05: {rmse['sobol'][0.05]:.2e}<"
                         f"{rmse['mc'][0.05]:.2e}, q=0.95: "
                         f"{rmse['sobol'][0.95]:.2e}<{rmse['mc'][0.95]:.2e}")


class _TwoActive:
    fid = "embedded"
    n = 10

    def __call__(self, x):
        return np.abs(4 * x[:, 0] - 2) * np.abs(4 * x[:, 1] - 2)


def test_criterion_09_sensitivity_oracles():
    z_ok = True
    details = []
    for fid, n in [("1C", 2), ("1C", 10), ("2A", 100)]:
        f = lookup(fid, n)
        ai = analytic_first_order(f)
        rep = analyze(f, 2 ** 13)
        zs = np.abs(rep.raw_first_order - ai.first_order) / rep.first_order_se
        zt = np.abs(rep.raw_total - ai.total) / rep.total_se
        worst = max(zs.max(), zt.max())
        z_ok = z_ok and worst <= 3.0
        details.append(f"{fid}:{n} max|z|={worst:.2f}")

    dt = truncation_dimension(_TwoActive(), 2 ** 12)
    dt_ok = dt == 2

    # classification: 2B sits nearest its threshold and needs 2^14 samples
    # to resolve; 1A at 2^13 keeps the 360-hybrid scan affordable
    class_n = {"1A": 2 ** 13, "2A": 2 ** 14, "1B": 2 ** 14, "2B": 2 ** 14,
               "1C": 2 ** 14, "2C": 2 ** 14}
    classes_ok = True
    for fid in ("1A", "2A", "1B", "2B", "1C", "2C"):
        f = lookup(fid)
        rep = analyze(f, class_n[fid])
        if rep.type_class != f.type_class:
            classes_ok = False
            details.append(f"{fid} misclassified as {rep.type_class}")
    ok = z_ok and dt_ok and classes_ok
    assert report(9, ok, "; ".join(details) + f"; embedding d_T={dt}; "
                         f"all six classes correct: {classes_ok}")


def test_criterion_10_incremental_identity():
    worst = 0.0
    for fid in ("1A", "2A", "1B", "2B", "1C", "2C"):
        f = lookup(fid)
        for method in ("mc", "sobol"):
            spec = SamplerSpec(method, f.n, seed=3)
            values = f(generate_points(spec, 10 ** 4))
            folded = 0.0
            for i, v in enumerate(values, start=1):
                folded = update_mean(folded, i, float(v))
            batch = estimate_integral(spec, f, 10 ** 4)
            worst = max(worst, abs(folded - batch) / abs(batch))
    ok = worst <= 1e-12
    assert report(10, ok, f"update_mean fold vs batch estimate: worst "
                          f"relative gap {worst:.2e} (<=1e-12)")
