"""Command-line front end.

Subcommands: gen, discrepancy, verify, integrate, converge, sensitivity,
quantile. Every run writes its report(s) plus a manifest JSON capturing the
subcommand, flags, seed and tool version, sufficient to reproduce the
output bit-for-bit. Files are written atomically (temp + rename).

CSV schemas (consumed by the plotting front end):
  points:       x1,...,xn
  convergence:  method,function,dim,log2N,rmse
  single run:   method,function,dim,log2N,estimate,exact,abs_error
  discrepancy:  method,dim,log2N,replicate,l2
  verify:       property,dim,segment,start,length,satisfied
  quantile:     method,function,dim,quantile,log2N,rmse
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__
from . import sensitivity as sens
from .discrepancy import l2_discrepancy
from .functions import from_spec
from .integrate import (ConvergenceReport, SamplerSpec, generate_points,
                        rmse_experiment, single_run_convergence)
from .quantile import CHI2_5_PERCENTILES, QuantileExperiment, quantile_rmse_experiment
from .sobol import load_direction_table, sobol_point_set, verify_property_a, \
    verify_property_aprime

TABLE_ENV_VAR = "QMCLAB_DIRECTION_TABLE"

SAMPLERS = ("mc", "lhs", "maxmin-lhs", "sobol")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be a positive integer")
    return value


def _log2_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(lo)]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a log2 range like '6..16'") from None
    if not values or values[0] < 0:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return values


def _function_spec(text: str):
    try:
        return from_spec(text)
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _methods_list(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    for m in methods:
        if m not in SAMPLERS:
            raise argparse.ArgumentTypeError(f"unknown method {m!r}")
    if not methods:
        raise argparse.ArgumentTypeError("need at least one method")
    return methods


def _levels_list(text: str) -> list[float]:
    try:
        levels = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad quantile levels {text!r}") from None
    for q in levels:
        if not 0.0 < q < 1.0:
            raise argparse.ArgumentTypeError("levels must be strictly inside (0, 1)")
    return levels


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qmclab-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_manifest(args: argparse.Namespace, outputs: list[str]) -> str:
    flags = {k: v for k, v in vars(args).items()
             if k not in ("func", "function", "subcommand") and not k.startswith("_")}
    if hasattr(args, "function") and args.function is not None:
        flags["function"] = f"{args.function.fid}:{args.function.n}"
    manifest = {
        "tool": "qmclab",
        "version": __version__,
        "subcommand": args.subcommand,
        "flags": flags,
        "outputs": outputs,
    }
    path = os.path.splitext(outputs[0])[0] + ".manifest.json"
    _atomic_write(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _load_table(args: argparse.Namespace):
    path = getattr(args, "direction_table", None) or os.environ.get(TABLE_ENV_VAR)
    return load_direction_table(path)


def _sampler_spec(method: str, args: argparse.Namespace, n: int) -> SamplerSpec:
    table = _load_table(args) if method == "sobol" else None
    return SamplerSpec(method, n, seed=getattr(args, "seed", 0),
                       skip=getattr(args, "skip", 1) or 1,
                       candidates=getattr(args, "candidates", 4), table=table)


def _points_csv(points: np.ndarray) -> str:
    header = ",".join(f"x{i + 1}" for i in range(points.shape[1]))
    lines = [header]
    for row in points:
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _convergence_csv(reports: list[ConvergenceReport]) -> str:
    lines = ["method,function,dim,log2N,rmse"]
    for rep in reports:
        for count, rmse in rep.rows:
            lines.append(f"{rep.method},{rep.function},{rep.n},"
                         f"{count.bit_length() - 1},{repr(rmse)}")
    return "\n".join(lines) + "\n"


def _quantile_csv(reports: list[ConvergenceReport]) -> str:
    lines = ["method,function,dim,quantile,log2N,rmse"]
    for rep in reports:
        q = rep.extra["quantile"]
        for count, rmse in rep.rows:
            lines.append(f"{rep.method},{rep.function},{rep.n},{repr(q)},"
                         f"{count.bit_length() - 1},{repr(rmse)}")
    return "\n".join(lines) + "\n"


def _slopes_json(reports: list[ConvergenceReport]) -> str:
    payload = {}
    for rep in reports:
        entry = {"function": rep.function, "dim": rep.n,
                 "replicates": rep.replicates}
        if rep.fit is not None:
            entry.update(c=rep.fit.c, alpha=rep.fit.alpha, r2=rep.fit.r2)
        payload[rep.method] = entry
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _cmd_gen(args) -> list[str]:
    spec = _sampler_spec(args.sampler, args, args.dim)
    if args.sampler == "sobol":
        points = sobol_point_set(spec.table, args.dim, args.count,
                                 start=args.skip)
    else:
        points = generate_points(spec, args.count)
    _atomic_write(args.out, _points_csv(points))
    return [args.out]


def _cmd_discrepancy(args) -> list[str]:
    log2s = list(range(args.log2n_min, args.log2n_max + 1))
    spec = _sampler_spec(args.sampler, args, args.dim)
    lines = ["method,dim,log2N,replicate,l2"]
    for k in range(args.replicates):
        for j in log2s:
            rep = spec.for_replicate(k, 2 ** j)
            pts = generate_points(rep, 2 ** j)
            lines.append(f"{args.sampler},{args.dim},{j},{k},"
                         f"{repr(l2_discrepancy(pts))}")
    _atomic_write(args.out, "\n".join(lines) + "\n")
    return [args.out]


def _cmd_verify(args) -> list[str]:
    table = _load_table(args)
    n = args.dim
    seg_len = 2 ** n if args.property == "A" else 4 ** n
    check = verify_property_a if args.property == "A" else verify_property_aprime
    lines = ["property,dim,segment,start,length,satisfied"]
    for k in range(args.segments):
        start = k * seg_len
        points = sobol_point_set(table, n, seg_len, start=start)
        ok = check(points)
        lines.append(f"{args.property},{n},{k},{start},{seg_len},{str(ok).lower()}")
    _atomic_write(args.out, "\n".join(lines) + "\n")
    return [args.out]


def _cmd_integrate(args) -> list[str]:
    reports = []
    for method in args.methods:
        spec = _sampler_spec(method, args, args.function.n)
        reports.append(rmse_experiment(args.function, spec, args.log2n,
                                       replicates=args.replicates))
    _atomic_write(args.out, _convergence_csv(reports))
    _atomic_write(args.slopes, _slopes_json(reports))
    return [args.out, args.slopes]


def _cmd_converge(args) -> list[str]:
    f = args.function
    lines = ["method,function,dim,log2N,estimate,exact,abs_error"]
    for method in args.methods:
        spec = _sampler_spec(method, args, f.n)
        for count, est in single_run_convergence(f, spec, args.log2n):
            lines.append(f"{method},{f.fid},{f.n},{count.bit_length() - 1},"
                         f"{repr(est)},{repr(f.exact_integral)},"
                         f"{repr(abs(est - f.exact_integral))}")
    _atomic_write(args.out, "\n".join(lines) + "\n")
    return [args.out]


def _cmd_sensitivity(args) -> list[str]:
    sampler = _sampler_spec(args.sampler, args, 2 * args.function.n)
    report = sens.analyze(args.function, args.base_n, sampler=sampler,
                          threshold=args.threshold)
    _atomic_write(args.out, report.to_json() + "\n")
    return [args.out]


def _cmd_quantile(args) -> list[str]:
    truths = []
    for q in args.levels:
        if (args.dim, q) in ((5, 0.05), (5, 0.95)):
            truths.append(CHI2_5_PERCENTILES[q])
        else:
            from scipy.stats import chi2
            truths.append(float(chi2.ppf(q, df=args.dim)))
    table = _load_table(args) if "sobol" in args.methods else None
    reports = []
    for method in args.methods:
        exp = QuantileExperiment(
            n=args.dim, levels=tuple(args.levels), true_values=tuple(truths),
            method=method, log2_range=tuple(args.log2n),
            replicates=args.replicates, base_seed=args.seed)
        reports.extend(quantile_rmse_experiment(exp, table=table))
    _atomic_write(args.out, _quantile_csv(reports))
    return [args.out]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmclab",
        description="Sampling, discrepancy and integration-convergence experiments")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, seed=True, table=False):
        if seed:
            p.add_argument("--seed", type=int, default=0,
                           help="base seed (replicate k uses seed+k)")
        if table:
            p.add_argument("--direction-table", default=None,
                           help=f"direction-number file (or ${TABLE_ENV_VAR})")

    p = sub.add_parser("gen", help="export a point set as CSV")
    p.add_argument("--sampler", choices=SAMPLERS, required=True)
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--skip", type=int, default=0,
                   help="first Sobol' index (0 includes the origin)")
    p.add_argument("--candidates", type=_positive_int, default=4)
    p.add_argument("--out", default="points.csv")
    add_common(p, table=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("discrepancy", help="L2 discrepancy sweep over N")
    p.add_argument("--sampler", choices=SAMPLERS, required=True)
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--log2n-max", type=_positive_int, required=True)
    p.add_argument("--log2n-min", type=_positive_int, default=4)
    p.add_argument("--replicates", type=_positive_int, default=1)
    p.add_argument("--out", default="discrepancy.csv")
    add_common(p, table=True)
    p.set_defaults(func=_cmd_discrepancy)

    p = sub.add_parser("verify", help="check segment stratification properties")
    p.add_argument("--property", choices=("A", "Aprime"), required=True)
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--segments", type=_positive_int, default=16)
    p.add_argument("--out", default="verify.csv")
    add_common(p, seed=False, table=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("integrate", help="RMSE convergence experiment")
    p.add_argument("--function", type=_function_spec, required=True,
                   metavar="ID:DIM")
    p.add_argument("--methods", type=_methods_list, default=["mc", "lhs", "sobol"])
    p.add_argument("--log2n", type=_log2_range, default=list(range(6, 17)),
                   metavar="LO..HI")
    p.add_argument("--replicates", type=_positive_int, default=50)
    p.add_argument("--candidates", type=_positive_int, default=4)
    p.add_argument("--out", default="convergence.csv")
    p.add_argument("--slopes", default="slopes.json")
    add_common(p, table=True)
    p.set_defaults(func=_cmd_integrate)

    p = sub.add_parser("converge", help="single-run convergence trace")
    p.add_argument("--function", type=_function_spec, required=True,
                   metavar="ID:DIM")
    p.add_argument("--methods", type=_methods_list, default=["mc", "lhs", "sobol"])
    p.add_argument("--log2n", type=_log2_range, default=list(range(2, 17)),
                   metavar="LO..HI")
    p.add_argument("--candidates", type=_positive_int, default=4)
    p.add_argument("--out", default="single_run.csv")
    add_common(p, table=True)
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("sensitivity", help="global sensitivity report")
    p.add_argument("--function", type=_function_spec, required=True,
                   metavar="ID:DIM")
    p.add_argument("--base-n", type=_positive_int, default=8192)
    p.add_argument("--sampler", choices=SAMPLERS, default="sobol")
    p.add_argument("--threshold", type=float, default=0.99)
    p.add_argument("--candidates", type=_positive_int, default=4)
    p.add_argument("--out", default="sensitivity.json")
    add_common(p, table=True)
    p.set_defaults(func=_cmd_sensitivity)

    p = sub.add_parser("quantile", help="quantile-estimation RMSE experiment")
    p.add_argument("--dim", type=_positive_int, default=5)
    p.add_argument("--levels", type=_levels_list, default=[0.05, 0.95])
    p.add_argument("--methods", type=_methods_list, default=["mc", "lhs", "sobol"])
    p.add_argument("--log2n", type=_log2_range, default=list(range(6, 15)),
                   metavar="LO..HI")
    p.add_argument("--replicates", type=_positive_int, default=25)
    p.add_argument("--candidates", type=_positive_int, default=4)
    p.add_argument("--out", default="quantile.csv")
    add_common(p, table=True)
    p.set_defaults(func=_cmd_quantile)

    return parser


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        outputs = args.func(args)
        _write_manifest(args, outputs)
    except (ValueError, KeyError, OSError, ArithmeticError) as exc:
        print(f"qmclab: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
