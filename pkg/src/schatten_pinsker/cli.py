"""Command-line front end: certification campaigns, sweeps and examples.

Every command writes a report ``{schema_version, config, records, aggregate}``
(plus ``results`` for commands that also produce non-certificate numbers) as
JSON or as CSV (records only). Exit status is 0 when no record is
``Violated``, 2 when at least one is, and 1 on usage or I/O errors.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import entropy, experiments
from .certificates import Status, certify
from .matcore import EnsembleConfig, EnsembleKind, ginibre, trial_rng, wishart_density
from .schatten import gradient_fd_check

SCHEMA_VERSION = "1.0"
THREADS_ENV = "SCHATTEN_PINSKER_THREADS"
RECORD_FIELDS = ("name", "parameters", "lhs", "rhs", "gap", "status")

DEFAULT_DIMS = (2, 3, 4, 8)
DEFAULT_PS = experiments.DEFAULT_PS
DEFAULT_ALPHAS = experiments.DEFAULT_ALPHAS
EXTRAPOLATION_MARGIN = 1e-3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# serialization


def format_number(x):
    """17 significant digits; non-finite values become strings."""
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dumps(obj, indent=None, _level=0):
    """JSON text with floats written by :func:`format_number`."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    sep = ", " if indent is None else ","
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_string(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[" + sep.join(items) + end + "]"
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_number(obj)
    return _string(str(obj))


def _string(s):
    return json.dumps(s)


def records_to_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(RECORD_FIELDS)
    for r in records:
        writer.writerow([
            r["name"],
            dumps(r["parameters"]),
            format_number(r["lhs"]).strip('"'),
            format_number(r["rhs"]).strip('"'),
            format_number(r["gap"]).strip('"'),
            r["status"],
        ])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def _workers():
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def _check_domain(values, lo, hi, label, closed_hi=True):
    for v in values:
        if not (lo < v <= hi if closed_hi else lo < v < hi):
            raise UsageError(f"--{label} value {v} outside its domain")


def cmd_certify(args):
    ps = args.p or DEFAULT_PS
    alphas = args.alpha or DEFAULT_ALPHAS
    _check_domain(ps, 1.0, 2.0, "p")
    _check_domain(alphas, 0.0, 1.0, "alpha", closed_hi=False)
    dims = [args.dim] if args.dim else DEFAULT_DIMS
    records = []
    matrix = list(experiments.MATRIX_INEQUALITIES)
    states = [n for n in experiments.ALL_INEQUALITIES if n not in matrix]
    for dim in dims:
        for kind, names in ((EnsembleKind.GINIBRE_GENERAL, matrix),
                            (EnsembleKind(args.ensemble), states)):
            config = EnsembleConfig(dim, kind, args.trials, args.seed)
            report = experiments.ensemble_suite(config, names, ps, alphas, args.tol,
                                                workers=_workers())
            records.extend(c.to_record() for c in report.certificates)
    return records, None


def cmd_sweep(args):
    alphas = args.alpha or DEFAULT_ALPHAS
    _check_domain(alphas, 0.0, 1.0, "alpha", closed_hi=False)
    eps = args.epsilon or list(np.logspace(-5, -2, 7))
    _check_domain(eps, 0.0, 0.5, "epsilon", closed_hi=False)
    records, results = [], []
    for a in alphas:
        for e in eps:
            rho, sigma = experiments.balanced_qubit_pair(e)
            certs = [entropy.classical_renyi_bound_certificate(rho, sigma, a, args.tol)]
            if a >= 0.5:
                certs.append(entropy.renyi_pinsker_certificate(rho, sigma, a, args.tol))
            for c in certs:
                rec = c.to_record()
                rec["parameters"] = {"epsilon": e, **rec["parameters"]}
                records.append(rec)
        row = {"alpha": a}
        for label, states in (("balanced", experiments.balanced_qubit_pair),
                              ("boundary", experiments.boundary_qubit_pair)):
            ratios = [experiments.example_ratio(e, a, states) for e in eps]
            row[label] = {
                "measured": [r.measured for r in ratios],
                "predicted_leading": [r.predicted_leading for r in ratios],
            }
            if len(eps) >= 6:
                row[label]["slope"] = experiments.epsilon_sweep_slope(a, eps, states).exponent
        results.append(row)
    return records, {"epsilon": list(eps), "sweeps": results}


def cmd_example(args):
    alphas = args.alpha or [0.5]
    eps = args.epsilon or [0.1]
    _check_domain(alphas, 0.0, 1.0, "alpha", closed_hi=False)
    _check_domain(eps, 0.0, 0.5, "epsilon", closed_hi=False)
    records, results = [], []
    for e in eps:
        rho, sigma = experiments.balanced_qubit_pair(e)
        certs = [entropy.pinsker_certificate(rho, sigma, args.tol)]
        for a in alphas:
            certs += [entropy.classical_renyi_bound_certificate(rho, sigma, a, args.tol),
                      entropy.ricard_bound_certificate(rho, sigma, a, args.tol),
                      experiments.pinching_certificate(rho, sigma, a, args.tol)]
            if a >= 0.5:
                certs += [entropy.renyi_pinsker_certificate(rho, sigma, a, args.tol),
                          entropy.weakened_pinsker_certificate(rho, sigma, a, args.tol),
                          *entropy.overlap_certificates(rho, sigma, 1.0 / a, args.tol)]
            ratio = experiments.example_ratio(e, a)
            results.append({"epsilon": e, "alpha": a, "measured": ratio.measured,
                            "predicted_leading": ratio.predicted_leading})
        for c in certs:
            rec = c.to_record()
            rec["parameters"] = {"epsilon": e, **rec["parameters"]}
            records.append(rec)
    return records, {"ratios": results}


def cmd_gradient_check(args):
    ps = args.p or (1.3, 1.7)
    _check_domain(ps, 1.0, math.inf, "p", closed_hi=False)
    dim = args.dim or 8
    records = []
    for p in ps:
        for i in range(args.trials):
            rng = trial_rng(args.seed, i)
            A, B = ginibre(rng, dim), ginibre(rng, dim)
            chk = gradient_fd_check(A, B, p, args.t)
            bound = args.rtol * (1 + abs(chk.analytic_slope))
            c = certify("gradient_fd", abs(chk.deviation), bound, args.tol, p=p, trial=i,
                        dim=dim, step=args.t, fd_slope=chk.fd_slope,
                        analytic_slope=chk.analytic_slope)
            records.append(c.to_record())
    return records, None


def cmd_pinsker_constant(args):
    dims = [args.dim] if args.dim else (2, 3, 4)
    records = []
    pairs = []
    for dim in dims:
        for i in range(args.trials):
            rng = trial_rng(args.seed, i)
            pairs.append(({"dim": dim, "trial": i},
                          (wishart_density(rng, dim), wishart_density(rng, dim))))
    for e in args.epsilon or ():
        _check_domain([e], 0.0, 0.5, "epsilon", closed_hi=False)
        pairs.append(({"dim": 2, "epsilon": e}, experiments.balanced_qubit_pair(e)))
    for meta, (rho, sigma) in pairs:
        res = experiments.pinsker_constant_extraction(rho, sigma)
        c = certify("sharp_pinsker_constant", 0.5, res.extrapolated_K, EXTRAPOLATION_MARGIN,
                    **meta, limit_ratio=res.limit_ratio,
                    smallest_step_K=float(res.K_estimates[-1]))
        records.append(c.to_record())
    return records, None


def cmd_iterate_constant(args):
    seq = experiments.constant_iteration(args.k0, args.steps)
    records = []
    for i, k in enumerate(seq):
        c = certify("constant_iteration", abs(k - 0.5), abs(args.k0 - 0.5) * 2.0**-i,
                    args.tol, step=i, K=float(k))
        records.append(c.to_record())
    return records, {"sequence": [float(k) for k in seq]}


COMMANDS = {
    "certify": cmd_certify,
    "sweep": cmd_sweep,
    "example": cmd_example,
    "gradient-check": cmd_gradient_check,
    "pinsker-constant": cmd_pinsker_constant,
    "iterate-constant": cmd_iterate_constant,
}


def build_parser():
    parser = _Parser(prog="schatten-pinsker", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--dim", type=int, default=None)
        sp.add_argument("--trials", type=int, default=100)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--p", type=float, nargs="+", default=None)
        sp.add_argument("--alpha", type=float, nargs="+", default=None)
        sp.add_argument("--epsilon", type=float, nargs="+", default=None)
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", default="-")
        if name == "certify":
            sp.add_argument("--ensemble", default="wishart",
                            choices=[k.value for k in EnsembleKind
                                     if k is not EnsembleKind.GINIBRE_GENERAL])
        if name == "gradient-check":
            sp.add_argument("--t", type=float, default=1e-5)
            sp.add_argument("--rtol", type=float, default=1e-6)
        if name == "iterate-constant":
            sp.add_argument("--k0", type=float, default=0.25)
            sp.add_argument("--steps", type=int, default=20)
    return parser


def _validate(args):
    if args.dim is not None and not 1 <= args.dim <= 128:
        raise UsageError("--dim must lie in [1, 128]")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    if not args.tol >= 0:
        raise UsageError("--tol must be nonnegative")
    if getattr(args, "steps", 0) < 0:
        raise UsageError("--steps must be nonnegative")


def config_echo(args):
    return {k: (list(v) if isinstance(v, (list, tuple)) else v)
            for k, v in sorted(vars(args).items())}


def build_report(args, records, results, wall_time):
    gaps = [r["gap"] for r in records]
    aggregate = {
        "min_gap": min(gaps) if gaps else math.inf,
        "violations": sum(r["status"] == Status.VIOLATED.value for r in records),
        "wall_time": wall_time,
    }
    report = {
        "schema_version": SCHEMA_VERSION,
        "config": config_echo(args),
        "records": records,
        "aggregate": aggregate,
    }
    if results is not None:
        report["results"] = results
    return report


def run(argv=None, stdout=None):
    """Run one command; returns the process exit code."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        start = time.perf_counter()
        records, results = COMMANDS[args.command](args)
        report = build_report(args, records, results, time.perf_counter() - start)
    except UsageError as exc:
        print(f"schatten-pinsker: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"schatten-pinsker: invalid configuration: {exc}", file=sys.stderr)
        return 1
    text = records_to_csv(records) if args.format == "csv" else dumps(report, indent=2) + "\n"
    try:
        if args.out == "-":
            stdout.write(text)
        else:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"schatten-pinsker: cannot write report: {exc}", file=sys.stderr)
        return 1
    return 2 if report["aggregate"]["violations"] else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
