"""
Command-line front end.

    grover-walk simulate   --theta T --alpha=RE,IM --beta=RE,IM --gamma=RE,IM --steps N --window W
    grover-walk eigen      --theta T --case {ii-a,i-a,thm1}
    grover-walk stationary --theta T --case {thm1+,thm1-,i,ii-a,ii-b} --alpha=RE,IM [--gamma=RE,IM] --window W
    grover-walk limits     --alpha=RE,IM --beta=RE,IM --gamma=RE,IM --window W [--steps N]
    grover-walk verify

Tables go to stdout (CSV or JSON), diagnostics to stderr. Exit status is 0 on
success, 1 when a numerical check fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings

import numpy as np

from . import acceptance
from .closed_form import (Thm1Branch, homogeneous_limit_measure, lambda_minus1_family,
                          thm1_eigenvector, thm1_measure, thm1_params)
from .errors import GroverWalkError, NonDecayingWarning
from .lattice import CoinConfig, WaveWindow, phi, step
from .spectral import (EigenParams, case_ia_solutions, common_ratio, lambda_case_iia,
                       lemma2_ratios)
from .verify import time_averaged_measure

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MEASURE_RTOL = 1e-9
UNIT_TOL = 1e-12


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``"re,im"`` (or a bare real) into a complex number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")


def parse_theta(text: str) -> float:
    try:
        theta = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"theta must be a number, got {text!r}") from None
    if not (0.0 <= theta < 2 * math.pi):
        raise argparse.ArgumentTypeError(f"theta must lie in [0, 2*pi), got {theta!r}")
    return theta


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(f"{float(v):.17g}")
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def emit(args, columns, rows, invariants, out=None):
    out = out or sys.stdout
    if args.output_format == "json":
        spec = {k: _json_value(v) for k, v in sorted(vars(args).items()) if k != "func"}
        doc = {
            "spec": spec,
            "rows": [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows],
            "invariants_checked": [{k: _json_value(v) for k, v in inv.items()} for inv in invariants],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    failed = [inv["name"] for inv in invariants if not inv["passed"]]
    for name in failed:
        print(f"invariant failed: {name}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_simulate(args):
    if args.window < args.steps:
        raise UsageError(f"--window ({args.window}) must be at least --steps ({args.steps})")
    config = CoinConfig(args.theta)
    psi = WaveWindow.localized([args.alpha, args.beta, args.gamma], args.window)
    lo, hi = -args.window + args.steps, args.window - args.steps
    norm0 = psi.interior_norm2()
    rows = []
    for n in range(args.steps + 1):
        if n:
            psi = step(psi, config)
        mu = phi(psi)
        rows += [(n, x, mu.at(x)) for x in range(lo, hi + 1)]
    # support of the state grows by one site per step, so the full window is exact
    drift = abs(float(np.sum(np.abs(psi.amps) ** 2)) - norm0)
    invariants = [{"name": "norm conserved", "passed": drift < 1e-10, "value": drift}]
    return emit(args, ["step", "x", "value"], rows, invariants)


def _eigen_row(label, lam, theta_s):
    ts = complex("nan") if theta_s is None else complex(theta_s)
    decaying = theta_s is not None and abs(theta_s) < 1 and abs(abs(lam) - 1) <= 1e-10
    return (label, lam.real, lam.imag, abs(lam), ts.real, ts.imag, abs(ts), decaying)


def cmd_eigen(args):
    config = CoinConfig(args.theta)
    rows = []
    if args.case == "ii-a":
        for label, lam in zip(("lambda(+)", "lambda(-)"), lambda_case_iia(config)):
            ratios = lemma2_ratios(EigenParams(lam, 1.0, 0.0, -1.0, config.omega))
            rows.append(_eigen_row(label, lam, ratios.common()))
    elif args.case == "thm1":
        for sign in "+-":
            p = thm1_params(config, Thm1Branch(sign))
            rows.append(_eigen_row(f"thm1{sign}", p.lam, common_ratio(p)))
    else:
        for k, sol in enumerate(case_ia_solutions(config), start=1):
            rows.append(_eigen_row(f"lambda{k}", sol.lam, sol.theta_s))
    invariants = []
    if args.case in ("ii-a", "thm1"):
        err = max(abs(r[3] - 1) for r in rows)
        invariants.append({"name": "|lambda| = 1", "passed": err < UNIT_TOL, "value": err})
    columns = ["label", "lambda_re", "lambda_im", "abs_lambda",
               "theta_s_re", "theta_s_im", "abs_theta_s", "decaying"]
    return emit(args, columns, rows, invariants)


def cmd_stationary(args):
    config = CoinConfig(args.theta)
    w = args.window
    if args.case in ("thm1+", "thm1-"):
        if args.gamma is not None:
            raise UsageError("--gamma is fixed to -alpha for the thm1 cases")
        branch = Thm1Branch(args.case[-1], args.alpha)
        closed = thm1_measure(config, branch, w)
        psi, _ = thm1_eigenvector(config, branch, w)
    else:
        psi, closed = lambda_minus1_family(args.case, config, args.alpha, args.gamma, half_width=w)
    oracle = phi(psi)
    rows, worst = [], 0.0
    for x in range(-w, w + 1):
        value, ref = closed.at(x), oracle.at(x)
        diff = abs(value - ref)
        worst = max(worst, diff / max(abs(ref), np.finfo(float).tiny))
        rows.append((x, value, ref, diff))
    invariants = [{"name": "closed form equals phi of eigenvector",
                   "passed": worst < MEASURE_RTOL, "value": worst}]
    return emit(args, ["x", "value", "oracle", "absdiff"], rows, invariants)


def cmd_limits(args):
    w = args.window
    closed = homogeneous_limit_measure(args.alpha, args.beta, args.gamma, half_width=w)
    if not args.steps:
        return emit(args, ["x", "value"], [(x, closed.at(x)) for x in range(-w, w + 1)], [])
    psi0 = WaveWindow.localized([args.alpha, args.beta, args.gamma], w + args.steps)
    avg = time_averaged_measure(psi0, args.steps, CoinConfig(0.0))
    rows = [(x, closed.at(x), avg.at(x), abs(closed.at(x) - avg.at(x))) for x in range(-w, w + 1)]
    return emit(args, ["x", "value", "oracle", "absdiff"], rows, [])


def cmd_verify(args):
    results = acceptance.run_all()
    rows = [(r.number, r.name, r.passed, r.detail) for r in results]
    invariants = [{"name": f"criterion {r.number}: {r.name}", "passed": r.passed, "value": r.detail}
                  for r in results]
    return emit(args, ["criterion", "name", "passed", "detail"], rows, invariants)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grover-walk",
        description="Three-state Grover walk with a phase defect at the origin.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, theta=True):
        if theta:
            p.add_argument("--theta", type=parse_theta, required=True,
                           help="defect phase in radians, 0 <= theta < 2*pi")
        p.add_argument("--output-format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("simulate", help="evolve a state localized at the origin")
    common(p)
    p.add_argument("--alpha", type=parse_complex, default=complex(1.0))
    p.add_argument("--beta", type=parse_complex, default=complex(0.0))
    p.add_argument("--gamma", type=parse_complex, default=complex(0.0))
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--window", type=int, default=32, help="half-width of the lattice window")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("eigen", help="eigenvalues and decay ratios of a family")
    common(p)
    p.add_argument("--case", choices=("ii-a", "i-a", "thm1"), required=True)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("stationary", help="closed-form stationary measure against phi of the eigenvector")
    common(p)
    p.add_argument("--case", choices=("thm1+", "thm1-", "i", "ii-a", "ii-b"), required=True)
    p.add_argument("--alpha", type=parse_complex, default=complex(1.0))
    p.add_argument("--gamma", type=parse_complex, default=None)
    p.add_argument("--window", type=int, default=32)
    p.set_defaults(func=cmd_stationary)

    p = sub.add_parser("limits", help="limit measure of the homogeneous walk")
    common(p, theta=False)
    p.add_argument("--alpha", type=parse_complex, default=complex(1.0))
    p.add_argument("--beta", type=parse_complex, default=complex(0.0))
    p.add_argument("--gamma", type=parse_complex, default=complex(-1.0))
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--steps", type=int, default=0,
                   help="if positive, add a time-averaged simulation over this many steps")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("verify", help="run every acceptance criterion")
    common(p, theta=False)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("steps", "window"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            parser.error(f"--{name} must be nonnegative")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonDecayingWarning)
        try:
            code = args.func(args)
        except UsageError as exc:
            parser.error(str(exc))
        except (GroverWalkError, ValueError) as exc:
            print(f"grover-walk: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
