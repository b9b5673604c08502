"""Command-line interface.

Subcommands: simulate (trajectory file), sweep (run time vs list length),
find-runtime (single-N sweep row), bounds (analytical bound reports as JSON
lines), validate (invariant suites). Outputs are schema-stable and serialized
with 17 significant digits so reruns are byte-identical; diagnostics go to
stderr, controlled by the ADIA_LOG environment variable.

Exit codes: 0 ok, 1 validation-suite failure, 2 argument error,
3 integration/bracketing failure, 4 partial sweep failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from . import analysis, bounds, dynamics, validate
from .dynamics import SimOptions
from .errors import BracketError, DomainError, IntegrationError
from .model import ModelParams, Schedule

log = logging.getLogger("adiasearch")

SWEEP_HEADER = "log2N,log2T,N,T,p,omega,sigma,schedule"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _configure_logging() -> None:
    level_name = os.environ.get("ADIA_LOG", "").upper()
    level = getattr(logging, level_name, None) if level_name else logging.WARNING
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def _add_model_args(p: argparse.ArgumentParser, with_n: bool = True) -> None:
    if with_n:
        p.add_argument("--n", type=int, required=True, help="list length N (>= 2)")
    p.add_argument("--omega", type=float, default=1.0,
                   help="degree of openness in [0, 1]; A=cos(w*pi/2), B=sin(w*pi/2)")
    p.add_argument("--A", type=float, default=None,
                   help="explicit Hamiltonian weight (overrides --omega; give --B too)")
    p.add_argument("--B", type=float, default=None,
                   help="explicit dephasing weight (overrides --omega; give --A too)")
    p.add_argument("--sigma", type=float, default=1.0,
                   help="dephasing exponent: Gamma = gap**sigma (default 1)")
    p.add_argument("--schedule", choices=["global", "local"], default="global")


def _add_sim_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--abs-tol", type=float, default=1e-10)
    p.add_argument("--samples", type=int, default=1001,
                   help="number of recorded s samples")


def _add_out_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default="-", help="output path ('-' = stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _params_from(args, n: int | None = None) -> ModelParams:
    n = args.n if n is None else n
    schedule = Schedule(args.schedule)
    if (args.A is None) != (args.B is None):
        raise DomainError("give both --A and --B, or neither")
    if args.A is not None:
        return ModelParams(n_items=n, sigma=args.sigma, coeff_a=args.A,
                           coeff_b=args.B, schedule=schedule)
    return ModelParams.from_omega(n, args.omega, sigma=args.sigma,
                                  schedule=schedule)


def _opts_from(args, sample_count: int | None = None) -> SimOptions:
    return SimOptions(rel_tol=args.rel_tol, abs_tol=args.abs_tol,
                      sample_count=sample_count or args.samples)


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _pow2_range(n_min: int, n_max: int) -> list[int]:
    for n in (n_min, n_max):
        if n < 2 or n & (n - 1):
            raise DomainError(f"sweep grid endpoints must be powers of two >= 2, got {n}")
    if n_min > n_max:
        raise DomainError("--n-min must not exceed --n-max")
    ns = []
    n = n_min
    while n <= n_max:
        ns.append(n)
        n *= 2
    return ns


def cmd_simulate(args) -> int:
    params = _params_from(args)
    traj = dynamics.evolve(params, args.T, opts=_opts_from(args))
    if args.format == "csv":
        lines = ["s,vx,vy,vz,p,y"]
        for s, v, p, y in traj:
            lines.append(",".join(_fmt(x) for x in (s, v[0], v[1], v[2], p, y)))
    else:
        lines = []
        for s, v, p, y in traj:
            lines.append(json.dumps({"s": s, "vx": v[0], "vy": v[1],
                                     "vz": v[2], "p": p, "y": y}))
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _sweep_line(row: analysis.SweepRow, fmt: str) -> str:
    n = row.n_items
    if row.failed:
        if fmt == "csv":
            return f"{_fmt(math.log2(n))},,{n},,,{_fmt(row.omega)},{_fmt(row.sigma)},{row.schedule.value}"
        return json.dumps({"log2N": math.log2(n), "log2T": None, "N": n,
                           "T": None, "p": None, "omega": row.omega,
                           "sigma": row.sigma, "schedule": row.schedule.value})
    t = row.run_time
    if fmt == "csv":
        return ",".join([_fmt(math.log2(n)), _fmt(math.log2(t)), str(n), _fmt(t),
                         _fmt(row.p_achieved), _fmt(row.omega), _fmt(row.sigma),
                         row.schedule.value])
    return json.dumps({"log2N": math.log2(n), "log2T": math.log2(t), "N": n,
                       "T": t, "p": row.p_achieved, "omega": row.omega,
                       "sigma": row.sigma, "schedule": row.schedule.value})


def cmd_sweep(args) -> int:
    base = _params_from(args, n=2)
    ns = _pow2_range(args.n_min, args.n_max)
    table = analysis.sweep(ns, args.p_target, base, p_tol=args.p_tol,
                           opts=_opts_from(args, sample_count=2), jobs=args.jobs)
    lines = [SWEEP_HEADER] if args.format == "csv" else []
    lines += [_sweep_line(row, args.format) for row in table.rows]
    _write(args.out, "\n".join(lines) + "\n")
    if table.any_failed:
        for row in table.rows:
            if row.failed:
                log.error("sweep row N=%d failed: %s", row.n_items, row.error)
        return 4
    return 0


def cmd_find_runtime(args) -> int:
    params = _params_from(args)
    res = analysis.find_runtime(params, args.p_target, p_tol=args.p_tol,
                                opts=_opts_from(args, sample_count=2))
    row = analysis.SweepRow(n_items=params.n_items, run_time=res.run_time,
                            p_target=args.p_target, p_achieved=res.p_achieved,
                            omega=params.omega, sigma=params.sigma,
                            schedule=params.schedule)
    lines = [SWEEP_HEADER] if args.format == "csv" else []
    lines.append(_sweep_line(row, args.format))
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _report_line(report: bounds.BoundReport) -> str:
    return json.dumps({"name": report.name.value, "value": report.value,
                       "observed": report.observed, "holds": report.holds,
                       "margin": report.margin})


def cmd_bounds(args) -> int:
    params = _params_from(args)
    wide = params.wide_open
    family = args.only or ("wide-open" if wide else "semi-open")
    if family not in ("wide-open", "semi-open"):
        raise DomainError("--only must be 'wide-open' or 'semi-open' for bounds")
    if family == "semi-open" and wide:
        raise DomainError("semi-open bounds need coeff_a > 0 (omega < 1)")
    if family == "wide-open" and not wide:
        raise DomainError("wide-open bounds need coeff_a = 0 (omega = 1)")
    if (args.T is None) == (args.p_target is None):
        raise DomainError("give exactly one of --T (deviation mode) or "
                          "--p-target (run-time sandwich mode)")

    reports: list[bounds.BoundReport] = []
    if args.T is not None:
        traj = dynamics.evolve(params, args.T, opts=_opts_from(args))
        name, value = bounds.deviation_bound(params, args.T, rho10_abs=0.0)
        reports.append(bounds.BoundReport.make(name, value,
                                               dynamics.max_deviation(traj)))
    else:
        regime = params.schedule
        openness = bounds.Openness.WIDE_OPEN if wide else bounds.Openness.SEMI_OPEN
        k = bounds.condition_integral(params.n_items, params.sigma)
        t_low, t_high = bounds.runtime_bounds_for_p(
            params.n_items, args.p_target, params.sigma, regime, openness,
            a=params.coeff_a, b=params.coeff_b, k=k)
        observed = analysis.find_runtime(params, args.p_target,
                                         p_tol=args.p_tol,
                                         opts=_opts_from(args, sample_count=2))
        reports.append(bounds.BoundReport.make(bounds.BoundName.RUNTIME_UPPER,
                                               t_high, observed.run_time))
        if t_low is not None:
            reports.append(bounds.BoundReport.make(bounds.BoundName.RUNTIME_LOWER,
                                                   t_low, observed.run_time))
    _write(args.out, "\n".join(_report_line(r) for r in reports) + "\n")
    return 0


def cmd_validate(args) -> int:
    try:
        results = validate.run_suites(only=args.only)
    except KeyError as exc:
        raise DomainError(str(exc)) from exc
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        sys.stdout.write(f"{r.name:<{width}}  {status}  {r.detail}\n")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adiasearch",
        description="Adiabatic search with eigenbasis dephasing: simulate, "
                    "sweep run times, and check analytical bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="integrate one trajectory and write samples")
    _add_model_args(p)
    p.add_argument("--T", type=float, required=True, help="run time")
    _add_sim_args(p)
    _add_out_args(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="run time vs list length at fixed target p")
    _add_model_args(p, with_n=False)
    p.add_argument("--n-min", type=int, required=True, help="smallest N (power of two)")
    p.add_argument("--n-max", type=int, required=True, help="largest N (power of two)")
    p.add_argument("--p-target", type=float, required=True)
    p.add_argument("--p-tol", type=float, default=analysis.DEFAULT_P_TOL)
    p.add_argument("--jobs", type=int, default=1, help="parallel rows (order-stable)")
    _add_sim_args(p)
    _add_out_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("find-runtime", help="first run time reaching the target p")
    _add_model_args(p)
    p.add_argument("--p-target", type=float, required=True)
    p.add_argument("--p-tol", type=float, default=analysis.DEFAULT_P_TOL)
    _add_sim_args(p)
    _add_out_args(p)
    p.set_defaults(func=cmd_find_runtime)

    p = sub.add_parser("bounds", help="evaluate analytical bounds as JSON lines")
    _add_model_args(p)
    p.add_argument("--T", type=float, default=None,
                   help="deviation mode: simulate at T and check the deviation bound")
    p.add_argument("--p-target", type=float, default=None,
                   help="sandwich mode: check found run time against T_low/T_high")
    p.add_argument("--p-tol", type=float, default=analysis.DEFAULT_P_TOL)
    p.add_argument("--only", choices=["wide-open", "semi-open"], default=None,
                   help="bound family (default: inferred from the openness)")
    _add_sim_args(p)
    p.add_argument("--out", default="-", help="output path ('-' = stdout)")
    p.set_defaults(func=cmd_bounds, format="json")

    p = sub.add_parser("validate", help="run the invariant suites")
    p.add_argument("--only", default=None,
                   help=f"single suite: one of {', '.join(sorted(validate.SUITES))}")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        sys.stderr.write(f"adiasearch: argument error: {exc}\n")
        return 2
    except (IntegrationError, BracketError) as exc:
        sys.stderr.write(f"adiasearch: integration failure: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
