"""Run-time finder, (N, T) sweeps, and log-log slope estimation.

find_runtime locates the first run time at which the final ground-state
population reaches a target: exponential bracketing (doubling from T = 1)
followed by bisection that keeps p(lo) < target <= p(hi). The population is a
continuous function of T, so the bisection converges onto a crossing; when
p(T) oscillates (closed case) the result is the deterministic
first-crossing-of-the-bracket. Sweeps repeat the finder over an N grid and
slope fits regress log2(T) on log2(N) over the largest-N fraction of rows,
which is how the asymptotic exponents are read off.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import dynamics
from .dynamics import SimOptions
from .errors import BracketError, DomainError, InsufficientDataError
from .model import ModelParams, Schedule  # noqa: F401  (Schedule re-exported for rows)

DEFAULT_P_TOL = 1e-3
DEFAULT_T_CEILING = float(2 ** 30)
MAX_BISECTIONS = 200


@dataclass(frozen=True)
class RuntimeResult:
    """First run time achieving the target population, with its bracket."""

    n_items: int
    run_time: float
    p_achieved: float
    bracket: tuple[float, float]
    evaluations: int


@dataclass(frozen=True)
class SweepRow:
    """One (N, T) point of a sweep; run_time is None when the finder failed."""

    n_items: int
    run_time: float | None
    p_target: float
    p_achieved: float | None
    omega: float
    sigma: float
    schedule: Schedule
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.run_time is None


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]

    def ok_rows(self) -> list[SweepRow]:
        return [r for r in self.rows if not r.failed]

    @property
    def any_failed(self) -> bool:
        return any(r.failed for r in self.rows)


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares slope of log2(T) against log2(N) over an N window."""

    slope: float
    intercept: float
    window: tuple[int, int]
    residual: float
    points: int


def _probe_opts(opts: SimOptions | None) -> SimOptions:
    """Final-population probes only need the endpoint sample."""
    base = opts or SimOptions()
    return replace(base, sample_count=2)


def final_p(params: ModelParams, run_time: float,
            opts: SimOptions | None = None) -> float:
    """Ground-state population at s = 1 for the given run time."""
    return dynamics.evolve(params, run_time, opts=_probe_opts(opts)).final_p


def find_runtime(params: ModelParams, p_target: float,
                 p_tol: float = DEFAULT_P_TOL,
                 opts: SimOptions | None = None,
                 t_ceiling: float = DEFAULT_T_CEILING) -> RuntimeResult:
    """First run time T with |p(T) - p_target| <= p_tol, by doubling + bisection."""
    if not 0.0 < p_target < 1.0:
        raise DomainError("p_target must lie in (0, 1)")
    if p_tol <= 0:
        raise DomainError("p_tol must be positive")
    probe = _probe_opts(opts)
    evaluations = 0

    def p_of(t: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return final_p(params, t, probe)

    hi = 1.0
    p_hi = p_of(hi)
    lo = 0.0
    while p_hi < p_target:
        lo, hi = hi, 2.0 * hi
        if hi > t_ceiling:
            raise BracketError(
                f"p stayed below {p_target} up to T = {t_ceiling:g} "
                f"(last p = {p_hi:.6g})")
        p_hi = p_of(hi)
    if abs(p_hi - p_target) <= p_tol:
        return RuntimeResult(params.n_items, hi, p_hi, (lo, hi), evaluations)

    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        p_mid = p_of(mid)
        if abs(p_mid - p_target) <= p_tol:
            return RuntimeResult(params.n_items, mid, p_mid, (lo, hi),
                                 evaluations)
        if p_mid >= p_target:
            hi = mid
        else:
            lo = mid
    raise BracketError(
        f"bisection did not reach |p - {p_target}| <= {p_tol} in "
        f"{MAX_BISECTIONS} steps (bracket [{lo:.9g}, {hi:.9g}])")


def _sweep_one(args) -> SweepRow:
    params, n, p_target, p_tol, opts, t_ceiling = args
    row_params = replace(params, n_items=n)
    base = SweepRow(n_items=n, run_time=None, p_target=p_target,
                    p_achieved=None, omega=row_params.omega,
                    sigma=row_params.sigma, schedule=row_params.schedule)
    try:
        res = find_runtime(row_params, p_target, p_tol, opts, t_ceiling)
    except (BracketError, DomainError) as exc:
        return replace(base, error=str(exc))
    return replace(base, run_time=res.run_time, p_achieved=res.p_achieved)


def sweep(n_list: list[int], p_target: float, base: ModelParams,
          p_tol: float = DEFAULT_P_TOL, opts: SimOptions | None = None,
          t_ceiling: float = DEFAULT_T_CEILING, jobs: int = 1) -> SweepTable:
    """One find_runtime per N, in n_list order; failures mark rows, not the sweep.

    Rows are pure per-N computations, so jobs > 1 distributes them over
    processes with output order (and values) identical to serial execution.
    """
    if any(n < 2 for n in n_list):
        raise DomainError("all list lengths must be >= 2")
    if any(b >= c for b, c in zip(n_list, n_list[1:])):
        raise DomainError("n_list must be strictly increasing")
    work = [(base, n, p_target, p_tol, opts, t_ceiling) for n in n_list]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = tuple(pool.map(_sweep_one, work))
    else:
        rows = tuple(_sweep_one(w) for w in work)
    return SweepTable(rows=rows)


def fit_slope(table: SweepTable, window_fraction: float = 0.5) -> SlopeFit:
    """OLS slope of log2(T) on log2(N) over the largest-N fraction of rows."""
    if not 0.0 < window_fraction <= 1.0:
        raise DomainError("window_fraction must lie in (0, 1]")
    rows = sorted(table.ok_rows(), key=lambda r: r.n_items)
    count = max(3, math.ceil(window_fraction * len(rows)))
    window = rows[-count:]
    if len(window) < 3:
        raise InsufficientDataError(
            f"slope window needs >= 3 rows, got {len(window)}")
    x = np.log2([r.n_items for r in window])
    y = np.log2([r.run_time for r in window])
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return SlopeFit(slope=float(slope), intercept=float(intercept),
                    window=(window[0].n_items, window[-1].n_items),
                    residual=residual, points=len(window))
