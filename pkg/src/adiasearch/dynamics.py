"""Time evolution of the reduced state.

The 2x2 density matrix is carried as a Bloch 3-vector v in the fixed basis
(uniform superposition, orthogonal partner), which avoids any bookkeeping of
the moving eigenbasis: instantaneous-basis quantities are recovered through
the ground Bloch vector q. The equation of motion over s in [0, 1] is

    dv/ds = T*A*gap(u) * (v x q(u)) - T*B*Gamma(u)**2 * [v - q(u)(q(u).v)],

with u = s for the global protocol and u = local_schedule(s) for the local
one. The Hamiltonian term precesses v around q and preserves |v|; the
dephasing term contracts the components orthogonal to q, so |v| never grows.

Integration uses LSODA (adaptive multistep with automatic stiff/non-stiff
switching and an analytic Jacobian): the wide-open regime is stiff with decay
rate T*B*Gamma**2, far beyond what a fixed-ceiling explicit stepper can cover
at the run times the scaling studies need. A Cauchy-Euler polygon integrator
is kept alongside as an independent convergence oracle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import ODEintWarning, odeint

from . import model
from .errors import DomainError, IntegrationError
from .model import ModelParams, Schedule

NORM_SLACK = 1e-9  # tolerated Bloch-norm overshoot from finite integrator accuracy


@dataclass(frozen=True)
class SimOptions:
    """Integrator knobs.

    sample_count is the number of equally spaced s values recorded in the
    trajectory (dense interpolation; internal steps are not exposed).
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    max_steps: int = 10_000_000
    sample_count: int = 1001

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("rel_tol and abs_tol must be positive")
        if self.sample_count < 2:
            raise DomainError("sample_count must be >= 2")
        if self.max_steps < 1:
            raise DomainError("max_steps must be >= 1")


@dataclass(frozen=True)
class Trajectory:
    """Sampled evolution at run time T (in units of the inverse initial gap).

    Arrays are indexed by sample: s in [0, 1] ascending, Bloch vectors v of
    shape (k, 3), ground-state population p, and population difference
    y = 2p - 1. For the local protocol p is taken against the instantaneous
    ground state of the reparametrized Hamiltonian.
    """

    params: ModelParams
    run_time: float
    s: np.ndarray
    v: np.ndarray
    p: np.ndarray
    y: np.ndarray

    @property
    def final_p(self) -> float:
        return float(self.p[-1])

    def __iter__(self):
        """Iterate over (s, v, p, y) samples."""
        return iter(zip(self.s, self.v, self.p, self.y))


def success_probability(v: np.ndarray, s: float, n: int) -> float:
    """Ground-state population (1 + v.q(s))/2, clamped to [0, 1]."""
    q = model.ground_bloch(s, n)
    p = 0.5 * (1.0 + float(np.dot(v, q)))
    return min(1.0, max(0.0, p))


def _default_v0(n: int) -> np.ndarray:
    return model.ground_bloch(0.0, n)


def as_bloch_vector(v) -> np.ndarray:
    """Validate a Bloch 3-vector: shape (3,) and norm at most 1 (tiny slack)."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise DomainError(f"Bloch vector must have shape (3,), got {v.shape}")
    if np.linalg.norm(v) > 1.0 + NORM_SLACK:
        raise DomainError("Bloch vector must have norm <= 1")
    return v


def _make_rhs(n: int, sigma: float, ta: float, tb: float, local: bool):
    """Closures for the Bloch equation right-hand side and its Jacobian.

    Plain-float arithmetic: these run millions of times inside LSODA.
    """
    sq = math.sqrt(n - 1.0)
    inv_n = 1.0 / n
    a0 = math.atan(sq)
    two_sq = 2.0 * sq

    def coeffs(s: float):
        if local:
            u = 0.5 + math.tan((2.0 * s - 1.0) * a0) / two_sq
        else:
            u = s
        x = 2.0 * u - 1.0
        d2 = (1.0 + (n - 1.0) * x * x) * inv_n
        delta = math.sqrt(d2)
        qx = 2.0 * u * sq * inv_n / delta
        qz = (1.0 - 2.0 * u * (n - 1.0) * inv_n) / delta
        if sigma == 1.0:
            g2 = d2
        elif sigma == 0.0:
            g2 = 1.0
        else:
            g2 = d2 ** sigma
        return ta * delta, tb * g2, qx, qz

    def rhs(v, s):
        ca, cb, qx, qz = coeffs(s)
        vx = v[0]
        vy = v[1]
        vz = v[2]
        dot = qx * vx + qz * vz
        return (ca * vy * qz - cb * (vx - dot * qx),
                ca * (vz * qx - vx * qz) - cb * vy,
                -ca * vy * qx - cb * (vz - dot * qz))

    def jac(v, s):
        ca, cb, qx, qz = coeffs(s)
        return ((cb * (qx * qx - 1.0), ca * qz, cb * qx * qz),
                (-ca * qz, -cb, ca * qx),
                (cb * qx * qz, -ca * qx, cb * (qz * qz - 1.0)))

    return rhs, jac


def _integrate(n: int, sigma: float, a: float, b: float, schedule: Schedule,
               run_time: float, v0: np.ndarray, opts: SimOptions) -> np.ndarray:
    """Integrate the Bloch equation; returns v at sample_count equispaced s."""
    s_grid = np.linspace(0.0, 1.0, opts.sample_count)
    if run_time == 0.0:
        return np.tile(v0, (opts.sample_count, 1))
    rhs, jac = _make_rhs(n, sigma, run_time * a, run_time * b,
                         schedule is Schedule.LOCAL)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ODEintWarning)  # surfaced as IntegrationError
        sol, info = odeint(rhs, v0, s_grid, Dfun=jac,
                           rtol=opts.rel_tol, atol=opts.abs_tol,
                           mxstep=opts.max_steps, full_output=True,
                           printmessg=False)
    if info["message"] != "Integration successful.":
        reached = float(info["tcur"][-1]) if len(info["tcur"]) else 0.0
        raise IntegrationError(
            f"Bloch integration failed at s={reached:.6g}: {info['message']}",
            s_reached=reached)
    return sol


def _assemble(params: ModelParams, run_time: float, s_grid: np.ndarray,
              v: np.ndarray) -> Trajectory:
    n = params.n_items
    local = params.schedule is Schedule.LOCAL
    p = np.empty(len(s_grid))
    for i, s in enumerate(s_grid):
        u = model.local_schedule(float(s), n) if local else float(s)
        p[i] = success_probability(v[i], u, n)
    return Trajectory(params=params, run_time=run_time, s=s_grid, v=v,
                      p=p, y=2.0 * p - 1.0)


def evolve(params: ModelParams, run_time: float, v0=None,
           opts: SimOptions | None = None) -> Trajectory:
    """Evolve the reduced state from s=0 to s=1 at run time T = run_time.

    v0 defaults to the initial ground state (0, 0, 1). With run_time = 0 the
    state is constant; with coeff_a = 0 and a start in the x-z plane the motion
    stays in that plane.
    """
    if run_time < 0:
        raise DomainError("run_time must be >= 0")
    opts = opts or SimOptions()
    v0 = _default_v0(params.n_items) if v0 is None else as_bloch_vector(v0)
    s_grid = np.linspace(0.0, 1.0, opts.sample_count)
    v = _integrate(params.n_items, params.sigma, params.coeff_a, params.coeff_b,
                   params.schedule, run_time, v0, opts)
    return _assemble(params, run_time, s_grid, v)


def evolve_local_in_r(params: ModelParams, run_time: float, v0=None,
                      opts: SimOptions | None = None) -> Trajectory:
    """Local protocol integrated in the reparametrized coordinate r.

    Cross-check twin of evolve(): the same evolution written in r = f(s)
    carries the Jacobian factor d f^-1 / dr = 1 / (L * gap(r)**2) in front of
    both generators. Samples are equispaced in r (the endpoints coincide with
    evolve's, so final populations must agree).
    """
    if params.schedule is not Schedule.LOCAL:
        raise DomainError("evolve_local_in_r requires the local schedule")
    if run_time < 0:
        raise DomainError("run_time must be >= 0")
    opts = opts or SimOptions()
    n = params.n_items
    v0 = _default_v0(n) if v0 is None else as_bloch_vector(v0)
    r_grid = np.linspace(0.0, 1.0, opts.sample_count)
    if run_time == 0.0:
        v = np.tile(v0, (opts.sample_count, 1))
    else:
        rhs0, jac0 = _make_rhs(n, params.sigma, run_time * params.coeff_a,
                               run_time * params.coeff_b, False)
        norm = model.schedule_norm(n)

        def weight(r: float) -> float:
            u = 2.0 * r - 1.0
            return n / ((1.0 + (n - 1.0) * u * u) * norm)

        def rhs(v, r):
            w = weight(r)
            dx, dy, dz = rhs0(v, r)
            return (w * dx, w * dy, w * dz)

        def jac(v, r):
            w = weight(r)
            rows = jac0(v, r)
            return tuple(tuple(w * x for x in row) for row in rows)

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ODEintWarning)
            v, info = odeint(rhs, v0, r_grid, Dfun=jac,
                             rtol=opts.rel_tol, atol=opts.abs_tol,
                             mxstep=opts.max_steps, full_output=True,
                             printmessg=False)
        if info["message"] != "Integration successful.":
            reached = float(info["tcur"][-1]) if len(info["tcur"]) else 0.0
            raise IntegrationError(
                f"Bloch integration (r form) failed at r={reached:.6g}",
                s_reached=reached)
    p = np.array([success_probability(v[i], float(r), n)
                  for i, r in enumerate(r_grid)])
    return Trajectory(params=params, run_time=run_time, s=r_grid, v=v,
                      p=p, y=2.0 * p - 1.0)


def euler_polygon(params: ModelParams, run_time: float, v0=None,
                  step: float = 1e-3, sample_count: int = 1001) -> Trajectory:
    """First-order polygon integrator (independent convergence oracle).

    Update rule per step of size Ds on the uniform partition of [0, 1]:

        v_{k+1} = v_k + Ds*T*A*gap(u_k) (v_k x q_k)
                      - Ds*T*B*Gamma(u_k)**2 [v_k - q_k (q_k . v_k)]

    In the wide-open case (A = 0, B > 0) the step must satisfy Ds <= 1/T,
    which keeps every |v_k| <= 1. Returns the linear interpolation of the
    polygon vertices on the requested sample grid.
    """
    if run_time < 0:
        raise DomainError("run_time must be >= 0")
    if step <= 0:
        raise DomainError("step must be positive")
    if (params.coeff_a == 0.0 and params.coeff_b > 0.0 and run_time > 0.0
            and step > 1.0 / run_time):
        raise DomainError(
            f"wide-open stability requires step <= 1/run_time = {1.0 / run_time:.3g}")
    n = params.n_items
    v0 = _default_v0(n) if v0 is None else as_bloch_vector(v0)
    m = max(1, round(1.0 / step))
    ds = 1.0 / m
    local = params.schedule is Schedule.LOCAL

    # Vectorized precomputation of the per-step coefficients.
    s_nodes = np.linspace(0.0, 1.0, m + 1)
    if local:
        a0 = math.atan(math.sqrt(n - 1.0))
        u_nodes = np.clip(0.5 + np.tan((2.0 * s_nodes - 1.0) * a0)
                          / (2.0 * math.sqrt(n - 1.0)), 0.0, 1.0)
    else:
        u_nodes = s_nodes
    x = 2.0 * u_nodes - 1.0
    d2 = (1.0 + (n - 1.0) * x * x) / n
    delta = np.sqrt(d2)
    qx = 2.0 * u_nodes * math.sqrt(n - 1.0) / n / delta
    qz = (1.0 - 2.0 * u_nodes * (n - 1.0) / n) / delta
    if params.sigma == 1.0:
        g2 = d2
    elif params.sigma == 0.0:
        g2 = np.ones_like(d2)
    else:
        g2 = d2 ** params.sigma
    ca = ds * run_time * params.coeff_a * delta
    cb = ds * run_time * params.coeff_b * g2

    verts = np.empty((m + 1, 3))
    vx, vy, vz = float(v0[0]), float(v0[1]), float(v0[2])
    verts[0] = (vx, vy, vz)
    for k in range(m):
        cak = ca[k]
        cbk = cb[k]
        qxk = qx[k]
        qzk = qz[k]
        dot = qxk * vx + qzk * vz
        vx, vy, vz = (vx + cak * vy * qzk - cbk * (vx - dot * qxk),
                      vy + cak * (vz * qxk - vx * qzk) - cbk * vy,
                      vz - cak * vy * qxk - cbk * (vz - dot * qzk))
        verts[k + 1] = (vx, vy, vz)

    s_grid = np.linspace(0.0, 1.0, sample_count)
    v = np.empty((sample_count, 3))
    for j in range(3):
        v[:, j] = np.interp(s_grid, s_nodes, verts[:, j])
    return _assemble(params, run_time, s_grid, v)


def max_deviation(traj: Trajectory) -> float:
    """Largest |p(0) - p(s)| along the trajectory (the bound-checked quantity)."""
    return float(np.max(np.abs(traj.p - traj.p[0])))
