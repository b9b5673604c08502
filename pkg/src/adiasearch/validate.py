"""Cross-cutting invariant suites.

Each check returns a CheckResult and is independent of the others; the CLI
`validate` subcommand runs them all (or a --only selection) and reports a
pass/fail table. The suites are deliberately built on quantities with exact
analytical status — Bloch-norm monotonicity, planarity of the wide-open
motion, the planar ordering lemma, population-difference monotonicity against
the frozen initial state, the full-space reduction, and a handful of closed
identities — so a failure points at a real defect rather than tuning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from . import bounds, dynamics, model, oracle
from .dynamics import SimOptions
from .model import ModelParams, Schedule

TIGHT = SimOptions(rel_tol=1e-11, abs_tol=1e-13, sample_count=1001)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_purity(evolve_fn: Callable = dynamics.evolve) -> CheckResult:
    """|v| never grows along a trajectory (dephasing contracts, precession preserves)."""
    cases = [
        ModelParams.from_omega(16, 0.5, sigma=1.0),
        ModelParams.from_omega(64, 0.8, sigma=0.5, schedule=Schedule.LOCAL),
        ModelParams.from_omega(4, 1.0, sigma=2.0),
        ModelParams.from_omega(256, 0.2, sigma=1.0, schedule=Schedule.LOCAL),
    ]
    v0s = [None, np.array([0.6, 0.3, -0.5])]
    worst = -math.inf
    for params in cases:
        for v0 in v0s:
            tr = evolve_fn(params, 50.0, v0=v0, opts=TIGHT)
            norms = np.linalg.norm(tr.v, axis=1)
            worst = max(worst, float(np.max(np.diff(norms))))
    return CheckResult("purity", worst <= 1e-9,
                       f"max per-sample norm increase {worst:.3e} (tol 1e-9)")


def check_planarity() -> CheckResult:
    """Wide-open motion started in the x-z plane stays there (|v_y| <= 1e-12)."""
    worst = 0.0
    for n in (2, 16, 1024):
        for t in (0.0, 10.0, 1000.0):
            params = ModelParams.from_omega(n, 1.0, sigma=1.0)
            tr = dynamics.evolve(params, t, opts=TIGHT)
            worst = max(worst, float(np.max(np.abs(tr.v[:, 1]))))
    return CheckResult("planarity", worst <= 1e-12,
                       f"max |v_y| {worst:.3e} (tol 1e-12)")


def check_lemma1(draws: int = 10_000, seed: int = 20250809) -> CheckResult:
    """Planar ordering: for unit q0, q1, q2 with angle(q0,q2) >= angle(q0,q1)
    in [0, pi] and |v| <= 1, v.q1 >= q0.q1 implies v.q2 >= q0.q2."""
    rng = np.random.default_rng(seed)
    failures = 0
    tested = 0
    for _ in range(draws):
        base = rng.uniform(0.0, 2.0 * math.pi)
        th1, th2 = np.sort(rng.uniform(0.0, math.pi, size=2))
        q0 = np.array([math.cos(base), math.sin(base)])
        q1 = np.array([math.cos(base + th1), math.sin(base + th1)])
        q2 = np.array([math.cos(base + th2), math.sin(base + th2)])
        ang = rng.uniform(0.0, 2.0 * math.pi)
        v = rng.uniform(0.0, 1.0) * np.array([math.cos(ang), math.sin(ang)])
        if np.dot(v, q1) >= np.dot(q0, q1):
            tested += 1
            if np.dot(v, q2) < np.dot(q0, q2) - 1e-12:
                failures += 1
    return CheckResult("lemma1", failures == 0,
                       f"{failures} failures over {tested} non-vacuous draws of {draws}")


def check_lemma3(sample_count: int = 1001) -> CheckResult:
    """Wide open from the ground state: v_T(s).q(s) >= q(0).q(s) - 1e-9 everywhere."""
    opts = SimOptions(rel_tol=1e-11, abs_tol=1e-13, sample_count=sample_count)
    worst = math.inf
    for sigma in (0.5, 1.0, 2.0):
        for n in (2, 16, 256):
            baseline = np.array([model.ground_overlap(s, n)
                                 for s in np.linspace(0.0, 1.0, sample_count)])
            for t in (0.0, 1.0, 10.0, 100.0, 1000.0):
                params = ModelParams.from_omega(n, 1.0, sigma=sigma)
                tr = dynamics.evolve(params, t, opts=opts)
                worst = min(worst, float(np.min(tr.y - baseline)))
    return CheckResult("lemma3", worst >= -1e-9,
                       f"min margin of v.q(s) - q(0).q(s): {worst:.3e} (tol -1e-9)")


def check_oracle() -> CheckResult:
    """Full-space evolution matches the reduced one and stays in the plane.

    Also enforces trace/hermiticity/positivity of every sampled density
    matrix (1e-10 / 1e-12 / -1e-9).
    """
    opts = SimOptions(rel_tol=1e-10, abs_tol=1e-12, sample_count=33)
    worst_dp = worst_leak = worst_tr = worst_herm = 0.0
    worst_eig = math.inf
    for n in (2, 4, 8):
        for omega in (0.0, 0.5, 1.0):
            for t in (1.0, 10.0, 100.0):
                params = ModelParams.from_omega(n, omega, sigma=1.0)
                full = oracle.evolve_full(n, params, t, opts=opts)
                red = dynamics.evolve(params, t, opts=opts)
                worst_dp = max(worst_dp, abs(full.final_p - red.final_p))
                marked = float(full.rho[-1][full.marked_index,
                                            full.marked_index].real)
                worst_dp = max(worst_dp, abs(marked - red.final_p))
                for i in range(len(full.s)):
                    st = oracle.FullState(rho=full.rho[i],
                                          marked_index=full.marked_index)
                    worst_leak = max(worst_leak,
                                     abs(oracle.reduction_residual(st, float(full.s[i]))))
                    worst_tr = max(worst_tr, abs(st.trace() - 1.0))
                    worst_herm = max(worst_herm, st.hermiticity_defect())
                    worst_eig = min(worst_eig, st.min_eigenvalue())
    passed = (worst_dp <= 1e-6 and worst_leak <= 1e-10 and worst_tr <= 1e-10
              and worst_herm <= 1e-12 and worst_eig >= -1e-9)
    return CheckResult(
        "oracle", passed,
        f"|p_full - p_reduced| {worst_dp:.3e} (1e-6), leakage {worst_leak:.3e} "
        f"(1e-10), trace {worst_tr:.3e} (1e-10), herm {worst_herm:.3e} (1e-12), "
        f"min eig {worst_eig:.3e} (-1e-9)")


def check_z_integral() -> CheckResult:
    """The nonadiabatic coupling integrates to at most pi/2 for every N."""
    worst = 0.0
    for n in (2, 16, 1024):
        val = quad(lambda s: model.z_coupling(s, n), 0.0, 1.0,
                   epsabs=0.0, epsrel=1e-12)[0]
        worst = max(worst, val - math.pi / 2.0)
    return CheckResult("zintegral", worst <= 1e-12,
                       f"max excess over pi/2: {worst:.3e}")


def check_schedule_roundtrip() -> CheckResult:
    """local_schedule and its inverse compose to the identity to 1e-12."""
    worst = 0.0
    for n in (2, 64, 4096):
        for r in np.linspace(0.0, 1.0, 101):
            worst = max(worst, abs(model.local_schedule(
                model.local_schedule_inverse(float(r), n), n) - float(r)))
    return CheckResult("schedule", worst <= 1e-12,
                       f"max |f(f^-1(r)) - r| = {worst:.3e} (tol 1e-12)")


def check_condition() -> CheckResult:
    """With Gamma**2 = gap the fluctuation budget never exceeds 2."""
    worst = 0.0
    for n in (2, 16, 256, 4096, 2 ** 20):
        worst = max(worst, bounds.condition_integral(n, 0.5))
    return CheckResult("condition", worst <= 2.0,
                       f"max condition integral at sigma=1/2: {worst:.6f} (<= 2)")


SUITES: dict[str, Callable[[], CheckResult]] = {
    "purity": check_purity,
    "planarity": check_planarity,
    "lemma1": check_lemma1,
    "lemma3": check_lemma3,
    "oracle": check_oracle,
    "zintegral": check_z_integral,
    "schedule": check_schedule_roundtrip,
    "condition": check_condition,
}


def run_suites(only: str | None = None) -> list[CheckResult]:
    if only is not None:
        if only not in SUITES:
            raise KeyError(f"unknown suite {only!r}; choose from {sorted(SUITES)}")
        return [SUITES[only]()]
    return [fn() for fn in SUITES.values()]
