"""Brute-force full-Hilbert-space evolution for small list lengths.

Validates the two-dimensional reduction: the N x N density operator is
integrated in the computational basis under

    d rho / ds = -i T A [H(u), rho] - T B [W(u), [W(u), rho]],

where H(u) interpolates between (minus) the projector on the uniform
superposition and the projector on the marked state, and W(u) is block
constant on the spectral projectors of H(u) restricted to the relevant plane
(eigenvalues -Gamma/2 and +Gamma/2 on ground/excited, 0 on the orthogonal
complement). Both operators are built from the analytic two-level solution,
not numerical diagonalization: H is degenerate on the complement, so generic
eigensolvers are ill-conditioned there while the closed form is exact.

Populations must match the reduced simulation and the complement must stay
empty; the cost guard n <= 32 keeps the dense O(n^3)-per-step arithmetic
trivial.
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
from .dynamics import SimOptions

MAX_FULL_DIM = 32


@dataclass(frozen=True)
class FullState:
    """Density operator in the computational basis plus the marked index."""

    rho: np.ndarray
    marked_index: int

    def trace(self) -> float:
        return float(np.trace(self.rho).real)

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T))[0])


@dataclass(frozen=True)
class FullEvolution:
    """Sampled full-space evolution: density matrices and ground populations."""

    params: ModelParams
    run_time: float
    marked_index: int
    s: np.ndarray        # (k,)
    rho: np.ndarray      # (k, n, n) complex
    p: np.ndarray        # (k,) ground-state population at the instantaneous point

    @property
    def final_state(self) -> FullState:
        return FullState(rho=self.rho[-1], marked_index=self.marked_index)

    @property
    def final_p(self) -> float:
        return float(self.p[-1])


def _basis_vectors(n: int, marked_index: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(psi, psi_bar, mu): uniform superposition, its orthogonal partner, marked state."""
    psi = np.full(n, 1.0 / math.sqrt(n))
    mu = np.zeros(n)
    mu[marked_index] = 1.0
    psi_bar = (math.sqrt(n) * mu - psi) / math.sqrt(n - 1.0)
    return psi, psi_bar, mu


def evolve_full(n: int, params: ModelParams, run_time: float,
                opts: SimOptions | None = None,
                marked_index: int = 0) -> FullEvolution:
    """Integrate the full master equation from the uniform superposition.

    n must match params.n_items and stay within the cost guard (n <= 32).
    """
    if n != params.n_items:
        raise DomainError("n must equal params.n_items")
    if n > MAX_FULL_DIM:
        raise DomainError(f"full-space oracle limited to n <= {MAX_FULL_DIM}")
    if not 0 <= marked_index < n:
        raise DomainError("marked_index out of range")
    if run_time < 0:
        raise DomainError("run_time must be >= 0")
    opts = opts or SimOptions(sample_count=65)

    psi, psi_bar, mu = _basis_vectors(n, marked_index)
    p_psi = np.outer(psi, psi)
    p_mu = np.outer(mu, mu)
    local = params.schedule is Schedule.LOCAL
    ta = run_time * params.coeff_a
    tb = run_time * params.coeff_b
    sigma = params.sigma
    n2 = n * n

    def operators(s: float):
        s = min(1.0, max(0.0, s))  # LSODA may probe a hair past the endpoints
        u = model.local_schedule(s, n) if local else s
        h = -(1.0 - u) * p_psi - u * p_mu
        e0, e1 = model.eigenvectors(u, n)
        vec0 = e0[0] * psi + e0[1] * psi_bar
        vec1 = e1[0] * psi + e1[1] * psi_bar
        g = model.gamma(u, n, sigma)
        w = 0.5 * g * (np.outer(vec1, vec1) - np.outer(vec0, vec0))
        return h, w, vec0

    def rhs(y, s):
        rho = (y[:n2] + 1j * y[n2:]).reshape(n, n)
        h, w, _ = operators(s)
        drho = np.zeros_like(rho)
        if ta != 0.0:
            drho -= 1j * ta * (h @ rho - rho @ h)
        if tb != 0.0:
            ww = w @ w
            drho -= tb * (ww @ rho - 2.0 * (w @ rho @ w) + rho @ ww)
        flat = drho.ravel()
        return np.concatenate([flat.real, flat.imag])

    rho0 = np.outer(psi, psi).astype(complex)
    y0 = np.concatenate([rho0.ravel().real, rho0.ravel().imag])
    s_grid = np.linspace(0.0, 1.0, opts.sample_count)
    if run_time == 0.0:
        sol = np.tile(y0, (opts.sample_count, 1))
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ODEintWarning)
            sol, info = odeint(rhs, y0, s_grid, rtol=opts.rel_tol,
                               atol=opts.abs_tol, mxstep=opts.max_steps,
                               full_output=True, printmessg=False)
        if info["message"] != "Integration successful.":
            reached = float(info["tcur"][-1]) if len(info["tcur"]) else 0.0
            raise IntegrationError(
                f"full-space integration failed at s={reached:.6g}",
                s_reached=reached)

    rhos = (sol[:, :n2] + 1j * sol[:, n2:]).reshape(-1, n, n)
    p = np.empty(opts.sample_count)
    for i, s in enumerate(s_grid):
        _, _, vec0 = operators(float(s))
        p[i] = float((vec0 @ rhos[i] @ vec0).real)
    return FullEvolution(params=params, run_time=run_time,
                         marked_index=marked_index, s=s_grid, rho=rhos, p=p)


def reduction_residual(state: FullState, s: float) -> float:
    """Population outside the plane spanned by the uniform and marked states.

    The projector on that plane does not depend on s; the argument is kept for
    signature symmetry with the sampled quantities.
    """
    del s
    n = state.rho.shape[0]
    psi, psi_bar, _ = _basis_vectors(n, state.marked_index)
    in_plane = (psi @ state.rho @ psi).real + (psi_bar @ state.rho @ psi_bar).real
    return float(np.trace(state.rho).real - in_plane)
