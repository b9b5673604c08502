"""Closed-form quantities of the two-level search model.

The search of one marked item in a list of N is effectively two-dimensional:
everything happens in the span of the uniform superposition and the marked
state. This module holds the interpolating Hamiltonian restricted to that
plane, its spectrum and eigenvectors, the nonadiabatic coupling, the
dephasing-strength family Gamma(s) = gap(s)**sigma, the time reparametrization
used by the "local" protocol, and the cumulative quadratures Q and R that the
analytical bounds are written in.

Energies are measured in units of the initial gap, so run times are
dimensionless multiples of the inverse initial gap. All functions are pure;
list lengths up to 2**24 are evaluated in floating point without forming
expanded polynomials in N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, QuadratureError

QUAD_REL_TOL = 1e-10


class Schedule(Enum):
    """Time profile of the interpolation parameter."""

    GLOBAL = "global"  # linear: the Hamiltonian sees u = s
    LOCAL = "local"    # reparametrized: the Hamiltonian sees u = local_schedule(s)


@dataclass(frozen=True)
class ModelParams:
    """Full problem instance.

    Attributes:
        n_items: list length N (>= 2).
        sigma: exponent in Gamma(s) = gap(s)**sigma (>= 0).
        coeff_a: weight of the Hamiltonian term (A >= 0, dimensionless).
        coeff_b: weight of the dephasing term (B >= 0, dimensionless).
        schedule: global (linear) or local (reparametrized) protocol.
    """

    n_items: int
    sigma: float = 1.0
    coeff_a: float = 1.0
    coeff_b: float = 0.0
    schedule: Schedule = Schedule.GLOBAL

    def __post_init__(self):
        if self.n_items < 2:
            raise DomainError(f"n_items must be >= 2, got {self.n_items}")
        if not self.sigma >= 0:
            raise DomainError(f"sigma must be >= 0, got {self.sigma}")
        if self.coeff_a < 0 or self.coeff_b < 0:
            raise DomainError("coeff_a and coeff_b must be nonnegative")
        if self.coeff_a == 0 and self.coeff_b == 0:
            raise DomainError("coeff_a and coeff_b must not both be zero")
        if not isinstance(self.schedule, Schedule):
            raise DomainError(f"schedule must be a Schedule, got {self.schedule!r}")

    @classmethod
    def from_omega(cls, n_items: int, omega: float, sigma: float = 1.0,
                   schedule: Schedule = Schedule.GLOBAL) -> "ModelParams":
        """Build an instance on the openness interpolation A=cos(w*pi/2), B=sin(w*pi/2)."""
        a, b = coefficients(omega)
        return cls(n_items=n_items, sigma=sigma, coeff_a=a, coeff_b=b,
                   schedule=schedule)

    @property
    def omega(self) -> float:
        """Effective degree of openness, (2/pi)*atan2(B, A); inverts from_omega."""
        return 2.0 / math.pi * math.atan2(self.coeff_b, self.coeff_a)

    @property
    def wide_open(self) -> bool:
        return self.coeff_a == 0.0

    @property
    def closed(self) -> bool:
        return self.coeff_b == 0.0


@dataclass(frozen=True)
class Spectrum:
    """Instantaneous two-level spectrum (energies in units of the initial gap)."""

    e0: float
    e1: float
    gap: float
    d_helper: float


def _check_n(n: int) -> None:
    if n < 2:
        raise DomainError(f"list length must be >= 2, got {n}")


def _check_s(s: float) -> None:
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"interpolation parameter must lie in [0, 1], got {s}")


def gap(s: float, n: int) -> float:
    """Energy gap between the two relevant levels at interpolation point s.

    Equals sqrt((1 + (n-1)*(2s-1)**2) / n); symmetric about s = 1/2, where it
    attains its minimum 1/sqrt(n).
    """
    _check_s(s)
    _check_n(n)
    u = 2.0 * s - 1.0
    return math.sqrt((1.0 + (n - 1.0) * u * u) / n)


def d_helper(s: float, n: int) -> float:
    """Diagonal asymmetry -1 + 2s(n-1)/n of the reduced Hamiltonian matrix."""
    _check_s(s)
    _check_n(n)
    return -1.0 + 2.0 * s * (n - 1.0) / n


def spectrum(s: float, n: int) -> Spectrum:
    """Both energy levels -1/2 -+ gap/2 together with the gap and d_helper."""
    g = gap(s, n)
    return Spectrum(e0=-0.5 - 0.5 * g, e1=-0.5 + 0.5 * g, gap=g,
                    d_helper=d_helper(s, n))


def ground_bloch(s: float, n: int) -> np.ndarray:
    """Bloch vector of the instantaneous ground state (unit norm, x-z plane).

    The basis pair (uniform superposition, its orthogonal partner toward the
    marked state) maps to the north/south poles, so the returned vector is
    (2s*sqrt(n-1)/n, 0, 1 - 2s(n-1)/n) / gap(s, n), starting at (0, 0, 1).
    """
    _check_s(s)
    _check_n(n)
    delta = gap(s, n)
    qx = 2.0 * s * math.sqrt(n - 1.0) / n / delta
    qz = (1.0 - 2.0 * s * (n - 1.0) / n) / delta
    return np.array([qx, 0.0, qz])


def ground_overlap(s: float, n: int) -> float:
    """Cosine of the angle between the ground Bloch vectors at s and at 0.

    Closed form (1 - (n-1)(2s-1)) / (sqrt(n) * sqrt(1 + (n-1)(2s-1)**2));
    strictly decreasing from 1 at s=0 to 2/n - 1 at s=1.
    """
    _check_s(s)
    _check_n(n)
    u = 2.0 * s - 1.0
    return (1.0 - (n - 1.0) * u) / (math.sqrt(n) * math.sqrt(1.0 + (n - 1.0) * u * u))


def z_coupling(s: float, n: int) -> float:
    """Magnitude of the nonadiabatic coupling between the two levels.

    sqrt(n-1) / (1 + (n-1)(2s-1)**2); peaks at s = 1/2 with value sqrt(n-1),
    and integrates over [0, 1] to arctan(sqrt(n-1)) <= pi/2.
    """
    _check_s(s)
    _check_n(n)
    u = 2.0 * s - 1.0
    return math.sqrt(n - 1.0) / (1.0 + (n - 1.0) * u * u)


def gamma(s: float, n: int, sigma: float) -> float:
    """Dephasing eigenvalue splitting Gamma(s) = gap(s)**sigma."""
    if not sigma >= 0:
        raise DomainError(f"sigma must be >= 0, got {sigma}")
    g = gap(s, n)
    if sigma == 0.0:
        return 1.0
    if sigma == 1.0:
        return g
    return g ** sigma


def gamma_squared(s: float, n: int, sigma: float) -> float:
    """Gamma(s)**2, evaluated without an intermediate square root when possible."""
    if not sigma >= 0:
        raise DomainError(f"sigma must be >= 0, got {sigma}")
    _check_s(s)
    _check_n(n)
    u = 2.0 * s - 1.0
    d2 = (1.0 + (n - 1.0) * u * u) / n
    if sigma == 0.0:
        return 1.0
    if sigma == 1.0:
        return d2
    return d2 ** sigma


def hamiltonian_matrix(s: float, n: int) -> np.ndarray:
    """2x2 interpolating Hamiltonian in the fixed orthonormal basis.

    Entries: M11 = s(n-1)/n - 1, M12 = M21 = -s*sqrt(n-1)/n, M22 = -s(n-1)/n.
    Eigenvalues are -1/2 -+ gap(s, n)/2.
    """
    _check_s(s)
    _check_n(n)
    off = -s * math.sqrt(n - 1.0) / n
    return np.array([[s * (n - 1.0) / n - 1.0, off],
                     [off, -s * (n - 1.0) / n]])


def eigenvectors(s: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Real orthonormal eigenvectors (ground, excited) of hamiltonian_matrix.

    The phase freedom is fixed by taking the first ground component positive.
    The sum/difference gap +- d_helper is evaluated through the cancellation-free
    identity gap**2 - d_helper**2 = (n-1)(2s)**2 / n**2.
    """
    _check_s(s)
    _check_n(n)
    delta = gap(s, n)
    d = d_helper(s, n)
    # delta**2 - d**2 == (n-1)*(2s)**2/n**2 >= 0; pick the stable branch.
    diff_sq = (n - 1.0) * (2.0 * s) ** 2 / (n * n)
    if d <= 0.0:
        dmd = delta - d                  # no cancellation
        dpd = diff_sq / dmd if dmd > 0.0 else 0.0
    else:
        dpd = delta + d
        dmd = diff_sq / dpd
    off = s * math.sqrt(n - 1.0) / n
    if s == 0.0:
        # Degenerate limit of the closed forms: ground = (1, 0), excited = (0, -1).
        return np.array([1.0, 0.0]), np.array([0.0, -1.0])
    e0 = np.array([0.5 * dmd, off]) * (math.sqrt(2.0) / math.sqrt(delta * dmd))
    e1 = np.array([0.5 * dpd, -off]) * (math.sqrt(2.0) / math.sqrt(delta * dpd))
    return e0, e1


def coefficients(omega: float) -> tuple[float, float]:
    """Openness interpolation (A, B) = (cos(w*pi/2), sin(w*pi/2)).

    The endpoints are exact: omega=0 gives (1, 0) (closed) and omega=1 gives
    (0, 1) (wide open), so regime detection by A == 0 / B == 0 is reliable.
    """
    if not 0.0 <= omega <= 1.0:
        raise DomainError(f"omega must lie in [0, 1], got {omega}")
    if omega == 0.0:
        return 1.0, 0.0
    if omega == 1.0:
        return 0.0, 1.0
    half = 0.5 * math.pi * omega
    return math.cos(half), math.sin(half)


def local_schedule(s: float, n: int) -> float:
    """Reparametrization f(s) that slows the sweep near the minimum gap.

    f(s) = 1/2 + tan((2s-1)*arctan(sqrt(n-1))) / (2*sqrt(n-1)); the exact
    functional inverse of local_schedule_inverse, with f(0)=0, f(1)=1. The
    result is clamped to [0, 1] to absorb one-ulp tan/arctan round-off at the
    endpoints.
    """
    _check_s(s)
    _check_n(n)
    if s == 0.0 or s == 1.0:
        return s  # tan(atan(x)) is off by an ulp; the endpoints are exact by design
    root = math.sqrt(n - 1.0)
    val = 0.5 + math.tan((2.0 * s - 1.0) * math.atan(root)) / (2.0 * root)
    return min(1.0, max(0.0, val))


def local_schedule_inverse(r: float, n: int) -> float:
    """Inverse reparametrization, the normalized cumulative inverse-gap-squared.

    Closed form [arctan(sqrt(n-1)(2r-1)) + arctan(sqrt(n-1))] /
    (2*arctan(sqrt(n-1))); strictly increasing with endpoints 0 and 1.
    """
    _check_s(r)
    _check_n(n)
    if r == 0.0 or r == 1.0:
        return r
    root = math.sqrt(n - 1.0)
    a0 = math.atan(root)
    val = (math.atan(root * (2.0 * r - 1.0)) + a0) / (2.0 * a0)
    return min(1.0, max(0.0, val))


def schedule_norm(n: int) -> float:
    """Normalization L = n*arctan(sqrt(n-1))/sqrt(n-1) of the local protocol.

    Equals the integral of gap**-2 over [0, 1]; bounded by (pi/2)*n/sqrt(n-1).
    """
    _check_n(n)
    root = math.sqrt(n - 1.0)
    return n * math.atan(root) / root


def kappa(x: float, n: int) -> float:
    """Change of variables 1/2 + x/(2*sqrt(n-1)) mapping [-sqrt(n-1), sqrt(n-1)] to [0, 1]."""
    _check_n(n)
    return 0.5 + x / (2.0 * math.sqrt(n - 1.0))


def _quad(func, lo: float, hi: float) -> float:
    """scipy.quad with the package-wide relative tolerance; raise on non-convergence."""
    out = quad(func, lo, hi, epsabs=0.0, epsrel=QUAD_REL_TOL, limit=200,
               full_output=True)
    if len(out) > 3:
        raise QuadratureError(f"quadrature failed on [{lo}, {hi}]: {out[3]}")
    return out[0]


def quadrature_q(s: float, n: int, sigma: float, schedule: Schedule) -> float:
    """Cumulative dephasing weight Q.

    Global: integral of Gamma**2 from 0 to s. Local: (1/L) * integral of
    Gamma**2 / gap**2 from 0 to s (the argument is then the reparametrized
    coordinate). Adaptive quadrature at relative tolerance 1e-10.
    """
    _check_s(s)
    _check_n(n)
    if not sigma >= 0:
        raise DomainError(f"sigma must be >= 0, got {sigma}")
    if s == 0.0:
        return 0.0
    if schedule is Schedule.GLOBAL:
        return _quad(lambda t: gamma_squared(t, n, sigma), 0.0, s)
    norm = schedule_norm(n)
    return _quad(lambda t: gamma_squared(t, n, sigma)
                 / gamma_squared(t, n, 1.0), 0.0, s) / norm


def quadrature_r(s: float, n: int) -> float:
    """Cumulative gap R(s), the integral of gap from 0 to s (tolerance 1e-10)."""
    _check_s(s)
    _check_n(n)
    if s == 0.0:
        return 0.0
    return _quad(lambda t: gap(t, n), 0.0, s)
