"""Analytical inequalities on the ground-population deviation and the run time.

Four deviation bounds (semi-open / wide-open x global / local protocol) limit
|rho00(0) - rho00(s)| in terms of N, T, the openness weights A and B, the
fluctuation budget K of the dephasing strength, and the initial coherence
|rho10(0)|. For the wide-open case there is also a necessity side: the
population deficit 1 - p is at least C(alpha), a strictly decreasing
functional of the scaled run time alpha, so achieving a target p forces a
minimum T. Together these lock the run time for fixed p between curves with
the same power of N, which is what the scaling sweeps verify.

All quadratures are adaptive; the nested one behind C uses relative tolerance
1e-8 on both levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from . import model
from .errors import DomainError, QuadratureError, RangeError
from .model import Schedule

NESTED_REL_TOL = 1e-8
HOLDS_SLACK = 1e-9


class BoundName(Enum):
    SEMI_OPEN_GLOBAL = "SemiOpenGlobal"
    SEMI_OPEN_LOCAL = "SemiOpenLocal"
    WIDE_OPEN_GLOBAL = "WideOpenGlobal"
    WIDE_OPEN_LOCAL = "WideOpenLocal"
    RUNTIME_UPPER = "RuntimeUpper"
    RUNTIME_LOWER = "RuntimeLower"


@dataclass(frozen=True)
class BoundReport:
    """An evaluated bound against an observed quantity.

    margin is the signed slack in the bound-satisfying direction: value -
    observed for upper-type bounds (deviation bounds, RuntimeUpper) and
    observed - value for RuntimeLower, so holds <=> margin >= -1e-9 uniformly.
    """

    name: BoundName
    value: float
    observed: float
    holds: bool
    margin: float

    @classmethod
    def make(cls, name: BoundName, value: float, observed: float) -> "BoundReport":
        lower = name is BoundName.RUNTIME_LOWER
        margin = (observed - value) if lower else (value - observed)
        return cls(name=name, value=value, observed=observed,
                   holds=margin >= -HOLDS_SLACK, margin=margin)


@dataclass(frozen=True)
class NecessityParams:
    """Arguments of the necessity functional C."""

    alpha: float
    sigma: float
    regime: Schedule

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError("alpha must be >= 0")


def semi_open_global_bound(n: int, run_time: float, a: float, b: float,
                           k: float, rho10_abs: float = 0.0) -> float:
    """Deviation bound for the semi-open global protocol (leading term ~ N/T)."""
    if a <= 0:
        raise DomainError("semi-open bounds require coeff_a > 0")
    t = run_time
    return (2.0 * rho10_abs / (t * math.sqrt(n) * a)
            + 2.0 * rho10_abs * (n / t) * (b * k + 5.0 * a) / (a * a)
            + math.pi * (n / t) * (b * k + 6.0 * a) / (a * a))


def semi_open_local_bound(n: int, run_time: float, a: float, b: float,
                          k: float, rho10_abs: float = 0.0) -> float:
    """Deviation bound for the semi-open local protocol (leading term ~ sqrt(N)/T)."""
    if a <= 0:
        raise DomainError("semi-open bounds require coeff_a > 0")
    model._check_n(n)
    t = run_time
    root = math.sqrt(n)
    return ((rho10_abs + math.pi / 2.0) * math.sqrt(2.0) * math.pi * b * k
            / (a * a) * (root / t)
            + (3.0 * rho10_abs + 2.0 * math.pi) * (math.pi / a) * (root / t)
            + rho10_abs * (math.pi / a) / t)


def wide_open_global_bound(n: int, run_time: float, sigma: float,
                           rho10_abs: float = 0.0) -> float:
    """Deviation bound (2|rho10| + pi) * N**(sigma + 1/2) / T for A = 0, B = 1."""
    if not sigma >= 0:
        raise DomainError("sigma must be >= 0")
    return (2.0 * rho10_abs + math.pi) * n ** (sigma + 0.5) / run_time


def wide_open_local_bound(n: int, run_time: float, sigma: float,
                          rho10_abs: float = 0.0) -> float:
    """Deviation bound (2|rho10| + pi) * (pi/2) * N**sigma / T; needs sigma >= 1."""
    if not sigma >= 1:
        raise DomainError("the wide-open local bound requires sigma >= 1")
    return (2.0 * rho10_abs + math.pi) * (math.pi / 2.0) * n ** sigma / run_time


def phi(x: float, sigma: float) -> float:
    """Odd antiderivative of (1 + t**2)**sigma from 0 to x.

    Closed forms for sigma = 0 (x) and sigma = 1 (x + x**3/3); adaptive
    quadrature otherwise.
    """
    if not sigma >= 0:
        raise DomainError("sigma must be >= 0")
    if sigma == 0.0:
        return x
    if sigma == 1.0:
        return x + x ** 3 / 3.0
    if x < 0.0:
        return -phi(-x, sigma)
    if x == 0.0:
        return 0.0
    out = quad(lambda t: (1.0 + t * t) ** sigma, 0.0, x,
               epsabs=0.0, epsrel=1e-12, limit=200, full_output=True)
    if len(out) > 3:
        raise QuadratureError(f"phi quadrature failed at x={x}, sigma={sigma}")
    return out[0]


def _phi_exponent(sigma: float, regime: Schedule) -> float:
    if regime is Schedule.GLOBAL:
        if not sigma >= 0:
            raise DomainError("sigma must be >= 0 for the global regime")
        return sigma
    if not sigma >= 1:
        raise DomainError("sigma must be >= 1 for the local regime")
    return sigma - 1.0


def necessity_c(alpha: float, sigma: float, regime: Schedule) -> float:
    """Necessity functional C(alpha): a strict lower bound on 1 - p.

    C(alpha) = (1/(2*sqrt(2))) * int_0^1 F(alpha, beta) dbeta with
    F(alpha, beta) = 2*beta*exp(-alpha*Phi(beta)) * (1+beta^2)**-1.5
                     * int_0^beta exp(-alpha*Phi(x)) / (1+x^2) dx,
    where Phi carries exponent sigma (global) or sigma - 1 (local). Strictly
    decreasing in alpha; nested adaptive quadrature at tolerance 1e-8.
    """
    if alpha < 0:
        raise DomainError("alpha must be >= 0")
    expo = _phi_exponent(sigma, regime)

    def inner(beta: float) -> float:
        out = quad(lambda x: math.exp(-alpha * phi(x, expo)) / (1.0 + x * x),
                   0.0, beta, epsabs=0.0, epsrel=NESTED_REL_TOL, limit=200,
                   full_output=True)
        if len(out) > 3:
            raise QuadratureError("inner necessity quadrature failed")
        return out[0]

    def outer(beta: float) -> float:
        return (2.0 * beta * math.exp(-alpha * phi(beta, expo))
                * (1.0 + beta * beta) ** -1.5 * inner(beta))

    out = quad(outer, 0.0, 1.0, epsabs=0.0, epsrel=NESTED_REL_TOL, limit=200,
               full_output=True)
    if len(out) > 3:
        raise QuadratureError("outer necessity quadrature failed")
    return out[0] / (2.0 * math.sqrt(2.0))


@lru_cache(maxsize=64)
def _necessity_c_at_zero(sigma: float, regime: Schedule) -> float:
    return necessity_c(0.0, sigma, regime)


def necessity_c_inverse(y: float, sigma: float, regime: Schedule,
                        tol: float = 1e-8) -> float:
    """Invert C by bisection: the alpha with |C(alpha) - y| <= tol."""
    if y <= 0:
        raise RangeError("y must be positive")
    c0 = _necessity_c_at_zero(sigma, regime)
    if y > c0 * (1.0 + 1e-12):
        raise RangeError(f"y={y} exceeds C(0)={c0}; the lower bound is vacuous")
    if abs(c0 - y) <= tol:
        return 0.0
    hi = 1.0
    for _ in range(80):
        if necessity_c(hi, sigma, regime) < y:
            break
        hi *= 2.0
    else:
        raise RangeError("could not bracket the inverse of C")
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        c = necessity_c(mid, sigma, regime)
        if abs(c - y) <= tol:
            return mid
        if c > y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def alpha_of(n: int, run_time: float, sigma: float, regime: Schedule) -> float:
    """Scaled run time: T / (2 N**sigma sqrt(N-1)) globally,
    T / (2 N**sigma arctan(sqrt(N-1))) locally."""
    model._check_n(n)
    if regime is Schedule.GLOBAL:
        return run_time / (2.0 * n ** sigma * math.sqrt(n - 1.0))
    return run_time / (2.0 * n ** sigma * math.atan(math.sqrt(n - 1.0)))


class Openness(Enum):
    WIDE_OPEN = "wide-open"
    SEMI_OPEN = "semi-open"


def runtime_bounds_for_p(n: int, p: float, sigma: float, regime: Schedule,
                         openness: Openness, a: float = 1.0, b: float = 0.0,
                         k: float = 0.0) -> tuple[float | None, float]:
    """Run-time sandwich (T_low, T_high) for target success probability p.

    Wide open: T_high = pi * N**(sigma+1/2) / (1-p) globally or
    (pi^2/2) * N**sigma / (1-p) locally; T_low inverts the necessity
    functional, and is reported as 0 when 1-p exceeds C(0) (vacuous bound).
    Semi-open: upper bounds only (T_low is None); requires a > 0.
    """
    model._check_n(n)
    if not 0.0 < p < 1.0:
        raise DomainError("p must lie in (0, 1)")
    deficit = 1.0 - p
    if openness is Openness.SEMI_OPEN:
        if a <= 0:
            raise DomainError("semi-open bounds require coeff_a > 0")
        if regime is Schedule.GLOBAL:
            t_high = math.pi * n * (b * k + 6.0 * a) / (a * a * deficit)
        else:
            t_high = (math.sqrt(n) / deficit) * (2.0 * math.pi ** 2 / a) \
                * (1.0 + math.sqrt(2.0) * b * k / (4.0 * a))
        return None, t_high
    if regime is Schedule.GLOBAL:
        if not sigma >= 0:
            raise DomainError("sigma must be >= 0")
        t_high = math.pi * n ** (sigma + 0.5) / deficit
    else:
        if not sigma >= 1:
            raise DomainError("the wide-open local bounds require sigma >= 1")
        t_high = (math.pi ** 2 / 2.0) * n ** sigma / deficit
    c0 = _necessity_c_at_zero(sigma, regime)
    if deficit > c0:
        t_low = 0.0
    else:
        alpha = necessity_c_inverse(deficit, sigma, regime)
        if regime is Schedule.GLOBAL:
            t_low = 2.0 * n ** sigma * math.sqrt(n - 1.0) * alpha
        else:
            t_low = 2.0 * n ** sigma * math.atan(math.sqrt(n - 1.0)) * alpha
    return t_low, t_high


def condition_integral(n: int, sigma: float) -> float:
    """Fluctuation budget of the dephasing strength: int_0^1 Z |d Gamma^2/ds| ds.

    The integrand has a kink at s = 1/2 (sign change of d Gamma^2/ds), so the
    quadrature is split there. Vanishes for sigma = 0.
    """
    model._check_n(n)
    if not sigma >= 0:
        raise DomainError("sigma must be >= 0")
    if sigma == 0.0:
        return 0.0

    def integrand(s: float) -> float:
        u = 2.0 * s - 1.0
        d2 = (1.0 + (n - 1.0) * u * u) / n
        dd2 = 4.0 * (n - 1.0) * u / n
        z = math.sqrt(n - 1.0) / (1.0 + (n - 1.0) * u * u)
        return z * abs(sigma * d2 ** (sigma - 1.0) * dd2)

    total = 0.0
    for lo, hi in ((0.0, 0.5), (0.5, 1.0)):
        out = quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-10, limit=200,
                   full_output=True)
        if len(out) > 3:
            raise QuadratureError("condition-integral quadrature failed")
        total += out[0]
    return total


def zeta_min(n: int, sigma: float) -> float:
    """Minimum over s of Gamma**2 / gap = gap**(2*sigma - 1).

    Located on a refined grid and polished with bounded golden-section (the
    scalar minimizer); for sigma >= 1/2 this equals n**-(sigma - 1/2).
    """
    model._check_n(n)
    if not sigma >= 0:
        raise DomainError("sigma must be >= 0")
    expo = 2.0 * sigma - 1.0

    def f(s: float) -> float:
        u = 2.0 * s - 1.0
        d2 = (1.0 + (n - 1.0) * u * u) / n
        return d2 ** (0.5 * expo)

    grid = [i / 200.0 for i in range(201)]
    vals = [f(s) for s in grid]
    i = min(range(201), key=vals.__getitem__)
    lo = grid[max(0, i - 1)]
    hi = grid[min(200, i + 1)]
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    return min(vals[i], float(res.fun))


def deviation_bound(params: model.ModelParams, run_time: float,
                    rho10_abs: float, k: float | None = None
                    ) -> tuple[BoundName, float]:
    """Pick and evaluate the deviation bound that applies to a problem instance.

    k defaults to the computed condition integral of the instance (any value
    at least the integral satisfies the bounds' hypothesis, so the exact
    integral is the tightest admissible choice).
    """
    n = params.n_items
    if k is None:
        k = condition_integral(n, params.sigma)
    local = params.schedule is Schedule.LOCAL
    if params.coeff_a == 0.0:
        if params.coeff_b != 1.0:
            raise DomainError("wide-open bounds are stated for coeff_b = 1")
        if local:
            return (BoundName.WIDE_OPEN_LOCAL,
                    wide_open_local_bound(n, run_time, params.sigma, rho10_abs))
        return (BoundName.WIDE_OPEN_GLOBAL,
                wide_open_global_bound(n, run_time, params.sigma, rho10_abs))
    if local:
        return (BoundName.SEMI_OPEN_LOCAL,
                semi_open_local_bound(n, run_time, params.coeff_a,
                                      params.coeff_b, k, rho10_abs))
    return (BoundName.SEMI_OPEN_GLOBAL,
            semi_open_global_bound(n, run_time, params.coeff_a,
                                   params.coeff_b, k, rho10_abs))
