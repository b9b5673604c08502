"""Adiabatic quantum search under eigenbasis dephasing.

Simulation of the reduced two-level dynamics, a full-space oracle, run-time
scaling analysis, and the analytical bounds the scalings are checked against.
"""

from .errors import (AdiaSearchError, BracketError, DomainError,
                     InsufficientDataError, IntegrationError, QuadratureError,
                     RangeError)
from .model import ModelParams, Schedule, Spectrum, coefficients, spectrum
from .dynamics import (SimOptions, Trajectory, as_bloch_vector, evolve,
                       euler_polygon, success_probability)
from .oracle import FullEvolution, FullState, evolve_full, reduction_residual
from .analysis import (RuntimeResult, SlopeFit, SweepRow, SweepTable,
                       find_runtime, fit_slope, sweep)
from .bounds import (BoundName, BoundReport, NecessityParams, Openness,
                     alpha_of, condition_integral, deviation_bound,
                     necessity_c, necessity_c_inverse, phi,
                     runtime_bounds_for_p, semi_open_global_bound,
                     semi_open_local_bound, wide_open_global_bound,
                     wide_open_local_bound, zeta_min)

__all__ = [
    "AdiaSearchError", "BracketError", "DomainError", "InsufficientDataError",
    "IntegrationError", "QuadratureError", "RangeError",
    "ModelParams", "Schedule", "Spectrum", "coefficients", "spectrum",
    "SimOptions", "Trajectory", "as_bloch_vector", "evolve", "euler_polygon",
    "success_probability",
    "FullEvolution", "FullState", "evolve_full", "reduction_residual",
    "RuntimeResult", "SlopeFit", "SweepRow", "SweepTable",
    "find_runtime", "fit_slope", "sweep",
    "BoundName", "BoundReport", "NecessityParams", "Openness", "alpha_of",
    "condition_integral", "deviation_bound", "necessity_c",
    "necessity_c_inverse", "phi", "runtime_bounds_for_p",
    "semi_open_global_bound", "semi_open_local_bound",
    "wide_open_global_bound", "wide_open_local_bound", "zeta_min",
]

__version__ = "0.1.0"
