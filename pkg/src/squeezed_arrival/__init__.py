"""Bohmian trajectories and arrival-time statistics of vacuum squeezed states.

The pipeline runs from a squeeze specification ``(r, phi)`` through the
symplectic group to a closed-form Gaussian pilot wave, its Bohmian
trajectories, the statistics of their arrival at a detector, and finally to
competing detection-count predictions.  Every analytic formula ships with an
independent numerical oracle; see :mod:`squeezed_arrival.validation`.
"""

from .arrival import (ArrivalSetup, InitialConditionInterval, OutOfDomainError,
                      SingularLimitError, ToaDistribution, ToaHistogram,
                      critical_phase, first_arrival_piecewise,
                      initial_condition_interval, mean_toa, time_of_arrival,
                      toa_histogram_mc, toa_pdf, toa_pdf_changeofvar_oracle)
from .bohm_dynamics import (PhasePoint, TrajectoryParams, bohm_velocity,
                            forbidden_region_slopes, limit_trajectory_r_infinity,
                            trajectory, trajectory_extrema, trajectory_ode_oracle)
from .detection import (CountRow, DetectionWindow, UnderflowGuardError,
                        bohmian_count, count_report, default_window,
                        standard_count)
from .gaussian_states import (GaussianState, density, evolved_state,
                              sample_initial_conditions, state_from_matrix,
                              vacuum_state, verify_against_integral_rep)
from .numerics import (GofResult, QuadratureSpec, QuadratureWarning, RngStream,
                       StepSizeUnderflowError, chi_square_gof, integrate,
                       normal_sample, solve_ode)
from .symplectic import (Generator2, OscillatorConfig, SqueezeParams,
                         Symplectic2, SYMPLECTIC_FORM, compose,
                         evolution_matrix, exp_generator, hamiltonian_generator,
                         squeeze_generator, squeeze_matrix)

__version__ = "0.1.0"

__all__ = [
    "ArrivalSetup", "CountRow", "DetectionWindow", "GaussianState",
    "Generator2", "GofResult", "InitialConditionInterval", "OscillatorConfig",
    "OutOfDomainError", "PhasePoint", "QuadratureSpec", "QuadratureWarning",
    "RngStream", "SingularLimitError", "SqueezeParams", "StepSizeUnderflowError",
    "Symplectic2", "SYMPLECTIC_FORM", "ToaDistribution", "ToaHistogram",
    "TrajectoryParams", "UnderflowGuardError", "bohm_velocity", "bohmian_count",
    "chi_square_gof", "compose", "count_report", "critical_phase",
    "default_window", "density", "evolution_matrix", "evolved_state",
    "exp_generator", "first_arrival_piecewise", "forbidden_region_slopes",
    "hamiltonian_generator", "initial_condition_interval", "integrate",
    "limit_trajectory_r_infinity", "mean_toa", "normal_sample",
    "sample_initial_conditions", "solve_ode", "squeeze_generator",
    "squeeze_matrix", "standard_count", "state_from_matrix", "time_of_arrival",
    "toa_histogram_mc", "toa_pdf", "toa_pdf_changeofvar_oracle", "trajectory",
    "trajectory_extrema", "trajectory_ode_oracle", "vacuum_state",
    "verify_against_integral_rep",
]
