"""Windowed detection-count predictions: delocalized density vs trajectories.

Two functionals for the expected click density of a detector bin of width
``dL`` at position ``L``, watched from ``t = 0`` until ``T``.  The first
time-averages the evolved position density at the detector and knows nothing
about admissible initial conditions.  The second divides that density, at
each instant, by the density carried along the flow from the window of
initial conditions able to reach the bin, making the count sensitive to the
trajectory constraint.  The two disagree in general; this module computes
both so the disagreement can be tabulated.
"""

import math
from dataclasses import dataclass

from .arrival import ArrivalSetup, initial_condition_interval
from .bohm_dynamics import trajectory
from .gaussian_states import density, evolved_state
from .numerics import QuadratureSpec, integrate

_INNER_FLOOR = 1e-300


class UnderflowGuardError(ArithmeticError):
    """The flow-weighted denominator underflowed below any usable scale."""


@dataclass(frozen=True)
class DetectionWindow:
    """Detector bin ``(L, L + dL)`` watched over ``[0, T]``."""

    duration: float
    bin_width: float
    detector_position: float

    def __post_init__(self):
        for name in ("duration", "bin_width", "detector_position"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite")


def default_window(squeeze, cfg, detector_position, bin_width=None):
    """Window closing at the latest possible arrival, ``(phi + pi)/(2 omega)``.

    That closing time covers every arrival only while ``phi < pi``, so other
    phases are rejected; pass an explicit :class:`DetectionWindow` for them.
    The default bin width is one percent of the proper length.
    """
    if squeeze.phi >= math.pi:
        raise ValueError("the default window requires phi < pi")
    if bin_width is None:
        bin_width = 0.01 * cfg.proper_length
    duration = (squeeze.phi + math.pi) / (2.0 * cfg.angular_frequency)
    return DetectionWindow(duration=duration, bin_width=bin_width,
                           detector_position=detector_position)


def standard_count(window, squeeze, cfg, rel_tol=1e-10):
    """Click density ignoring trajectories: time-averaged ``|psi(L, t)|^2 dL``.

    Exactly linear in the bin width; independent of any admissible window of
    initial conditions by construction.
    """
    spec = QuadratureSpec(0.0, window.duration, abs_tol=1e-13, rel_tol=rel_tol,
                          max_subdivisions=2000)
    value, _ = integrate(
        lambda t: float(density(evolved_state(squeeze, t, cfg), window.detector_position)),
        spec)
    return window.bin_width * value / window.duration


def bohmian_count(window, squeeze, cfg, rel_tol=1e-9, jacobian_weighted=False):
    """Click density weighted by the initial conditions able to reach the bin.

    At each time the detector density is divided by the density summed along
    the flow over start points between the window edge for ``L`` and the one
    for ``L + dL``, then time-averaged::

        (dL / T) * int_0^T dt  |psi(L, t)|^2
                   / int dq0 |psi(q(t; q0), t)|^2

    ``jacobian_weighted=True`` multiplies the inner integrand by the flow
    stretch factor ``dq/dq0``, turning the denominator into the pushforward
    mass of the window; it is exposed for sensitivity studies only.
    """
    L = window.detector_position
    lower = initial_condition_interval(
        ArrivalSetup(L, squeeze, cfg)).q0_min
    upper = initial_condition_interval(
        ArrivalSetup(L + window.bin_width, squeeze, cfg)).q0_max
    inner_spec = QuadratureSpec(lower, upper, abs_tol=1e-14, rel_tol=rel_tol,
                                max_subdivisions=500)

    def averaged_ratio(t):
        state = evolved_state(squeeze, t, cfg)
        stretch = float(trajectory(1.0, t, squeeze, cfg))

        def flowed_density(q0):
            value = float(density(state, q0 * stretch))
            if jacobian_weighted:
                value *= stretch
            return value

        inner, _ = integrate(flowed_density, inner_spec)
        if inner < _INNER_FLOOR:
            raise UnderflowGuardError(
                f"flow-weighted denominator underflowed at t = {t!r}")
        return float(density(state, L)) / inner

    outer_spec = QuadratureSpec(0.0, window.duration, abs_tol=1e-13,
                                rel_tol=rel_tol, max_subdivisions=500)
    value, _ = integrate(averaged_ratio, outer_spec)
    return window.bin_width * value / window.duration


@dataclass(frozen=True)
class CountRow:
    detector_position: float
    standard: float
    bohmian: float

    @property
    def ratio(self):
        return self.bohmian / self.standard


def count_report(detector_positions, squeeze, cfg, bin_width=None, duration=None,
                 jacobian_weighted=False):
    """Both count predictions for each detector position, in input order."""
    positions = list(detector_positions)
    if not positions:
        raise ValueError("need at least one detector position")
    rows = []
    for L in positions:
        if duration is None:
            window = default_window(squeeze, cfg, L, bin_width)
        else:
            width = 0.01 * cfg.proper_length if bin_width is None else bin_width
            window = DetectionWindow(duration=duration, bin_width=width,
                                     detector_position=L)
        rows.append(CountRow(
            detector_position=L,
            standard=standard_count(window, squeeze, cfg),
            bohmian=bohmian_count(window, squeeze, cfg,
                                  jacobian_weighted=jacobian_weighted),
        ))
    return rows
