"""Bohmian trajectories guided by the evolved squeezed state.

The pilot wave is Gaussian at all times, so the guidance velocity is linear
in position and the trajectories solve in closed form:

    q(t) = q0 * sqrt((1 - tanh(2r) cos(2 omega t - phi))
                     / (1 - tanh(2r) cos(phi)))

Positions breathe with period pi/omega, never change sign and never cross.
An adaptive ODE integration of the velocity field is provided as an
independent oracle for the closed form.
"""

import math
from dataclasses import dataclass

import numpy as np

from .numerics import solve_ode
from .symplectic import OscillatorConfig, SqueezeParams


@dataclass(frozen=True)
class TrajectoryParams:
    """One trajectory: squeeze settings, oscillator constants, start point."""

    squeeze: SqueezeParams
    cfg: OscillatorConfig
    q0: float

    def __post_init__(self):
        if not math.isfinite(self.q0):
            raise ValueError("initial position must be finite")


@dataclass(frozen=True)
class PhasePoint:
    """Sample of a trajectory in the (position, velocity) plane."""

    q: float
    qdot: float
    t: float


def _modulation(t, squeeze, cfg):
    """Time-dependent squared scale of every trajectory (q(t)/q0)^2."""
    k = math.tanh(2.0 * squeeze.r)
    u = 2.0 * cfg.angular_frequency * np.asarray(t, dtype=float) - squeeze.phi
    return (1.0 - k * np.cos(u)) / (1.0 - k * math.cos(squeeze.phi))


def bohm_velocity(q, t, squeeze, cfg):
    """Guidance velocity at position ``q`` and time ``t``.

    Linear in ``q`` with a strictly positive denominator, since
    ``|tanh(2r)| < 1`` for finite squeezing.
    """
    omega = cfg.angular_frequency
    k = math.tanh(2.0 * squeeze.r)
    u = 2.0 * omega * np.asarray(t, dtype=float) - squeeze.phi
    return omega * k * np.sin(u) / (1.0 - k * np.cos(u)) * np.asarray(q, dtype=float)


def trajectory(q0, t, squeeze, cfg):
    """Closed-form trajectory position(s) at time(s) ``t``; q(0) = q0."""
    return np.asarray(q0, dtype=float) * np.sqrt(_modulation(t, squeeze, cfg))


def trajectory_ode_oracle(q0, t_grid, squeeze, cfg, rel_tol=1e-9, abs_tol=1e-12):
    """Trajectory recovered by adaptive integration of the velocity field.

    Independent of the closed form; used to validate it.  ``t_grid`` must be
    strictly increasing and start at 0.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid[0] != 0.0:
        raise ValueError("t_grid must start at 0 where the initial condition lives")
    return solve_ode(lambda t, q: bohm_velocity(q, t, squeeze, cfg),
                     q0, t_grid, rel_tol=rel_tol, abs_tol=abs_tol)


def trajectory_extrema(q0, squeeze):
    """Range ``(q_min, q_max)`` a trajectory from ``q0`` sweeps out.

    For positive starts::

        q_max = q0 sqrt((1 + tanh 2r) / (1 - tanh 2r cos phi))
        q_min = q0 sqrt((1 - tanh 2r) / (1 - tanh 2r cos phi))

    Negative starts mirror through the origin.  Always brackets ``q0``.
    """
    if not math.isfinite(q0):
        raise ValueError("initial position must be finite")
    k = math.tanh(2.0 * squeeze.r)
    base = 1.0 - k * math.cos(squeeze.phi)
    hi = abs(q0) * math.sqrt((1.0 + k) / base)
    lo = abs(q0) * math.sqrt((1.0 - k) / base)
    if q0 >= 0:
        return lo, hi
    return -hi, -lo


def forbidden_region_slopes(squeeze, cfg):
    """Slopes ``+-2 omega sinh(2r)`` bounding the reachable phase-space wedge.

    No trajectory point ever satisfies ``|qdot| > 2 omega sinh(2r) |q|``.
    """
    slope = 2.0 * cfg.angular_frequency * math.sinh(2.0 * squeeze.r)
    return slope, -slope


def limit_trajectory_r_infinity(q0, t, phi, cfg):
    """Infinite-squeezing limit ``q0 |sin(omega t - phi/2) / sin(phi/2)|``.

    Defined only for ``phi != 0``; the limit is not uniform, so finite-``r``
    trajectories stay strictly away from zero while this expression touches
    it.
    """
    phi = float(phi) % (2.0 * math.pi)
    if phi == 0.0:
        raise ValueError("the infinite-squeezing limit is singular at phi = 0")
    omega = cfg.angular_frequency
    t = np.asarray(t, dtype=float)
    return np.asarray(q0, dtype=float) * np.abs(np.sin(omega * t - phi / 2.0)
                                                / math.sin(phi / 2.0))
