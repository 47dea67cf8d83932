"""Arrival of Bohmian trajectories at a detector and its statistics.

Only initial conditions inside a bounded window ever reach a detector placed
at ``L > 0``; inverting the closed-form trajectory on its principal branch
gives the arrival time of each admissible start point, a probability density
for the arrival time with bounded support, and its mean.  Monte Carlo
sampling of thermal initial conditions provides an end-to-end statistical
check of the analytic density.

The unsqueezed limit ``r -> 0`` is singular for every inverse-map quantity
(the window collapses onto the detector while the time bounds do not move),
so those operations refuse ``r = 0`` explicitly.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .gaussian_states import density, sample_initial_conditions, state_from_matrix
from .numerics import QuadratureSpec, integrate
from .symplectic import OscillatorConfig, SqueezeParams, squeeze_matrix

_ENDPOINT_SNAP = 1e-12
_DOMAIN_SLACK = 1e-12
# ladder of forced subdivision points; resolves the sharp thermal-weight
# layer at the lower window edge when the detector sits many widths out
_BREAK_LADDER = (1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 0.5)


class SingularLimitError(ValueError):
    """Raised for arrival queries at r = 0, where the inverse map degenerates."""


class OutOfDomainError(ValueError):
    """Raised when an initial condition cannot reach the detector."""


@dataclass(frozen=True)
class ArrivalSetup:
    """Detector position together with the state preparation parameters."""

    detector_position: float
    squeeze: SqueezeParams
    cfg: OscillatorConfig

    def __post_init__(self):
        if not (math.isfinite(self.detector_position) and self.detector_position > 0):
            raise ValueError("detector position must be positive and finite")

    @property
    def window(self):
        """Arrival-time support ``(phi/(2 omega), (phi + pi)/(2 omega))``."""
        two_omega = 2.0 * self.cfg.angular_frequency
        return self.squeeze.phi / two_omega, (self.squeeze.phi + math.pi) / two_omega

    def _require_squeezed(self):
        if self.squeeze.r == 0.0:
            raise SingularLimitError(
                "r = 0 is a singular limit: the admissible window collapses to "
                "the detector position and the inverse arrival map is undefined")


@dataclass(frozen=True)
class InitialConditionInterval:
    """Window of start points whose trajectories reach the detector."""

    q0_min: float
    q0_max: float

    def __post_init__(self):
        if not 0 < self.q0_min <= self.q0_max:
            raise ValueError("need 0 < q0_min <= q0_max")

    def contains(self, q0):
        return self.q0_min <= q0 <= self.q0_max

    @property
    def width(self):
        return self.q0_max - self.q0_min


def initial_condition_interval(setup):
    """Admissible window ``[q0_min, q0_max]`` for detection at ``L``.

    Both endpoints scale linearly in ``L`` and bracket it::

        q0_min = L sqrt((1 - tanh 2r cos phi) / (1 + tanh 2r))
        q0_max = L sqrt((1 - tanh 2r cos phi) / (1 - tanh 2r))
    """
    setup._require_squeezed()
    k = math.tanh(2.0 * setup.squeeze.r)
    top = 1.0 - k * math.cos(setup.squeeze.phi)
    lo = setup.detector_position * math.sqrt(top / (1.0 + k))
    hi = setup.detector_position * math.sqrt(top / (1.0 - k))
    interval = InitialConditionInterval(q0_min=lo, q0_max=hi)
    slack = _DOMAIN_SLACK * setup.detector_position
    if not (lo <= setup.detector_position + slack and hi >= setup.detector_position - slack):
        raise AssertionError("window no longer brackets the detector position")
    return interval


def critical_phase(r):
    """Squeeze phase at which the window is symmetric about the detector.

    Solves ``q0_max - L = L - q0_min`` for the phase; the closed form of the
    solution is ``arccos(tanh(r) (3 - tanh(r)^2) / 2)`` on the principal
    branch, which lies in (0, pi/2) for every ``r > 0``.  Below it the window
    leans below the detector, above it the reverse.
    """
    if not (math.isfinite(r) and r > 0):
        raise ValueError("critical phase is defined for r > 0 only")
    th = math.tanh(r)
    cos_value = 0.5 * th * (3.0 - th * th)
    if not -1.0 <= cos_value <= 1.0:
        raise ValueError(f"cosine of the critical phase fell outside [-1, 1]: {cos_value!r}")
    return math.acos(cos_value)


def _arccos_branch(q0, setup):
    """Principal-branch angle of the inverse trajectory map, snapped at the ends."""
    k = math.tanh(2.0 * setup.squeeze.r)
    top = 1.0 - k * math.cos(setup.squeeze.phi)
    ratio = setup.detector_position / np.asarray(q0, dtype=float)
    arg = (1.0 - top * ratio * ratio) / k
    arg = np.clip(arg, -1.0, 1.0)
    # the map's derivative diverges at the window edges; snapping the
    # argument inside one part in 1e12 of +-1 removes the sqrt(eps) noise
    angle = np.arccos(arg)
    angle = np.where(1.0 - arg <= _ENDPOINT_SNAP, 0.0, angle)
    angle = np.where(1.0 + arg <= _ENDPOINT_SNAP, math.pi, angle)
    return angle


def _arrival_times(q0, setup):
    """Vectorized arrival times for points assumed to lie in the window."""
    two_omega = 2.0 * setup.cfg.angular_frequency
    return (setup.squeeze.phi + _arccos_branch(q0, setup)) / two_omega


def time_of_arrival(q0, setup):
    """Time for the trajectory from ``q0`` to meet the detector.

    Defined on the admissible window only; strictly decreasing from
    ``(phi + pi)/(2 omega)`` at ``q0_min`` down to ``phi/(2 omega)`` at
    ``q0_max``.
    """
    setup._require_squeezed()
    interval = initial_condition_interval(setup)
    slack = _DOMAIN_SLACK * interval.q0_max
    if not interval.q0_min - slack <= q0 <= interval.q0_max + slack:
        raise OutOfDomainError(
            f"initial condition {q0!r} outside the admissible window "
            f"[{interval.q0_min!r}, {interval.q0_max!r}]")
    return float(_arrival_times(q0, setup))


def first_arrival_piecewise(q0, setup):
    """Arrival time of ``q0``, or ``None`` when the detector is unreachable.

    Total over all initial conditions: points outside the admissible window
    (including every ``q0 <= 0``) return ``None`` rather than a number, so
    downstream statistics can condition on finiteness without sentinels.
    """
    setup._require_squeezed()
    interval = initial_condition_interval(setup)
    if not interval.contains(q0):
        return None
    return float(_arrival_times(q0, setup))


def _pdf_unnormalized(tau, setup):
    cfg, sq = setup.cfg, setup.squeeze
    omega = cfg.angular_frequency
    ell = cfg.proper_length
    s2 = math.sinh(2.0 * sq.r)
    c2 = math.cosh(2.0 * sq.r)
    u = 2.0 * omega * np.asarray(tau, dtype=float) - sq.phi
    spread = c2 - s2 * np.cos(u)
    value = (setup.detector_position * omega * s2 * np.sin(u)
             * np.exp(-setup.detector_position**2 / (ell**2 * spread))
             / (math.sqrt(math.pi) * ell * spread**1.5))
    # roundoff at the support endpoints can push the sine a hair negative
    return np.maximum(value, 0.0)


@dataclass(frozen=True)
class ToaDistribution:
    """Normalized arrival-time density on its bounded support.

    ``normalization`` is the integral of the raw density over the support;
    it equals the thermal weight of the admissible window.
    """

    t_min: float
    t_max: float
    normalization: float
    setup: ArrivalSetup = field(repr=False)
    _scale: float = field(repr=False, default=1.0)

    def pdf(self, tau):
        tau = np.asarray(tau, dtype=float)
        inside = (tau >= self.t_min) & (tau <= self.t_max)
        values = np.where(inside, _pdf_unnormalized(tau, self.setup) / self.normalization, 0.0)
        if values.ndim == 0:
            return float(values)
        return values

    __call__ = pdf

    def mean(self):
        """Mean arrival time, guaranteed inside ``[t_min, t_max]``."""
        spec = QuadratureSpec(self.t_min, self.t_max, abs_tol=1e-13,
                              rel_tol=1e-12, max_subdivisions=2000)
        num, _ = integrate(lambda t: t * _pdf_unnormalized(t, self.setup) / self._scale, spec)
        return num * self._scale / self.normalization


def toa_pdf(setup):
    """Arrival-time distribution for the given detector and preparation.

    The normalization is computed by adaptive quadrature after rescaling by
    the density's grid maximum, which keeps far-detector setups (tiny raw
    values) accurate.
    """
    setup._require_squeezed()
    t_min, t_max = setup.window
    grid = np.linspace(t_min, t_max, 1025)
    scale = float(_pdf_unnormalized(grid, setup).max())
    if not (math.isfinite(scale) and scale > 0.0):
        raise ArithmeticError("arrival-time density underflowed to zero everywhere")
    spec = QuadratureSpec(t_min, t_max, abs_tol=1e-13, rel_tol=1e-12,
                          max_subdivisions=2000)
    z_scaled, _ = integrate(lambda t: _pdf_unnormalized(t, setup) / scale, spec)
    return ToaDistribution(t_min=t_min, t_max=t_max, normalization=z_scaled * scale,
                           setup=setup, _scale=scale)


def toa_pdf_changeofvar_oracle(setup, tau_samples):
    """Max deviation of the closed-form density from a change of variables.

    Rebuilds the density from first principles only: numerically invert the
    arrival-time map with a root bracketer, differentiate the inverse by
    central differences, and weight by the initial state's density.  Each
    construction is normalized over the same support, trimmed by a sliver at
    the endpoints where the difference stencil would leave the domain (both
    densities vanish there), and compared pointwise.  Samples must be
    interior to the trimmed support.
    """
    setup._require_squeezed()
    interval = initial_condition_interval(setup)
    state0 = state_from_matrix(squeeze_matrix(setup.squeeze, setup.cfg), setup.cfg)
    t_min, t_max = setup.window
    h = 2e-5 * (t_max - t_min)
    lo, hi = t_min + 2 * h, t_max - 2 * h

    def invert(tau):
        return brentq(lambda q: time_of_arrival(q, setup) - tau,
                      interval.q0_min, interval.q0_max,
                      xtol=1e-15, rtol=8.9e-16)

    def raw(tau):
        if not lo <= tau <= hi:
            raise ValueError("tau samples must be interior to the support")
        q0 = invert(tau)
        dq0 = (invert(tau - h) - invert(tau + h)) / (2.0 * h)
        return float(density(state0, q0)) * abs(dq0)

    grid = np.linspace(lo, hi, 257)
    scale = max(max(raw(t) for t in grid),
                float(_pdf_unnormalized(grid, setup).max()))
    cov_spec = QuadratureSpec(lo, hi, abs_tol=1e-13, rel_tol=1e-10,
                              max_subdivisions=400)
    z_cov, _ = integrate(lambda t: raw(t) / scale, cov_spec)
    closed_spec = QuadratureSpec(lo, hi, abs_tol=1e-13, rel_tol=1e-12,
                                 max_subdivisions=2000)
    z_closed, _ = integrate(lambda t: float(_pdf_unnormalized(t, setup)) / scale,
                            closed_spec)

    worst = 0.0
    for tau in np.asarray(tau_samples, dtype=float):
        closed_value = float(_pdf_unnormalized(tau, setup)) / (scale * z_closed)
        cov_value = raw(tau) / (scale * z_cov)
        worst = max(worst, abs(closed_value - cov_value))
    return worst


@dataclass(frozen=True, eq=False)
class ToaHistogram:
    """Monte Carlo arrival-time histogram with its acceptance bookkeeping."""

    counts: np.ndarray
    bin_edges: np.ndarray
    n_total: int
    n_accepted: int

    @property
    def acceptance_fraction(self):
        return self.n_accepted / self.n_total


def toa_histogram_mc(setup, n, seed, bins=32):
    """Histogram of arrival times for thermally sampled initial conditions.

    Start points are drawn from the initial state's density; only draws
    inside the admissible window arrive and contribute.  Deterministic for a
    fixed seed.  Raises if no draw is accepted.
    """
    setup._require_squeezed()
    if n < 1:
        raise ValueError("need at least one sample")
    interval = initial_condition_interval(setup)
    state0 = state_from_matrix(squeeze_matrix(setup.squeeze, setup.cfg), setup.cfg)
    draws = sample_initial_conditions(state0, n, seed)
    accepted = draws[(draws >= interval.q0_min) & (draws <= interval.q0_max)]
    if accepted.size == 0:
        raise RuntimeError(
            "no thermally sampled initial condition fell in the admissible window")
    times = _arrival_times(accepted, setup)
    t_min, t_max = setup.window
    counts, edges = np.histogram(times, bins=bins, range=(t_min, t_max))
    return ToaHistogram(counts=counts, bin_edges=edges,
                        n_total=int(n), n_accepted=int(accepted.size))


def mean_toa(setup):
    """Mean arrival time as a ratio of quadratures over the window.

    Integrates the arrival-time map against the initial state's density
    restricted to the admissible window.  The weight is rescaled by its
    value at ``q0_min`` (its maximum on the window) so that far detectors do
    not underflow, and the quadrature is forced to visit a geometric ladder
    of points near that edge where the weight may be sharply concentrated.
    Agrees with the mean of :func:`toa_pdf` and always lies inside the
    arrival window.
    """
    setup._require_squeezed()
    interval = initial_condition_interval(setup)
    state0 = state_from_matrix(squeeze_matrix(setup.squeeze, setup.cfg), setup.cfg)
    re_width = state0.width.real
    lo, hi = interval.q0_min, interval.q0_max

    def weight(q0):
        return math.exp(-re_width * (q0 * q0 - lo * lo))

    breaks = tuple(lo + (hi - lo) * f for f in _BREAK_LADDER)
    spec = QuadratureSpec(lo, hi, abs_tol=1e-13, rel_tol=1e-12,
                          max_subdivisions=2000, break_points=breaks)
    norm, _ = integrate(weight, spec)
    num, _ = integrate(lambda q0: float(_arrival_times(q0, setup)) * weight(q0), spec)
    return num / norm
