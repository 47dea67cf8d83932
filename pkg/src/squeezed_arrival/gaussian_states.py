"""Closed-form Gaussian squeezed states in the position representation.

A squeezed state of the harmonic oscillator is a pure Gaussian
``psi(x) = amplitude * exp(-width * x^2 / 2)`` whose complex coefficients are
rational functions of the entries of a symplectic matrix.  Time evolution is
matrix composition, so states at any time come out in closed form.  The
integral-kernel representation of the same group action is kept alongside as
a quadrature oracle for the closed form.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .numerics import QuadratureSpec, RngStream, integrate, normal_sample
from .symplectic import compose, evolution_matrix, squeeze_matrix


@dataclass(frozen=True)
class GaussianState:
    """Normalized Gaussian wave function ``amplitude * exp(-width x^2 / 2)``.

    ``Re(width) > 0`` guarantees normalizability and
    ``|amplitude|^2 = sqrt(Re(width)/pi)`` pins unit norm.
    """

    amplitude: complex
    width: complex

    def __post_init__(self):
        amplitude = complex(self.amplitude)
        width = complex(self.width)
        if not (cmath.isfinite(amplitude) and cmath.isfinite(width)):
            raise ValueError("state coefficients must be finite")
        if not width.real > 0:
            raise ValueError("Re(width) must be positive for a normalizable state")
        norm_sq = abs(amplitude) ** 2
        expected = math.sqrt(width.real / math.pi)
        if abs(norm_sq - expected) > 1e-10 * expected:
            raise ValueError("amplitude does not normalize the state")
        object.__setattr__(self, "amplitude", amplitude)
        object.__setattr__(self, "width", width)

    @property
    def position_variance(self):
        """Variance of the position density, ``1 / (2 Re(width))``."""
        return 0.5 / self.width.real

    def __call__(self, x):
        """Complex wave-function value(s) at position ``x``."""
        return self.amplitude * np.exp(-0.5 * self.width * np.asarray(x, dtype=float) ** 2)


def vacuum_state(cfg):
    """Oscillator ground state: real width ``1 / proper_length^2``."""
    lsq = cfg.proper_length**2
    return GaussianState(amplitude=(1.0 / (math.pi * lsq)) ** 0.25, width=1.0 / lsq)


def state_from_matrix(m, cfg):
    """Gaussian state produced by acting with the symplectic element ``m``
    on the vacuum.

    The coefficients read off the matrix entries ``a b / c d``::

        amplitude = (pi l^2)^(-1/4) * sqrt(l^2 / (l^2 a + i hbar b))
        width     = l^2 / (hbar^2 b^2 + a^2 l^4)
                    - (i/hbar) (l^4 a c + hbar^2 b d) / (a^2 l^4 + hbar^2 b^2)

    The square root takes the principal branch; the global phase carries no
    weight downstream because only ``|psi|^2`` and the logarithmic derivative
    of ``psi`` are consumed.
    """
    lsq = cfg.proper_length**2
    hbar = cfg.hbar
    denom = lsq * m.a + 1j * hbar * m.b
    if abs(denom) == 0.0:
        raise ValueError("degenerate matrix: l^2 a + i hbar b vanished")
    amplitude = (1.0 / (math.pi * lsq)) ** 0.25 * cmath.sqrt(lsq / denom)
    quad_sum = hbar**2 * m.b**2 + m.a**2 * lsq**2
    width = lsq / quad_sum - 1j * (lsq**2 * m.a * m.c + hbar**2 * m.b * m.d) / (hbar * quad_sum)
    return GaussianState(amplitude=amplitude, width=width)


def evolved_state(params, t, cfg):
    """Squeezed state after harmonic evolution for time ``t``.

    Evolution composes with the squeeze in the group, so the result is
    ``state_from_matrix`` of the product matrix.
    """
    m = compose(evolution_matrix(t, cfg), squeeze_matrix(params, cfg))
    return state_from_matrix(m, cfg)


def density(state, x):
    """Position density ``|psi(x)|^2``, vectorized over ``x``."""
    x = np.asarray(x, dtype=float)
    return abs(state.amplitude) ** 2 * np.exp(-state.width.real * x * x)


def verify_against_integral_rep(m, cfg, x_samples, quad_abs_tol=1e-10):
    """Max deviation of the closed form from the oscillatory kernel integral.

    The group element ``m`` also acts on the vacuum through an explicit
    integral kernel (defined only for ``b != 0``).  This evaluates that
    integral by adaptive quadrature at each requested position and compares
    with the closed-form Gaussian, after fitting one global unit-modulus
    phase at ``x = 0``.  Returns the maximum modulus of the difference.
    """
    if m.b == 0.0:
        raise ValueError("kernel representation degenerates for b = 0")
    lsq = cfg.proper_length**2
    hbar = cfg.hbar
    ell = cfg.proper_length
    vac_amp = (1.0 / (math.pi * lsq)) ** 0.25
    prefactor = 1.0 / cmath.sqrt(2j * math.pi * hbar * m.b)

    def kernel_integral(x):
        def f(xp):
            phase = (m.d / m.b * x * x - 2.0 * xp * x / m.b + m.a / m.b * xp * xp) / (2.0 * hbar)
            return cmath.exp(1j * phase) * vac_amp * math.exp(-xp * xp / (2.0 * lsq))

        spec = QuadratureSpec(-10.0 * ell, 10.0 * ell, abs_tol=quad_abs_tol,
                              rel_tol=1e-10, max_subdivisions=400)
        re, _ = integrate(lambda u: f(u).real, spec)
        im, _ = integrate(lambda u: f(u).imag, spec)
        return prefactor * (re + 1j * im)

    closed = state_from_matrix(m, cfg)
    phase = kernel_integral(0.0) / closed.amplitude
    phase /= abs(phase)
    worst = 0.0
    for x in x_samples:
        deviation = abs(kernel_integral(x) - phase * closed(x))
        worst = max(worst, float(deviation))
    return worst


def sample_initial_conditions(state, n, seed):
    """Thermal-equilibrium draws of initial positions.

    Positions are distributed as the state's own density, i.e. a centered
    normal with variance ``1/(2 Re(width))``.  Deterministic per seed.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    sigma = math.sqrt(state.position_variance)
    return normal_sample(RngStream(seed, 0), sigma, size=int(n))
