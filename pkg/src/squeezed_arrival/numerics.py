"""Shared numerical machinery: adaptive quadrature, adaptive ODE stepping,
reproducible random streams, and a chi-square goodness-of-fit test.

All routines are thin, contract-checked fronts over scipy/numpy so that the
physics modules share one quadrature engine and one stream-derivation rule.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _integrate
from scipy import stats as _stats

_MASK64 = (1 << 64) - 1


class QuadratureWarning(RuntimeWarning):
    """Quadrature returned before reaching the requested tolerance."""


class StepSizeUnderflowError(RuntimeError):
    """Adaptive ODE stepping failed to make progress."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Finite integration domain plus error targets.

    Semi-infinite problems are handled by the callers, which truncate at ten
    standard deviations of their Gaussian factors before building the spec.
    ``break_points`` marks locations the subdivision must visit, e.g. sharp
    boundary layers of a restricted thermal weight.
    """

    lower: float
    upper: float
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 2000
    break_points: tuple = ()

    def __post_init__(self):
        if not (np.isfinite(self.lower) and np.isfinite(self.upper)):
            raise ValueError("integration endpoints must be finite")
        if self.upper < self.lower:
            raise ValueError("integration endpoints must be ordered")
        if not (self.abs_tol >= 1e-14 and self.rel_tol >= 1e-14):
            raise ValueError("tolerances must be at least 1e-14")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")


def integrate(f, spec):
    """Adaptively integrate ``f`` over the domain in ``spec``.

    Returns ``(value, error_estimate)``.  A partial result (subdivision
    budget exhausted, roundoff-limited accuracy) is returned with a
    :class:`QuadratureWarning` rather than discarded.
    """
    points = list(spec.break_points) if spec.break_points else None
    out = _integrate.quad(
        f,
        spec.lower,
        spec.upper,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        points=points,
        full_output=1,
    )
    value, error_estimate = out[0], out[1]
    if len(out) > 3:
        warnings.warn(
            f"quadrature flagged a partial result (achieved {error_estimate:.3e}): {out[3]}",
            QuadratureWarning,
            stacklevel=2,
        )
    return value, error_estimate


def solve_ode(f, y0, t_grid, rel_tol=1e-9, abs_tol=1e-12):
    """Integrate the scalar ODE ``y' = f(t, y)`` with an embedded RK pair.

    Dense output is evaluated exactly at ``t_grid``, which must be
    monotonically increasing.  Raises :class:`StepSizeUnderflowError` when
    the stepper cannot proceed.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size < 2:
        raise ValueError("t_grid must be a 1-d array with at least two points")
    if np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be strictly increasing")
    sol = _integrate.solve_ivp(
        lambda t, y: [f(t, y[0])],
        (t_grid[0], t_grid[-1]),
        [float(y0)],
        method="RK45",
        t_eval=t_grid,
        rtol=rel_tol,
        atol=abs_tol,
    )
    if not sol.success:
        raise StepSizeUnderflowError(sol.message)
    return sol.y[0]


@dataclass(frozen=True)
class RngStream:
    """Counter-based random stream identified by ``(seed, index)``.

    Streams with distinct indices under the same master seed are
    statistically independent; identical pairs reproduce the identical
    sequence.  Backed by the Philox counter-based bit generator keyed by the
    pair, so streams can be split across workers by index alone.
    """

    seed: int
    index: int = 0

    def __post_init__(self):
        if not (0 <= self.seed <= _MASK64):
            raise ValueError("seed must fit in 64 bits")
        if not (0 <= self.index <= _MASK64):
            raise ValueError("stream index must fit in 64 bits")

    def generator(self):
        """Fresh numpy Generator positioned at the start of this stream."""
        key = (self.seed << 64) | self.index
        return np.random.Generator(np.random.Philox(key=key))


def normal_sample(stream, sigma, size=None):
    """Centered normal draws with standard deviation ``sigma``.

    With ``size=None`` a single float is returned.  Each call starts from
    the beginning of the stream, so repeated calls with the same arguments
    are reproducible; request a batch for i.i.d. samples.
    """
    if not (sigma > 0 and np.isfinite(sigma)):
        raise ValueError("sigma must be positive and finite")
    return stream.generator().normal(0.0, sigma, size=size)


@dataclass(frozen=True)
class GofResult:
    statistic: float
    threshold: float
    dof: int
    passed: bool


def chi_square_gof(counts, bin_edges, pdf, alpha=0.001, min_expected=5.0):
    """Pearson chi-square test of a histogram against a density.

    Expected bin masses come from adaptive quadrature of ``pdf`` over each
    bin.  Tail bins are merged inward until every remaining bin carries at
    least ``min_expected`` expected counts; the threshold is the chi-square
    quantile at ``alpha`` with ``len(bins) - 1`` degrees of freedom.
    """
    counts = np.asarray(counts, dtype=float)
    bin_edges = np.asarray(bin_edges, dtype=float)
    if counts.size == 0 or counts.sum() == 0:
        raise ValueError("empty histogram")
    if bin_edges.size != counts.size + 1:
        raise ValueError("bin_edges must have one more entry than counts")
    total = counts.sum()
    expected = np.empty_like(counts)
    for i in range(counts.size):
        mass, _ = integrate(pdf, QuadratureSpec(bin_edges[i], bin_edges[i + 1],
                                                abs_tol=1e-13, rel_tol=1e-10,
                                                max_subdivisions=200))
        expected[i] = mass * total

    obs = list(counts)
    exp = list(expected)
    i = 0
    while i < len(exp) - 1:
        if exp[i] < min_expected:
            exp[i + 1] += exp[i]
            obs[i + 1] += obs[i]
            del exp[i], obs[i]
        else:
            i += 1
    i = len(exp) - 1
    while i > 0:
        if exp[i] < min_expected:
            exp[i - 1] += exp[i]
            obs[i - 1] += obs[i]
            del exp[i], obs[i]
        i -= 1
    obs = np.asarray(obs)
    exp = np.asarray(exp)
    if len(exp) < 2 or np.any(exp < min_expected):
        raise ValueError("too few samples for a valid chi-square test")

    statistic = float(((obs - exp) ** 2 / exp).sum())
    dof = len(exp) - 1
    threshold = float(_stats.chi2.ppf(1.0 - alpha, dof))
    return GofResult(statistic=statistic, threshold=threshold, dof=dof,
                     passed=statistic < threshold)
