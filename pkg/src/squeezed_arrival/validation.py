"""Cross-validation suite tying every closed form to an independent check.

Each check pits an analytic expression against an oracle that does not share
its derivation: matrix identities against direct arithmetic, closed-form
states against the oscillatory kernel integral, trajectories against
adaptive ODE integration, the arrival-time density against a numerical
change of variables and against Monte Carlo sampling.  The suite reports
measured errors next to their tolerances and is exposed through the command
line for one-shot verification of an installation.

``perturbation`` injects a bias into the trajectory comparison so the
suite's failure path itself can be exercised.
"""

import math

import numpy as np

from . import arrival, bohm_dynamics, gaussian_states, numerics, symplectic

_PAPER_LIKE_CFG = dict(mass=1.0, angular_frequency=0.5, hbar=1.0)


def _check(name, measured, tolerance):
    return {
        "name": name,
        "measured": float(measured),
        "tolerance": float(tolerance),
        "passed": bool(measured <= tolerance),
    }


def _random_inputs(rng, n):
    r = rng.uniform(0.0, 3.0, size=n)
    phi = rng.uniform(0.0, 2.0 * math.pi, size=n)
    wt = rng.uniform(0.0, 4.0 * math.pi, size=n)
    return r, phi, wt


def check_symplectic(seed=20259, draws=1000):
    """Determinant, symplectic condition, and generator-exponential match."""
    cfg = symplectic.OscillatorConfig(**_PAPER_LIKE_CFG)
    rng = numerics.RngStream(seed, 1).generator()
    r, phi, wt = _random_inputs(rng, draws)
    omega = cfg.angular_frequency
    j = symplectic.SYMPLECTIC_FORM
    worst_det = 0.0
    worst_cond = 0.0
    worst_match = 0.0
    for i in range(draws):
        params = symplectic.SqueezeParams(r[i], phi[i])
        squeeze = symplectic.squeeze_matrix(params, cfg)
        evolve = symplectic.evolution_matrix(wt[i] / omega, cfg)
        both = symplectic.compose(evolve, squeeze)
        for m in (squeeze, evolve, both):
            worst_det = max(worst_det, abs(m.det - 1.0))
            worst_cond = max(worst_cond, float(np.max(np.abs(
                m.matrix @ j @ m.matrix.T - j))))
        exp_sq = symplectic.exp_generator(symplectic.squeeze_generator(params, cfg))
        exp_ev = symplectic.exp_generator(
            symplectic.hamiltonian_generator(wt[i] / omega, cfg))
        scale_sq = np.maximum(np.abs(squeeze.matrix), 1.0)
        scale_ev = np.maximum(np.abs(evolve.matrix), 1.0)
        worst_match = max(
            worst_match,
            float(np.max(np.abs(exp_sq.matrix - squeeze.matrix) / scale_sq)),
            float(np.max(np.abs(exp_ev.matrix - evolve.matrix) / scale_ev)),
        )
    return [
        _check("symplectic.determinant", worst_det, 1e-12),
        _check("symplectic.form_preserved", worst_cond, 1e-12),
        _check("symplectic.exponential_matches_closed_form", worst_match, 1e-12),
    ]


def check_normalization(seed=20259, draws=40):
    """Quadrature of evolved densities over ten standard deviations."""
    cfg = symplectic.OscillatorConfig(**_PAPER_LIKE_CFG)
    rng = numerics.RngStream(seed, 2).generator()
    r, phi, wt = _random_inputs(rng, draws)
    worst = 0.0
    for i in range(draws):
        state = gaussian_states.evolved_state(
            symplectic.SqueezeParams(r[i], phi[i]), wt[i] / cfg.angular_frequency, cfg)
        sigma = math.sqrt(state.position_variance)
        spec = numerics.QuadratureSpec(-10 * sigma, 10 * sigma,
                                       abs_tol=1e-12, rel_tol=1e-12)
        total, _ = numerics.integrate(lambda x: float(gaussian_states.density(state, x)), spec)
        worst = max(worst, abs(total - 1.0))
    return [_check("states.normalization", worst, 1e-8)]


def check_kernel_representation(seed=20259, draws=5):
    """Closed-form states against the oscillatory kernel integral."""
    cfg = symplectic.OscillatorConfig(**_PAPER_LIKE_CFG)
    rng = numerics.RngStream(seed, 3).generator()
    ell = cfg.proper_length
    xs = [0.0, ell, -ell, 2 * ell, -2 * ell]
    worst = 0.0
    done = 0
    while done < draws:
        r = rng.uniform(0.1, 2.0)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        t = rng.uniform(0.0, 4.0 * math.pi / cfg.angular_frequency)
        m = symplectic.compose(symplectic.evolution_matrix(t, cfg),
                               symplectic.squeeze_matrix(symplectic.SqueezeParams(r, phi), cfg))
        if abs(m.b) * cfg.hbar / ell**2 < 0.05:
            continue
        worst = max(worst, gaussian_states.verify_against_integral_rep(m, cfg, xs))
        done += 1
    return [_check("states.kernel_integral", worst, 1e-6)]


def check_trajectories(seed=20259, draws=20, perturbation=0.0):
    """Closed-form trajectories against the ODE oracle and the velocity field."""
    cfg = symplectic.OscillatorConfig(**_PAPER_LIKE_CFG)
    rng = numerics.RngStream(seed, 4).generator()
    omega = cfg.angular_frequency
    grid = np.linspace(0.0, 2.0 * math.pi / omega, 41)
    worst_ode = 0.0
    worst_vel = 0.0
    for _ in range(draws):
        params = symplectic.SqueezeParams(rng.uniform(0.05, 2.5),
                                          rng.uniform(0.0, 2.0 * math.pi))
        q0 = rng.uniform(0.2, 2.0) * (1 if rng.random() < 0.5 else -1)
        closed = bohm_dynamics.trajectory(q0, grid, params, cfg) + perturbation
        stepped = bohm_dynamics.trajectory_ode_oracle(q0, grid, params, cfg)
        worst_ode = max(worst_ode, float(np.max(np.abs(stepped - closed) / np.abs(closed))))

        t = rng.uniform(0.0, 4.0 * math.pi / omega)
        q = float(bohm_dynamics.trajectory(q0, t, params, cfg))
        v1 = float(bohm_dynamics.bohm_velocity(q, t, params, cfg))
        state = gaussian_states.evolved_state(params, t, cfg)
        v2 = -(cfg.hbar / cfg.mass) * state.width.imag * q
        vel_scale = omega * math.sinh(2.0 * params.r) * abs(q) + 1e-30
        worst_vel = max(worst_vel, abs(v1 - v2) / max(abs(v2), vel_scale))
    return [
        _check("trajectories.ode_oracle", worst_ode, 1e-6),
        _check("trajectories.velocity_from_state", worst_vel, 1e-10),
    ]


def check_arrival_roundtrip(seed=20259, draws=200):
    """Arrival times send their start points back onto the detector."""
    cfg = symplectic.OscillatorConfig(**_PAPER_LIKE_CFG)
    rng = numerics.RngStream(seed, 5).generator()
    worst = 0.0
    for _ in range(draws):
        setup = arrival.ArrivalSetup(
            rng.uniform(0.2, 4.0),
            symplectic.SqueezeParams(rng.uniform(0.1, 2.5),
                                     rng.uniform(0.0, 2.0 * math.pi)),
            cfg)
        interval = arrival.initial_condition_interval(setup)
        q0 = rng.uniform(interval.q0_min, interval.q0_max)
        t = arrival.time_of_arrival(q0, setup)
        hit = float(bohm_dynamics.trajectory(q0, t, setup.squeeze, cfg))
        worst = max(worst, abs(hit - setup.detector_position) / setup.detector_position)
    return [_check("arrival.roundtrip", worst, 1e-9)]


def check_pdf_changeofvar(seed=20259):
    """Closed-form arrival density against the change-of-variables oracle."""
    cfg = symplectic.OscillatorConfig(**_PAPER_LIKE_CFG)
    worst = 0.0
    for (r, phi, L) in [(0.5, 0.0, 1.0), (1.0, 2.0 * math.pi / 3.0, 2.0)]:
        setup = arrival.ArrivalSetup(L, symplectic.SqueezeParams(r, phi), cfg)
        t_min, t_max = setup.window
        taus = t_min + (t_max - t_min) * np.linspace(0.05, 0.95, 9)
        worst = max(worst, arrival.toa_pdf_changeofvar_oracle(setup, taus))
    return [_check("arrival.change_of_variables", worst, 1e-8)]


def check_monte_carlo(seed=20259, n=100_000):
    """Sampled arrival times against the analytic density and weight."""
    cfg = symplectic.OscillatorConfig(**_PAPER_LIKE_CFG)
    setup = arrival.ArrivalSetup(1.0, symplectic.SqueezeParams(1.0, 0.0), cfg)
    hist = arrival.toa_histogram_mc(setup, n=n, seed=seed, bins=32)
    dist = arrival.toa_pdf(setup)
    gof = numerics.chi_square_gof(hist.counts, hist.bin_edges, dist.pdf, alpha=0.001)
    p = dist.normalization
    stderr = math.sqrt(p * (1.0 - p) / n)
    frac_error = abs(hist.acceptance_fraction - p)
    return [
        _check("arrival.mc_chi_square", gof.statistic, gof.threshold),
        _check("arrival.mc_acceptance_fraction", frac_error, 3.0 * stderr),
    ]


def run_validation(seed=20259, perturbation=0.0):
    """Run every check; returns a list of dicts with measured errors."""
    checks = []
    checks += check_symplectic(seed)
    checks += check_normalization(seed)
    checks += check_kernel_representation(seed)
    checks += check_trajectories(seed, perturbation=perturbation)
    checks += check_arrival_roundtrip(seed)
    checks += check_pdf_changeofvar(seed)
    checks += check_monte_carlo(seed)
    return checks
