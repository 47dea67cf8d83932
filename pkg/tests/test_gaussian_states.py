import math

import numpy as np
import pytest

from squeezed_arrival.gaussian_states import (GaussianState, density,
                                              evolved_state,
                                              sample_initial_conditions,
                                              state_from_matrix, vacuum_state,
                                              verify_against_integral_rep)
from squeezed_arrival.numerics import QuadratureSpec, RngStream, integrate
from squeezed_arrival.symplectic import (OscillatorConfig, SqueezeParams,
                                         Symplectic2, compose, evolution_matrix,
                                         squeeze_matrix)

UNIT = OscillatorConfig(1.0, 1.0, 1.0)
PAPERISH = OscillatorConfig(1.0, 0.5, 1.0)  # l^2 = 2


def quadrature_norm(state):
    sigma = math.sqrt(state.position_variance)
    spec = QuadratureSpec(-10 * sigma, 10 * sigma, abs_tol=1e-12, rel_tol=1e-12)
    total, _ = integrate(lambda x: float(density(state, x)), spec)
    return total


class TestVacuumState:
    def test_unit_config(self):
        state = vacuum_state(UNIT)
        assert state.amplitude == pytest.approx(math.pi ** -0.25, rel=1e-15)
        assert state.width == 1.0

    def test_width_scales_with_proper_length(self):
        assert vacuum_state(PAPERISH).width == pytest.approx(0.5, rel=1e-15)

    def test_normalized_by_quadrature(self):
        assert quadrature_norm(vacuum_state(PAPERISH)) == pytest.approx(1.0, abs=1e-10)


class TestStateFromMatrix:
    def test_identity_gives_vacuum(self):
        state = state_from_matrix(Symplectic2(1.0, 0.0, 0.0, 1.0), UNIT)
        vac = vacuum_state(UNIT)
        assert state.amplitude == pytest.approx(vac.amplitude, rel=1e-15)
        assert state.width == pytest.approx(vac.width, rel=1e-15)

    def test_pure_squeeze_width_is_real(self):
        for r in (0.3, 1.0, 2.0):
            m = squeeze_matrix(SqueezeParams(r, 0.0), PAPERISH)
            state = state_from_matrix(m, PAPERISH)
            lsq = PAPERISH.proper_length**2
            assert state.width.imag == 0.0
            assert state.width.real == pytest.approx(math.exp(2 * r) / lsq, rel=1e-13)

    def test_quarter_turn_preserves_vacuum_width_modulus(self):
        t = (math.pi / 2) / PAPERISH.angular_frequency
        state = state_from_matrix(evolution_matrix(t, PAPERISH), PAPERISH)
        lsq = PAPERISH.proper_length**2
        assert abs(state.width) == pytest.approx(1.0 / lsq, rel=1e-13)
        assert quadrature_norm(state) == pytest.approx(1.0, abs=1e-10)

    def test_rejects_degenerate_matrix(self):
        with pytest.raises(ValueError):
            Symplectic2(1.0, 0.5, 0.5, 1.0)  # det != 1 already rejected upstream


class TestGaussianStateInvariants:
    def test_rejects_nonnormalizable(self):
        with pytest.raises(ValueError):
            GaussianState(amplitude=1.0, width=-1.0 + 0.0j)

    def test_rejects_wrong_amplitude(self):
        with pytest.raises(ValueError):
            GaussianState(amplitude=1.0, width=1.0)


class TestEvolvedState:
    def test_vacuum_density_static(self):
        xs = np.linspace(-4.0, 4.0, 41)
        base = density(evolved_state(SqueezeParams(0.0, 0.0), 0.0, PAPERISH), xs)
        for t in np.linspace(0.0, 2 * math.pi / 0.5, 17):
            now = density(evolved_state(SqueezeParams(0.0, 0.0), float(t), PAPERISH), xs)
            assert np.max(np.abs(now - base)) <= 1e-10

    def test_time_zero_matches_static_squeeze(self):
        params = SqueezeParams(0.8, 2.2)
        dynamic = evolved_state(params, 0.0, PAPERISH)
        static = state_from_matrix(squeeze_matrix(params, PAPERISH), PAPERISH)
        assert dynamic.width == pytest.approx(static.width, rel=1e-14)

    def test_quarter_period_width(self):
        # at 2*omega*t = pi the squeezed width has breathed to its widest
        t = (math.pi / 2) / PAPERISH.angular_frequency
        state = evolved_state(SqueezeParams(0.5, 0.0), t, PAPERISH)
        lsq = PAPERISH.proper_length**2
        assert state.width.real == pytest.approx(math.exp(-1.0) / lsq, rel=1e-13)

    def test_density_period_is_half_oscillator_period(self):
        params = SqueezeParams(1.2, 1.0)
        xs = np.linspace(-6.0, 6.0, 31)
        rng = RngStream(3, 0).generator()
        for t in rng.uniform(0.0, 10.0, 8):
            a = density(evolved_state(params, float(t), PAPERISH), xs)
            b = density(evolved_state(params, float(t) + math.pi / 0.5, PAPERISH), xs)
            assert np.max(np.abs(a - b)) <= 1e-10

    def test_width_stays_normalizable(self):
        rng = RngStream(4, 0).generator()
        for _ in range(50):
            params = SqueezeParams(rng.uniform(0, 3), rng.uniform(0, 2 * math.pi))
            state = evolved_state(params, rng.uniform(0, 8 * math.pi), PAPERISH)
            assert state.width.real > 0

    def test_normalization_random_draws(self):
        rng = RngStream(5, 0).generator()
        for _ in range(20):
            params = SqueezeParams(rng.uniform(0, 3), rng.uniform(0, 2 * math.pi))
            state = evolved_state(params, rng.uniform(0, 8 * math.pi), PAPERISH)
            assert quadrature_norm(state) == pytest.approx(1.0, abs=1e-8)


class TestDensity:
    def test_peak_value(self):
        state = vacuum_state(UNIT)
        assert density(state, 0.0) == pytest.approx(abs(state.amplitude) ** 2, rel=1e-15)

    def test_vacuum_at_one_length(self):
        assert density(vacuum_state(UNIT), 1.0) == pytest.approx(
            math.exp(-1.0) / math.sqrt(math.pi), rel=1e-14)

    def test_even_and_nonnegative(self):
        state = evolved_state(SqueezeParams(1.0, 0.4), 0.7, PAPERISH)
        xs = np.linspace(0.0, 5.0, 21)
        assert np.array_equal(density(state, xs), density(state, -xs))
        assert np.all(density(state, xs) >= 0.0)


class TestKernelIntegralOracle:
    def test_static_squeeze(self):
        m = squeeze_matrix(SqueezeParams(0.5, math.pi / 3), UNIT)
        assert abs(m.b) > 0.1
        ell = UNIT.proper_length
        xs = [0.0, ell, -ell, 2 * ell, -2 * ell]
        assert verify_against_integral_rep(m, UNIT, xs) <= 1e-6

    def test_quarter_turn_on_vacuum(self):
        t = (math.pi / 2) / PAPERISH.angular_frequency
        m = evolution_matrix(t, PAPERISH)
        ell = PAPERISH.proper_length
        assert verify_against_integral_rep(m, PAPERISH, [0.0, ell, 2 * ell]) <= 1e-6

    def test_composed_matrix(self):
        m = compose(evolution_matrix(1.3, PAPERISH),
                    squeeze_matrix(SqueezeParams(1.0, 2.0), PAPERISH))
        ell = PAPERISH.proper_length
        assert verify_against_integral_rep(m, PAPERISH, [0.0, -ell, 1.5 * ell]) <= 1e-6

    def test_rejects_b_zero(self):
        m = squeeze_matrix(SqueezeParams(0.5, 0.0), UNIT)
        assert m.b == 0.0
        with pytest.raises(ValueError):
            verify_against_integral_rep(m, UNIT, [0.0])


class TestThermalSampling:
    def test_vacuum_variance(self):
        draws = sample_initial_conditions(vacuum_state(UNIT), 100_000, seed=1)
        assert draws.var() == pytest.approx(0.5, rel=0.02)

    def test_deterministic(self):
        a = sample_initial_conditions(vacuum_state(UNIT), 1000, seed=9)
        b = sample_initial_conditions(vacuum_state(UNIT), 1000, seed=9)
        assert np.array_equal(a, b)

    def test_squeezed_variance(self):
        state = state_from_matrix(squeeze_matrix(SqueezeParams(1.0, 0.0), UNIT), UNIT)
        draws = sample_initial_conditions(state, 100_000, seed=2)
        assert draws.var() == pytest.approx(math.exp(-2.0) / 2.0, rel=0.02)

    def test_rejects_empty_request(self):
        with pytest.raises(ValueError):
            sample_initial_conditions(vacuum_state(UNIT), 0, seed=0)
