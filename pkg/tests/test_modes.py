"""Oscillation-mode algebra: Legendre pairs, spectra, normalization, kinematics."""

import math

import numpy as np
import pytest
from scipy.special import lpmv

from microswim.errors import InvalidParameterError
from microswim.modes import (
    Mode,
    ModeSpectrum,
    legendre_pair,
    normalize_spectrum,
    optimal_spectrum,
    quasistatic_validity,
    surface_state,
)
from microswim.scenarios import HIGH, LOW


def brute_force_legendre(n, x):
    """P_n from the explicit coefficient sum: 2^-n sum_k C(n,k)^2 (x-1)^(n-k) (x+1)^k."""
    total = 0.0
    for k in range(n + 1):
        total += math.comb(n, k) ** 2 * (x - 1.0) ** (n - k) * (x + 1.0) ** k
    return total / 2.0 ** n


class TestLegendrePair:
    def test_endpoint(self):
        P, V = legendre_pair(2, 1.0)
        assert P == 1.0
        assert V == 0.0

    def test_p2_at_zero(self):
        # P_2^1(x) = -3 x sqrt(1-x^2) vanishes at x=0, P_2(0) = -1/2.
        P, V = legendre_pair(2, 0.0)
        assert P == pytest.approx(-0.5)
        assert V == pytest.approx(0.0, abs=1e-15)

    def test_against_explicit_polynomial(self):
        for n in (3, 7, 10):
            for x in (-0.9, -0.3, 0.5, 0.77):
                P, _ = legendre_pair(n, x)
                assert P == pytest.approx(brute_force_legendre(n, x), rel=1e-12)

    def test_n10_at_half(self):
        P, V = legendre_pair(10, 0.5)
        assert P == pytest.approx(-0.18822860, rel=1e-7)
        # V_n through scipy's associated Legendre (Condon-Shortley phase)
        assert V == pytest.approx(lpmv(1, 10, 0.5) / 11.0, rel=1e-12)

    def test_matches_scipy_over_range(self):
        x = np.linspace(-1.0, 1.0, 41)
        for n in (2, 5, 12, 20):
            P, V = legendre_pair(n, x)
            assert np.allclose(P, lpmv(0, n, x), rtol=1e-11, atol=1e-13)
            assert np.allclose(V, lpmv(1, n, x) / (n + 1.0), rtol=1e-11, atol=1e-12)

    def test_domain_error(self):
        with pytest.raises(InvalidParameterError):
            legendre_pair(3, 1.5)


class TestOptimalSpectrum:
    def test_k10_p10_first_mode(self):
        spec = optimal_spectrum(10, 10)
        m = spec.modes[0]
        assert m.n == 10
        assert m.A == pytest.approx((1 + math.sqrt(2)) * math.sin(math.pi / 12), rel=1e-12)
        assert m.A == pytest.approx(0.6249, rel=1e-4)
        assert m.B == pytest.approx(0.2588, rel=1e-4)
        assert m.gamma == 0.0

    def test_k2_p0_single_mode(self):
        spec = optimal_spectrum(2, 0)
        assert len(spec.modes) == 1
        m = spec.modes[0]
        assert m.A == pytest.approx(1 + math.sqrt(2), rel=1e-12)
        assert m.gamma == 0.0

    def test_amplitude_ratio_constant(self):
        for k, p in [(2, 0), (4, 2), (10, 10)]:
            for m in optimal_spectrum(k, p).modes:
                assert m.A / m.B == pytest.approx(1 + math.sqrt(2), rel=1e-12)

    def test_phases_step_by_quarter_period(self):
        spec = optimal_spectrum(10, 10)
        for j, m in enumerate(spec.modes, start=1):
            assert m.gamma == pytest.approx(-0.5 * math.pi * (j - 1))
            assert m.eta == m.gamma

    def test_invalid_orders(self):
        with pytest.raises(InvalidParameterError):
            optimal_spectrum(1, 3)
        with pytest.raises(InvalidParameterError):
            Mode(n=1, A=1.0, B=1.0, gamma=0.0, eta=0.0)
        with pytest.raises(InvalidParameterError):
            ModeSpectrum((Mode(2, 1, 1, 0, 0), Mode(2, 1, 0, 0, 0)),
                         epsilon=0.05, omega=1.0)


class TestSurfaceState:
    def test_zero_epsilon_is_rest(self):
        spec = optimal_spectrum(10, 10, epsilon=0.0)
        for vt in (0.3, 1.2, 2.8):
            st = surface_state(spec, a=1e-6, vartheta=vt, t=1.7e-4)
            assert st.r == 1e-6
            assert st.theta == vt
            assert st.velocity == (0.0, 0.0)

    def test_pole_has_no_tangential_displacement(self):
        spec = normalize_spectrum(optimal_spectrum(10, 10), a=1e-6)
        for t in np.linspace(0.0, 5e-4, 7):
            st = surface_state(spec, a=1e-6, vartheta=0.0, t=t)
            assert st.theta == pytest.approx(0.0, abs=1e-15)

    def test_velocity_is_time_derivative_of_position(self):
        spec = normalize_spectrum(optimal_spectrum(10, 10), a=1e-6)
        period = 2 * math.pi / spec.omega
        h = 1e-6 * period
        rng = np.random.default_rng(5)
        for _ in range(5):
            vt = rng.uniform(0.2, math.pi - 0.2)
            t = rng.uniform(0.0, period)

            def pos(tt):
                st = surface_state(spec, 1e-6, vt, tt)
                return np.array([st.r * math.sin(st.theta), st.r * math.cos(st.theta)])

            st = surface_state(spec, 1e-6, vt, t)
            v_num = (pos(t + h) - pos(t - h)) / (2 * h)
            sin_t, cos_t = math.sin(st.theta), math.cos(st.theta)
            v_r, v_t = st.velocity
            v_ana = np.array([v_r * sin_t + v_t * cos_t, v_r * cos_t - v_t * sin_t])
            assert np.allclose(v_num, v_ana, rtol=1e-5, atol=1e-12)


class TestNormalizeSpectrum:
    def test_scale_invariance(self):
        spec = optimal_spectrum(10, 10)
        doubled = spec.scaled(2.0)
        n1 = normalize_spectrum(spec, a=1e-6)
        n2 = normalize_spectrum(doubled, a=1e-6)
        for m1, m2 in zip(n1.modes, n2.modes):
            assert m1.A == pytest.approx(m2.A, rel=1e-9)
            assert m1.B == pytest.approx(m2.B, rel=1e-9)

    def test_peak_linear_displacement_equals_a_eps(self):
        spec = normalize_spectrum(optimal_spectrum(10, 10), a=1e-6)
        from microswim.modes import _linear_displacement

        mu = np.cos(np.linspace(1e-3, math.pi - 1e-3, 4001))
        peak = max(
            float(np.max(_linear_displacement(spec, mu, tau)))
            for tau in np.linspace(0, 2 * math.pi, 512, endpoint=False)
        )
        assert peak == pytest.approx(1.0, rel=1e-4)

    def test_max_chord_displacement_near_50nm(self):
        # a = 1 um, eps = 0.05: the largest excursion of any material point
        # is 0.05 um (chord metric agrees to O(eps)).
        a = 1e-6
        spec = normalize_spectrum(optimal_spectrum(10, 10, epsilon=0.05), a=a)
        period = 2 * math.pi / spec.omega
        best = 0.0
        best_vt = 0.0
        for vt in np.linspace(0.0, math.pi, 801):
            for t in np.linspace(0.0, period, 128, endpoint=False):
                st = surface_state(spec, a, vt, t)
                dx = st.r * math.sin(st.theta) - a * math.sin(vt)
                dz = st.r * math.cos(st.theta) - a * math.cos(vt)
                d = math.hypot(dx, dz)
                if d > best:
                    best, best_vt = d, vt
        assert best == pytest.approx(0.05e-6, rel=0.02)
        # the largest motion happens near the equator
        assert abs(best_vt - math.pi / 2) < 0.3

    def test_single_radial_mode_peaks_at_pole(self):
        spec = ModeSpectrum((Mode(2, 1.0, 0.0, 0.0, 0.0),), epsilon=0.03, omega=100.0)
        norm = normalize_spectrum(spec, a=1e-6)
        # |P_2| attains its maximum of 1 at the poles, so A_2 -> 1.
        assert norm.modes[0].A == pytest.approx(1.0, rel=1e-6)
        st = surface_state(norm, 1e-6, 0.0, 0.0)
        assert abs(st.r - 1e-6) == pytest.approx(0.03e-6, rel=1e-6)

    def test_all_zero_rejected(self):
        spec = ModeSpectrum((Mode(2, 0.0, 0.0, 0.0, 0.0),), epsilon=0.05, omega=1.0)
        with pytest.raises(InvalidParameterError):
            normalize_spectrum(spec, a=1e-6)


class TestQuasistaticValidity:
    def test_low_scenario_2khz(self):
        chk = quasistatic_validity(LOW, 2 * math.pi * 2000.0)
        assert chk.delta == pytest.approx(12.6e-6, rel=5e-3)
        assert chk.womersley == pytest.approx(0.112, rel=5e-3)
        # paper-rounded values
        assert chk.delta == pytest.approx(13e-6, rel=0.15)
        assert chk.womersley == pytest.approx(0.1, rel=0.15)

    def test_high_scenario_20hz(self):
        chk = quasistatic_validity(HIGH, 2 * math.pi * 20.0)
        assert chk.delta == pytest.approx(13000e-6, rel=0.15)
        assert chk.womersley == pytest.approx(1e-4, rel=0.15)

    def test_sqrt_scaling(self):
        c1 = quasistatic_validity(LOW, 1000.0)
        c2 = quasistatic_validity(LOW, 4000.0)
        assert c2.delta == pytest.approx(c1.delta / 2.0, rel=1e-12)
        assert c2.womersley == pytest.approx(2.0 * c1.womersley, rel=1e-12)


class TestSerialization:
    def test_json_round_trip(self):
        spec = normalize_spectrum(optimal_spectrum(4, 2), a=1e-6)
        back = ModeSpectrum.from_json(spec.to_json())
        assert back.epsilon == spec.epsilon
        assert back.omega == spec.omega
        for m1, m2 in zip(back.modes, spec.modes):
            assert m1 == m2
        # normalization flag is not serialized state
        assert not back.normalized
