"""Closed-form model quantities: spectrum, Bloch geometry, schedules, quadratures."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from adiasearch import DomainError, ModelParams, Schedule
from adiasearch import model
from adiasearch.validate import check_lemma1

S_GRID = np.linspace(0.0, 1.0, 41)


class TestGap:
    def test_endpoints_and_minimum(self):
        assert model.gap(0.0, 64) == 1.0
        assert model.gap(1.0, 64) == 1.0
        for n in (2, 16, 1024, 2 ** 24):
            assert model.gap(0.5, n) == pytest.approx(1.0 / math.sqrt(n), rel=1e-14)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.0, 1.0), st.integers(2, 2 ** 24))
    def test_floor_and_symmetry(self, s, n):
        g = model.gap(s, n)
        assert g >= (1.0 - 1e-12) / math.sqrt(n)
        assert g <= 1.0 + 1e-12
        assert g == pytest.approx(model.gap(1.0 - s, n), abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            model.gap(-0.01, 4)
        with pytest.raises(DomainError):
            model.gap(1.01, 4)
        with pytest.raises(DomainError):
            model.gap(0.5, 1)


class TestGroundBloch:
    def test_start_is_north_pole(self):
        for n in (2, 5, 4096):
            assert np.array_equal(model.ground_bloch(0.0, n), [0.0, 0.0, 1.0])

    def test_end_overlap(self):
        # angle between endpoints: cos = 2/n - 1
        for n in (2, 5, 64, 2 ** 20):
            q0 = model.ground_bloch(0.0, n)
            q1 = model.ground_bloch(1.0, n)
            assert float(q0 @ q1) == pytest.approx(2.0 / n - 1.0, abs=1e-12)

    def test_midpoint_value(self):
        for n in (2, 16, 625):
            q = model.ground_bloch(0.5, n)
            expect = [math.sqrt((n - 1.0) / n), 0.0, 1.0 / math.sqrt(n)]
            assert q == pytest.approx(expect, rel=1e-13)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.0, 1.0), st.integers(2, 2 ** 24))
    def test_unit_norm(self, s, n):
        assert np.linalg.norm(model.ground_bloch(s, n)) == pytest.approx(1.0, abs=1e-12)

    def test_overlap_strictly_decreasing(self):
        for n in (2, 3, 64):
            vals = [model.ground_overlap(float(s), n) for s in S_GRID]
            assert all(a > b for a, b in zip(vals, vals[1:]))
            # and ground_overlap is exactly the dot product with the start
            q0 = model.ground_bloch(0.0, n)
            for s in S_GRID:
                dot = float(model.ground_bloch(float(s), n) @ q0)
                assert dot == pytest.approx(model.ground_overlap(float(s), n), abs=1e-13)


class TestZCoupling:
    def test_peak_and_edges(self):
        for n in (2, 10, 4096):
            assert model.z_coupling(0.5, n) == pytest.approx(math.sqrt(n - 1.0), rel=1e-14)
            assert model.z_coupling(0.0, n) == pytest.approx(math.sqrt(n - 1.0) / n, rel=1e-14)

    def test_integral_below_half_pi(self):
        for n in (2, 16, 1024):
            val = quad(lambda s: model.z_coupling(s, n), 0.0, 1.0,
                       epsabs=0.0, epsrel=1e-12)[0]
            assert val <= math.pi / 2.0 + 1e-12

    def test_gap_squared_product_identity(self):
        for n in (2, 16, 2 ** 24):
            target = math.sqrt(n - 1.0) / n
            for s in S_GRID:
                prod = model.z_coupling(float(s), n) * model.gap(float(s), n) ** 2
                assert prod == pytest.approx(target, rel=1e-12)


class TestGamma:
    def test_special_exponents(self):
        for s in S_GRID:
            assert model.gamma(float(s), 64, 1.0) == model.gap(float(s), 64)
            assert model.gamma(float(s), 64, 0.0) == 1.0
        assert model.gamma(0.5, 16, 2.0) == pytest.approx(1.0 / 16.0, rel=1e-13)

    def test_negative_sigma_rejected(self):
        with pytest.raises(DomainError):
            model.gamma(0.5, 16, -0.1)
        with pytest.raises(DomainError):
            model.gamma_squared(0.5, 16, -1.0)

    def test_gamma_squared_consistent(self):
        for sigma in (0.0, 0.5, 1.0, 1.7):
            for s in (0.0, 0.3, 0.5, 0.9):
                assert model.gamma_squared(s, 100, sigma) == pytest.approx(
                    model.gamma(s, 100, sigma) ** 2, rel=1e-13)


class TestHamiltonianMatrix:
    def test_initial_matrix(self):
        assert np.array_equal(model.hamiltonian_matrix(0.0, 7), np.diag([-1.0, 0.0]))

    def test_eigenvalues(self):
        for n in (2, 16, 1000):
            for s in (0.1, 0.5, 0.77, 1.0):
                m = model.hamiltonian_matrix(s, n)
                assert np.allclose(m, m.T)
                delta = model.gap(s, n)
                np.testing.assert_allclose(np.linalg.eigvalsh(m),
                                           [-0.5 - delta / 2, -0.5 + delta / 2],
                                           atol=1e-12)

    def test_ground_vector_at_end(self):
        # closed-form ground eigenvector at s=1 is the marked state's coordinates
        for n in (2, 16, 100):
            e0, e1 = model.eigenvectors(1.0, n)
            np.testing.assert_allclose(
                e0, [1.0 / math.sqrt(n), math.sqrt((n - 1.0) / n)], atol=1e-12)
            # cross-check against a generic dense eigensolver
            w, vecs = np.linalg.eigh(model.hamiltonian_matrix(1.0, n))
            v = vecs[:, 0] * math.copysign(1.0, vecs[0, 0])
            np.testing.assert_allclose(e0, v, atol=1e-10)
            assert abs(float(e0 @ e1)) < 1e-12

    def test_eigenvectors_orthonormal_and_bloch_consistent(self):
        for n in (2, 8, 4096):
            for s in S_GRID:
                e0, e1 = model.eigenvectors(float(s), n)
                assert np.linalg.norm(e0) == pytest.approx(1.0, abs=1e-12)
                assert np.linalg.norm(e1) == pytest.approx(1.0, abs=1e-12)
                assert abs(float(e0 @ e1)) < 1e-12
                # Bloch vector of the ground eigenvector is ground_bloch
                q = model.ground_bloch(float(s), n)
                np.testing.assert_allclose(
                    [2 * e0[0] * e0[1], e0[0] ** 2 - e0[1] ** 2], [q[0], q[2]],
                    atol=1e-11)


class TestLocalSchedule:
    def test_inverse_endpoints(self):
        for n in (2, 64, 4096):
            assert model.local_schedule_inverse(0.0, n) == 0.0
            assert model.local_schedule_inverse(1.0, n) == 1.0
            assert model.local_schedule_inverse(0.5, n) == pytest.approx(0.5, abs=1e-15)

    def test_inverse_strictly_increasing(self):
        vals = [model.local_schedule_inverse(float(r), 256) for r in S_GRID]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_inverse_matches_quadrature(self):
        n = 256
        norm = quad(lambda r: model.gap(r, n) ** -2, 0.0, 1.0,
                    epsabs=0.0, epsrel=1e-13)[0]
        for r in np.arange(0.1, 0.95, 0.1):
            direct = quad(lambda t: model.gap(t, n) ** -2, 0.0, float(r),
                          epsabs=0.0, epsrel=1e-13)[0] / norm
            assert model.local_schedule_inverse(float(r), n) == pytest.approx(
                direct, abs=1e-10)

    def test_forward_endpoints_and_midpoint(self):
        for n in (2, 64):
            assert model.local_schedule(0.0, n) == 0.0
            assert model.local_schedule(1.0, n) == 1.0
            assert model.local_schedule(0.5, n) == pytest.approx(0.5, abs=1e-15)

    def test_round_trip(self):
        for r in np.linspace(0.0, 1.0, 101):
            back = model.local_schedule(model.local_schedule_inverse(float(r), 64), 64)
            assert back == pytest.approx(float(r), abs=1e-12)

    def test_norm_value_and_bound(self):
        assert model.schedule_norm(2) == pytest.approx(math.pi / 2.0, abs=1e-15)
        for n in (2, 64, 4096):
            assert model.schedule_norm(n) <= math.pi / 2.0 * n / math.sqrt(n - 1.0) + 1e-12

    def test_norm_matches_quadrature(self):
        n = 100
        val = quad(lambda r: model.gap(r, n) ** -2, 0.0, 1.0,
                   epsabs=0.0, epsrel=1e-13)[0]
        assert model.schedule_norm(n) == pytest.approx(val, abs=1e-10)


class TestCoefficients:
    def test_endpoints_exact(self):
        assert model.coefficients(0.0) == (1.0, 0.0)
        assert model.coefficients(1.0) == (0.0, 1.0)

    def test_balanced_point(self):
        a, b = model.coefficients(0.5)
        assert a == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-15)
        assert b == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-15)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.0, 1.0))
    def test_unit_circle(self, omega):
        a, b = model.coefficients(omega)
        assert a * a + b * b == pytest.approx(1.0, abs=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            model.coefficients(-0.1)
        with pytest.raises(DomainError):
            model.coefficients(1.1)


class TestQuadratures:
    def test_q_total_weight_flat(self):
        assert model.quadrature_q(1.0, 37, 0.0, Schedule.GLOBAL) == pytest.approx(
            1.0, abs=1e-12)

    def test_q_global_floor(self):
        for n in (4, 256):
            for sigma in (0.0, 0.5, 1.0, 2.0):
                for s in (0.2, 0.5, 0.9, 1.0):
                    q = model.quadrature_q(s, n, sigma, Schedule.GLOBAL)
                    assert q >= s * n ** -sigma * (1.0 - 1e-12)

    def test_q_local_floor(self):
        for n in (4, 64):
            norm = model.schedule_norm(n)
            for sigma in (1.0, 1.5, 2.0):
                for r in (0.25, 0.5, 1.0):
                    q = model.quadrature_q(r, n, sigma, Schedule.LOCAL)
                    assert q >= r / (norm * n ** (sigma - 1.0)) * (1.0 - 1e-12)

    def test_q_local_sigma_one_is_linear(self):
        n = 81
        norm = model.schedule_norm(n)
        for r in (0.3, 0.8):
            assert model.quadrature_q(r, n, 1.0, Schedule.LOCAL) == pytest.approx(
                r / norm, rel=1e-10)

    def test_r_cumulative_gap(self):
        for n in (4, 1024):
            assert model.quadrature_r(0.0, n) == 0.0
            r_half = model.quadrature_r(0.5, n)
            r_full = model.quadrature_r(1.0, n)
            assert 0.0 < r_half < r_full <= 1.0 + 1e-12
            assert r_full >= 1.0 / math.sqrt(n)

    def test_kappa_maps_corners(self):
        for n in (2, 16):
            root = math.sqrt(n - 1.0)
            assert model.kappa(-root, n) == pytest.approx(0.0, abs=1e-15)
            assert model.kappa(root, n) == pytest.approx(1.0, abs=1e-15)


class TestModelParams:
    def test_invariants(self):
        with pytest.raises(DomainError):
            ModelParams(1)
        with pytest.raises(DomainError):
            ModelParams(4, coeff_a=0.0, coeff_b=0.0)
        with pytest.raises(DomainError):
            ModelParams(4, sigma=-1.0)

    def test_from_omega_round_trip(self):
        for omega in (0.0, 0.25, 0.5, 0.9, 1.0):
            p = ModelParams.from_omega(16, omega)
            assert p.coeff_a ** 2 + p.coeff_b ** 2 == pytest.approx(1.0, abs=1e-15)
            assert p.omega == pytest.approx(omega, abs=1e-15)
        assert ModelParams.from_omega(16, 1.0).wide_open
        assert ModelParams.from_omega(16, 0.0).closed


def test_spectrum_bundle():
    for n in (2, 16, 2 ** 20):
        for s in (0.0, 0.3, 0.5, 1.0):
            sp = model.spectrum(s, n)
            assert sp.gap == model.gap(s, n)
            assert sp.e1 - sp.e0 == pytest.approx(sp.gap, rel=1e-14)
            assert sp.gap > 0
            assert sp.gap >= (1.0 - 1e-12) / math.sqrt(n)
            assert sp.d_helper == model.d_helper(s, n)
    assert model.spectrum(0.5, 64).gap == pytest.approx(0.125, rel=1e-14)


def test_planar_ordering_lemma():
    # pure geometric predicate over 10^4 random planar configurations
    result = check_lemma1(draws=10_000)
    assert result.passed, result.detail
