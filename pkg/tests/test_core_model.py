import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superradiant import (
    ModelParams,
    QuadratureSpec,
    curvature_at_origin,
    dicke_limit_omega,
    dispersion,
    effective_field,
    free_energy_integral,
    omega,
    omega_prime,
    omega_second,
)
from superradiant.core_model import logcosh
from superradiant.errors import DomainError, QuadratureError

# working parameter window
window = st.builds(
    ModelParams,
    lam=st.floats(0.5, 1.5),
    epsilon=st.floats(0.2, 2.0),
    j_coupling=st.floats(0.1, 0.6),
    beta=st.sampled_from([1.0, 10.0, 100.0]),
)


def dense_k_average(params, x, n=2 ** 16):
    """Brute-force uniform k-sum of log cosh(beta xi_k / 2) over [0, 2pi)."""
    J = params.j_coupling
    g = math.sqrt((params.lam * x / J) ** 2 + (params.epsilon / (2 * J)) ** 2)
    k = 2 * np.pi * np.arange(n) / n
    xi = 2 * J * np.sqrt(1 + g * g + 2 * g * np.cos(k))
    y = 0.5 * params.beta * xi
    return float(np.mean(y + np.log1p(np.exp(-2 * y)) - math.log(2)))


class TestParams:
    @pytest.mark.parametrize("kwargs", [
        dict(lam=1, epsilon=1, j_coupling=1, beta=0),
        dict(lam=-1, epsilon=1, j_coupling=1, beta=1),
        dict(lam=1, epsilon=-0.1, j_coupling=1, beta=1),
        dict(lam=1, epsilon=1, j_coupling=-1, beta=1),
        dict(lam=float("nan"), epsilon=1, j_coupling=1, beta=1),
        dict(lam=1, epsilon=1, j_coupling=1, beta=float("inf")),
    ])
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(ValueError):
            ModelParams(**kwargs)

    @pytest.mark.parametrize("kwargs", [
        dict(panels=8), dict(abs_tol=0.0), dict(panels=32, max_panels=16), dict(panels=16.5),
    ])
    def test_quadrature_spec_invariants(self, kwargs):
        with pytest.raises(ValueError):
            QuadratureSpec(**kwargs)


class TestEffectiveField:
    def test_vanishes_without_splitting_at_origin(self):
        assert effective_field(ModelParams(0.9, 0.0, 1.0, 10.0), 0.0) == 0.0

    def test_x_independent_without_coupling(self):
        p = ModelParams(0.0, 1.0, 0.5, 10.0)
        assert np.all(effective_field(p, np.array([-3.0, 0.0, 0.2, 7.0])) == 1.0)

    def test_reference_point(self, ref_params):
        expected = math.sqrt((1.3 * 0.5 / 0.5) ** 2 + (1.0 / (2 * 0.5)) ** 2)
        assert effective_field(ref_params, 0.5) == pytest.approx(math.sqrt(2.69), rel=1e-15)
        assert effective_field(ref_params, 0.5) == pytest.approx(expected, rel=1e-15)

    def test_even_and_bounded_below(self, ref_params):
        x = np.linspace(0, 2, 21)
        assert np.array_equal(effective_field(ref_params, x), effective_field(ref_params, -x))
        assert np.all(effective_field(ref_params, x) >= ref_params.epsilon / (2 * ref_params.j_coupling))

    def test_zero_coupling_is_domain_error(self):
        with pytest.raises(DomainError):
            effective_field(ModelParams(1.0, 1.0, 0.0, 1.0), 0.3)
        with pytest.raises(DomainError):
            dispersion(ModelParams(1.0, 1.0, 0.0, 1.0), 0.3, 0.0)


class TestDispersion:
    def test_flat_band(self):
        p = ModelParams(0.0, 0.0, 0.35, 1.0)
        k = np.linspace(0, 2 * np.pi, 17)
        np.testing.assert_allclose(dispersion(p, 0.4, k), 0.7, rtol=1e-15)

    def test_gap_closes_at_unit_field(self):
        p = ModelParams(0.0, 1.0, 0.5, 1.0)  # g = 1
        assert dispersion(p, 0.0, math.pi) == pytest.approx(0.0, abs=1e-15)

    def test_reference_point(self, ref_params):
        assert dispersion(ref_params, 0.5, math.pi / 2) == pytest.approx(math.sqrt(3.69), rel=1e-14)

    def test_matches_two_by_two_mode_hamiltonian(self, ref_params):
        # per-mode Bogoliubov block 2J[(g + cos k) tau_z + sin k tau_y]
        g = effective_field(ref_params, 0.37)
        J = ref_params.j_coupling
        for k in np.linspace(0, 2 * np.pi, 13):
            block = 2 * J * np.array([[g + np.cos(k), -1j * np.sin(k)],
                                      [1j * np.sin(k), -(g + np.cos(k))]])
            top = np.linalg.eigvalsh(block)[-1]
            assert dispersion(ref_params, 0.37, k) == pytest.approx(top, rel=1e-13)

    def test_endpoints_and_symmetry(self, ref_params):
        g = effective_field(ref_params, 0.2)
        J = ref_params.j_coupling
        assert dispersion(ref_params, 0.2, 0.0) == pytest.approx(2 * J * (1 + g), rel=1e-15)
        assert dispersion(ref_params, 0.2, math.pi) == pytest.approx(2 * J * abs(1 - g), rel=1e-12)
        k = np.linspace(0, 2 * np.pi, 33)
        np.testing.assert_allclose(dispersion(ref_params, 0.2, k),
                                   dispersion(ref_params, -0.2, 2 * np.pi - k), rtol=1e-13)

    @settings(max_examples=50, deadline=None)
    @given(window, st.floats(-2, 2))
    def test_bounds(self, params, x):
        g = effective_field(params, x)
        J = params.j_coupling
        xi = dispersion(params, x, np.linspace(0, 2 * np.pi, 257))
        assert np.all(xi >= 2 * J * abs(1 - g) - 1e-12)
        assert np.all(xi <= 2 * J * (1 + g) + 1e-12)


class TestFreeEnergyIntegral:
    # frozen from dense_k_average(ModelParams(1.3, 1, 0.5, 100), 0.4)
    DENSE_VALUE = 80.40862048736189

    def test_reference_point_against_dense_sum(self, ref_params, quad):
        assert dense_k_average(ref_params, 0.4) == pytest.approx(self.DENSE_VALUE, abs=1e-10)
        assert free_energy_integral(ref_params, 0.4, quad) == pytest.approx(self.DENSE_VALUE, abs=1e-8)

    def test_independent_of_x_without_coupling(self, quad):
        p = ModelParams(0.0, 0.7, 0.3, 100.0)
        vals = free_energy_integral(p, np.array([0.0, 0.5, 2.0]), quad)
        assert np.ptp(vals) == 0.0

    def test_flat_band_closed_form(self, quad):
        p = ModelParams(0.0, 0.0, 0.4, 3.0)
        assert free_energy_integral(p, 1.0, quad) == pytest.approx(logcosh(3.0 * 0.4), abs=1e-13)

    @settings(max_examples=25, deadline=None)
    @given(window, st.floats(0, 1))
    def test_matches_dense_sum(self, params, x):
        assert free_energy_integral(params, x) == pytest.approx(dense_k_average(params, x), abs=1e-8)

    def test_quadrature_converges_on_panel_doubling(self):
        # fixed panels (no adaptivity): errors shrink >= 4x per doubling away from g = 1
        from superradiant._quadrature import GL_ORDER, _NODES, _WEIGHTS
        p = ModelParams(0.8, 0.6, 0.4, 10.0)  # g(0.3) ~ 0.9
        g = effective_field(p, 0.3)
        exact = dense_k_average(p, 0.3)

        def fixed(panels):
            edges = np.linspace(0, np.pi, panels + 1)
            mid, half = 0.5 * (edges[1:] + edges[:-1]), 0.5 * np.diff(edges)
            k = (mid[:, None] + half[:, None] * _NODES).ravel()
            xi = 2 * p.j_coupling * np.sqrt(1 + g * g + 2 * g * np.cos(k))
            f = logcosh(0.5 * p.beta * xi).reshape(panels, GL_ORDER)
            return float((f @ _WEIGHTS * half).sum() / np.pi)

        errs = [abs(fixed(n) - exact) for n in (1, 2, 4)]
        assert errs[0] / errs[1] >= 4 and errs[1] / errs[2] >= 4

    def test_panel_cap_raises(self):
        # beta = 1e4 at g = 1: the gap-closing region is too narrow for 32 panels
        p = ModelParams(1.3, 1.0, 0.5, 1e4)
        with pytest.raises(QuadratureError):
            free_energy_integral(p, 0.0, QuadratureSpec(panels=16, abs_tol=1e-12, max_panels=32))

    def test_dicke_limit_consistency(self, quad):
        p = ModelParams(1.3, 1.0, 1e-6, 100.0)
        for x in (0.0, 0.3, 0.8):
            assert free_energy_integral(p, x, quad) == pytest.approx(
                dicke_limit_omega(p, x) + p.beta * x * x, abs=1e-4)


class TestOmega:
    def test_origin_value(self, ref_params, quad):
        assert omega(ref_params, 0.0, quad) == free_energy_integral(ref_params, 0.0, quad)

    def test_quadratic_dominates_far_out(self, ref_params, quad):
        x_big = 10 * (ref_params.lam / 2 + 1) * max(1, 1 / ref_params.beta)
        assert omega(ref_params, x_big, quad) < omega(ref_params, 0.0, quad)
        assert omega(ref_params, -x_big, quad) < omega(ref_params, 0.0, quad)

    @settings(max_examples=30, deadline=None)
    @given(window, st.floats(-3, 3))
    def test_even(self, params, x):
        w = omega(params, np.array([x, -x]))
        assert abs(w[0] - w[1]) < 1e-12

    def test_multiwell_shape_at_reference_point(self, quad):
        # lambda = 1.3, beta = 100, J = 0.5, eps = 0.8: humps at 0 and at x ~ 0.48
        p = ModelParams(1.3, 0.8, 0.5, 100.0)
        x = np.linspace(0, 1.0, 1001)
        w = omega(p, x, quad)
        interior = np.flatnonzero((w[1:-1] > w[:-2]) & (w[1:-1] > w[2:])) + 1
        assert w[0] > w[1]  # maximum at the origin
        assert len(interior) == 1 and 0.4 < x[interior[0]] < 0.55

    def test_zero_coupling_routes_to_dicke(self, quad):
        p = ModelParams(1.1, 0.9, 0.0, 20.0)
        x = np.linspace(-1, 1, 11)
        np.testing.assert_array_equal(omega(p, x, quad), dicke_limit_omega(p, x))


class TestDerivatives:
    def test_prime_vanishes_at_origin(self, quad):
        for p in (ModelParams(1.3, 1.0, 0.5, 100.0), ModelParams(0.9, 0.0, 0.3, 10.0),
                  ModelParams(1.0, 1.0, 0.0, 10.0)):
            assert omega_prime(p, 0.0, quad) == 0.0

    def test_prime_against_central_difference(self, ref_params, quad):
        h = 1e-5
        lo, hi = omega(ref_params, np.array([0.3 - h, 0.3 + h]), quad)
        fd = (hi - lo) / (2 * h)
        assert abs(omega_prime(ref_params, 0.3, quad) - fd) / abs(fd) < 1e-6

    def test_prime_is_odd(self, ref_params, quad):
        x = np.linspace(0.05, 1.5, 12)
        np.testing.assert_allclose(omega_prime(ref_params, -x, quad),
                                   -omega_prime(ref_params, x, quad), rtol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(window, st.floats(0.05, 1.2))
    def test_second_against_difference_of_prime(self, params, x):
        h = 1e-6
        d = omega_prime(params, np.array([x - h, x + h]))
        fd = (d[1] - d[0]) / (2 * h)
        c = omega_second(params, x)
        assert abs(c - fd) <= 1e-5 * max(1.0, abs(c))

    def test_curvature_without_coupling(self, quad):
        p = ModelParams(0.0, 1.0, 0.4, 7.0)
        assert curvature_at_origin(p, quad) == pytest.approx(-14.0, rel=1e-14)

    @pytest.mark.parametrize("params", [
        ModelParams(1.3, 1.0, 0.5, 100.0),
        ModelParams(1.3, 0.0, 0.5, 100.0),  # g(0) = 0 series branch
        ModelParams(0.9, 0.3, 0.15, 10.0),
        ModelParams(1.2, 1.12, 0.56, 100.0),  # g(0) = 1, gap closed at the origin
    ])
    def test_curvature_against_second_difference(self, params, quad):
        h = 1e-4
        w = omega(params, np.array([-h, 0.0, h]), quad)
        fd = (w[0] - 2 * w[1] + w[2]) / h ** 2
        assert curvature_at_origin(params, quad) == pytest.approx(fd, rel=1e-4)

    def test_small_g_series_is_continuous(self, quad):
        a = curvature_at_origin(ModelParams(1.0, 0.0, 0.3, 5.0), quad)
        b = curvature_at_origin(ModelParams(1.0, 1e-5, 0.3, 5.0), quad)
        assert a == pytest.approx(b, rel=1e-8)

    def test_dicke_curvature_sign_change(self):
        # Omega_D''(0) = -2 beta + 2 beta lam^2 tanh(beta eps/2) / eps
        eps, beta = 1.0, 1.0
        lam_c = math.sqrt(eps / math.tanh(beta * eps / 2))
        assert lam_c == pytest.approx(1.471038209476101, rel=1e-15)
        below = omega_second(ModelParams(lam_c - 1e-6, eps, 0.0, beta), 0.0)
        above = omega_second(ModelParams(lam_c + 1e-6, eps, 0.0, beta), 0.0)
        assert below < 0 < above

    def test_dicke_limit_omega_at_origin(self):
        p = ModelParams(1.0, 0.8, 0.0, 3.0)
        assert dicke_limit_omega(p, 0.0) == pytest.approx(math.log(math.cosh(1.2)), rel=1e-15)

    def test_dicke_derivatives_against_differences(self):
        p = ModelParams(1.4, 0.9, 0.0, 20.0)
        h = 1e-5
        for x in (0.1, 0.5, 0.9):
            w = dicke_limit_omega(p, np.array([x - h, x, x + h]))
            assert omega_prime(p, x) == pytest.approx((w[2] - w[0]) / (2 * h), rel=1e-7)
            d = omega_prime(p, np.array([x - h, x + h]))
            assert omega_second(p, x) == pytest.approx((d[1] - d[0]) / (2 * h), rel=1e-6)


def test_logcosh_is_overflow_safe():
    y = np.array([0.0, 1e-3, 1.0, 30.0, 800.0, -800.0])
    out = logcosh(y)
    assert np.all(np.isfinite(out))
    np.testing.assert_allclose(out[:4], np.log(np.cosh(y[:4])), rtol=1e-13, atol=1e-15)
    assert out[4] == pytest.approx(800 - math.log(2), rel=1e-15)
