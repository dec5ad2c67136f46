import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.polynomial import chebyshev as npcheb
from scipy import integrate

from chebpe.chebyshev import (
    backward_transform,
    cgl_points,
    clenshaw,
    convolution_map,
    derivative_map,
    forward_transform,
)
from chebpe.errors import DimensionError, InvalidOrderError


def quadrature_coefficients(u, N):
    """u_k = 2/(pi c_k) int_0^pi u(cos th) cos(k th) dth, by adaptive quadrature."""
    out = []
    for k in range(N + 1):
        val, _ = integrate.quad(lambda th: u(np.cos(th)) * np.cos(k * th), 0, np.pi, limit=200)
        out.append(val * 2 / np.pi / (2 if k == 0 else 1))
    return np.array(out)


class TestGrid:
    def test_n2(self):
        np.testing.assert_array_equal(cgl_points(2).points, [1.0, 0.0, -1.0])

    def test_n4_node(self):
        assert cgl_points(4).points[1] == pytest.approx(0.7071067811865476, abs=1e-15)

    def test_symmetry_and_endpoints(self):
        for N in (10, 11, 64):
            x = cgl_points(N).points
            assert x[0] == 1.0 and x[-1] == -1.0
            np.testing.assert_array_equal(x + x[::-1], 0.0)
            assert np.all(np.diff(x) < 0)

    @pytest.mark.parametrize("N", [0, 1, -3, 2.5])
    def test_invalid_order(self, N):
        with pytest.raises(InvalidOrderError):
            cgl_points(N)


class TestTransforms:
    def test_constant(self):
        x = cgl_points(8).points
        np.testing.assert_allclose(forward_transform(np.ones_like(x)), np.eye(9)[0], atol=1e-15)

    def test_t2(self):
        x = cgl_points(4).points
        np.testing.assert_allclose(forward_transform(2 * x**2 - 1), [0, 0, 1, 0, 0], atol=1e-15)

    def test_cubic_matches_quadrature(self):
        x = cgl_points(4).points
        expected = quadrature_coefficients(lambda s: s**3, 4)
        np.testing.assert_allclose(expected, [0, 0.75, 0, 0.25, 0], atol=1e-12)
        np.testing.assert_allclose(forward_transform(x**3), expected, atol=1e-14)

    def test_smooth_function_matches_quadrature(self):
        # degree-N aliasing is below 1e-14 for exp at N=20
        x = cgl_points(20).points
        np.testing.assert_allclose(forward_transform(np.exp(x)), quadrature_coefficients(np.exp, 20), atol=1e-14)

    def test_backward_t1(self):
        g = cgl_points(7)
        np.testing.assert_allclose(backward_transform(np.eye(8)[1], g), g.points, atol=1e-15)

    def test_backward_constant(self):
        g = cgl_points(5)
        np.testing.assert_allclose(backward_transform(np.r_[3.5 - 1j, np.zeros(5)], g), 3.5 - 1j)

    def test_roundtrip_n16(self):
        g = cgl_points(16)
        rng = np.random.default_rng(3)
        c = rng.normal(size=4)
        vals = np.exp(c[0] * g.points) * np.cos(c[1] * g.points + c[2]) + 1j * np.sin(c[3] * g.points)
        back = backward_transform(forward_transform(vals, g), g)
        assert np.abs(back - vals).max() < 1e-12

    def test_complex_input(self):
        g = cgl_points(12)
        u = np.exp(1j * 3 * g.points)
        np.testing.assert_allclose(
            forward_transform(u), forward_transform(u.real) + 1j * forward_transform(u.imag), atol=1e-15
        )

    def test_real_input_has_negligible_imag_after_roundtrip(self):
        g = cgl_points(30)
        v = backward_transform(forward_transform(np.cosh(g.points).astype(complex)), g)
        assert np.abs(v.imag).max() < 1e-14

    def test_dimension_errors(self):
        with pytest.raises(DimensionError):
            forward_transform(np.ones(5), cgl_points(6))
        with pytest.raises(DimensionError):
            backward_transform(np.ones(5), cgl_points(6))

    def test_batched_rows(self):
        g = cgl_points(9)
        rows = np.vstack([g.points, g.points**2])
        np.testing.assert_allclose(forward_transform(rows)[1], forward_transform(g.points**2), atol=1e-15)


class TestDerivative:
    def test_structure(self):
        D = derivative_map(9)
        k, p = np.indices(D.shape)
        assert np.all(D[p <= k] == 0)
        assert np.all(D[(p + k) % 2 == 0] == 0)
        np.testing.assert_array_equal(D[0, 1::2], np.arange(1, 10, 2))  # half of 2p
        np.testing.assert_array_equal(D[1, 2::2], 2 * np.arange(2, 10, 2))

    def test_square(self):
        # x^2 = (T0 + T2)/2 -> 2x
        np.testing.assert_allclose(derivative_map(6) @ np.r_[0.5, 0, 0.5, 0, 0, 0, 0], np.r_[0, 2, 0, 0, 0, 0, 0])

    def test_constant(self):
        assert not np.any(derivative_map(5) @ np.eye(6)[0])

    def test_second_derivative_of_cubic(self):
        for N in (4, 7):
            u = np.zeros(N + 1)
            u[1], u[3] = 0.75, 0.25
            D = derivative_map(N)
            expected = np.zeros(N + 1)
            expected[1] = 6.0
            np.testing.assert_allclose(D @ D @ u, expected, atol=1e-13)

    def test_each_basis_polynomial_against_numpy(self):
        N = 24
        D = derivative_map(N)
        for k in range(N):
            exact = np.zeros(N + 1)
            d = npcheb.chebder(np.eye(N + 1)[k])
            exact[: d.size] = d
            np.testing.assert_allclose(D @ np.eye(N + 1)[k], exact, atol=1e-12)


class TestConvolution:
    def test_identity(self):
        np.testing.assert_array_equal(convolution_map(np.eye(7)[0]), np.eye(7))

    def test_t1_squared(self):
        C = convolution_map(np.eye(5)[1])
        np.testing.assert_allclose(C @ np.eye(5)[1], [0.5, 0, 0.5, 0, 0])

    def test_against_numpy_product(self):
        rng = np.random.default_rng(0)
        u = rng.normal(size=6) + 1j * rng.normal(size=6)
        v = rng.normal(size=6)
        full = npcheb.chebmul(u, v)
        np.testing.assert_allclose(convolution_map(v) @ u, full[:6], atol=1e-13)

    def test_pointwise_product(self):
        g = cgl_points(32)
        x = g.points
        u = forward_transform(np.sin(x))
        v = forward_transform(np.exp(x))
        got = backward_transform(convolution_map(v) @ u, g)
        assert np.abs(got - np.exp(x) * np.sin(x)).max() < 1e-10

    @settings(max_examples=30, deadline=None)
    @given(st.floats(-3, 3), st.integers(0, 2**31 - 1))
    def test_linearity(self, a, seed):
        rng = np.random.default_rng(seed)
        v, w = rng.normal(size=(2, 9)) + 1j * rng.normal(size=(2, 9))
        np.testing.assert_allclose(
            convolution_map(a * v + w), a * convolution_map(v) + convolution_map(w), atol=1e-12
        )

    def test_dimension(self):
        with pytest.raises(DimensionError):
            convolution_map(np.ones((2, 2)))


class TestClenshaw:
    def test_matches_numpy_chebval(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=15) + 1j * rng.normal(size=15)
        x = np.linspace(-1, 1, 37)
        np.testing.assert_allclose(clenshaw(a, x), npcheb.chebval(x, a), atol=1e-13)

    def test_batched(self):
        a = np.arange(12.0).reshape(2, 6)
        x = np.array([0.3, -0.7])
        out = clenshaw(a, x)
        assert out.shape == (2, 2)
        np.testing.assert_allclose(out[1], npcheb.chebval(x, a[1]))


class TestInvariants:
    @pytest.mark.parametrize("N", [2, 5, 16, 33, 64, 128])
    def test_roundtrip_spectrum(self, N):
        rng = np.random.default_rng(N)
        uh = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
        uh /= np.arange(1, N + 2)
        g = cgl_points(N)
        assert np.abs(forward_transform(backward_transform(uh, g)) - uh).max() <= 1e-12

    def test_spectral_decay(self):
        g = cgl_points(20)
        assert abs(forward_transform(np.exp(g.points))[-1]) < 1e-12

    def test_convolution_symmetry(self):
        g = cgl_points(32)
        u = forward_transform(np.cos(2 * g.points))
        v = forward_transform(1.0 / (2.0 + g.points))
        assert np.abs(convolution_map(v) @ u - convolution_map(u) @ v).max() <= 1e-10

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 128), st.integers(0, 2**31 - 1))
    def test_roundtrip_property(self, N, seed):
        rng = np.random.default_rng(seed)
        uh = (rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)) / np.arange(1, N + 2)
        g = cgl_points(N)
        assert np.abs(forward_transform(backward_transform(uh, g)) - uh).max() <= 1e-12
