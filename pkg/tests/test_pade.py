import mpmath
import numpy as np
import pytest

from chebpe.errors import InvalidOrderError, SingularityError
from chebpe.pade import (
    PadeSeries,
    compute_pade_series,
    evaluate_propagator,
    product_taylor,
    propagator_taylor,
    rational_factor,
)


def taylor_oracle(sigma, order):
    """Maclaurin coefficients by high-precision numerical differentiation."""
    with mpmath.workdps(40):
        f = lambda t: mpmath.exp(1j * sigma * (mpmath.sqrt(1 + t) - 1))  # noqa: E731
        return [complex(c) for c in mpmath.taylor(f, 0, order)]


def f_exact(sigma, t):
    return np.exp(1j * sigma * (np.sqrt(1 + t.astype(complex)) - 1))


def test_n1_closed_form():
    for sigma in (0.1, 1.0, 5.0):
        s = compute_pade_series(sigma, 1.0, 1)
        assert abs(s.alpha[0] - (1 + 1j * sigma) / 4) < 1e-12
        assert abs(s.beta[0] - (1 - 1j * sigma) / 4) < 1e-12


def test_n1_hand_taylor_terms():
    sigma = 0.7
    c = taylor_oracle(sigma, 2)
    assert c[1] == pytest.approx(1j * sigma / 2, abs=1e-14)
    assert c[2] == pytest.approx((-(sigma**2) - 1j * sigma) / 8, abs=1e-14)


def test_series_recurrence_matches_oracle():
    for sigma in (0.3, 2.0):
        got = [complex(c) for c in propagator_taylor(sigma, 10)]
        np.testing.assert_allclose(got, taylor_oracle(sigma, 10), rtol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 12])
def test_t0_gives_phase(n):
    s = compute_pade_series(0.08, 7.0, n)
    assert evaluate_propagator(s, 0.0) == np.exp(1j * s.sigma)


def test_first_order_sum():
    for n in (1, 3, 8):
        s = compute_pade_series(1.3, 1.0, n)
        assert abs(np.sum(s.alpha - s.beta) - 1j * 1.3 / 2) < 1e-10


def test_n4_sigma1_accuracy():
    s = compute_pade_series(1.0, 1.0, 4)
    t = np.linspace(-0.5, 0.5, 4001)
    assert np.abs(rational_factor(s, t) - f_exact(1.0, t)).max() < 1e-6


def test_unit_modulus_example1_step():
    k0 = 2 * np.pi * 20 / 1500
    s = compute_pade_series(k0, 5.0, 8)
    val = evaluate_propagator(s, -0.04)
    assert 0.999 < abs(val) < 1.001
    assert val == pytest.approx(np.exp(1j * s.sigma * np.sqrt(0.96)), abs=1e-10)


def test_zero_step_limit():
    s = compute_pade_series(1e-9, 1.0, 6)
    for t in (-0.9, -0.2, 0.5, 3.0):
        assert abs(evaluate_propagator(s, t) - 1) < 1e-8


@pytest.mark.parametrize("n", [1, 2, 4, 8])
@pytest.mark.parametrize("sigma", [0.1, 1.0, 5.0])
def test_taylor_matching(n, sigma):
    s = compute_pade_series(sigma, 1.0, n)
    got = np.array([complex(c) for c in product_taylor(s, 2 * n)])
    ref = np.array(taylor_oracle(sigma, 2 * n))
    assert np.max(np.abs(got - ref) / np.abs(ref)) <= 1e-8


@pytest.mark.parametrize("n", [4, 6, 8])
@pytest.mark.parametrize("sigma", [0.5, 2.0, 5.0])
def test_unit_modulus_on_band(n, sigma):
    s = compute_pade_series(sigma, 1.0, n)
    t = np.linspace(-0.5, 0.5, 1001)
    assert np.abs(np.abs(evaluate_propagator(s, t)) - 1).max() <= 1e-4


def test_order_degradation():
    t = np.linspace(-0.5, 0.5, 2001)
    errs = [np.abs(rational_factor(compute_pade_series(1.0, 1.0, n), t) - f_exact(1.0, t)).max()
            for n in (1, 2, 4, 8)]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_deterministic_and_sorted():
    a = compute_pade_series(0.42, 1.0, 8)
    b = compute_pade_series(0.42, 1.0, 8)
    np.testing.assert_array_equal(a.alpha, b.alpha)
    np.testing.assert_array_equal(a.beta, b.beta)
    assert np.all(np.diff(np.abs(a.alpha)) >= 0)
    assert np.all(np.diff(np.abs(a.beta)) >= 0)


@pytest.mark.parametrize("n", [0, 13, 2.5])
def test_invalid_n(n):
    with pytest.raises(InvalidOrderError):
        compute_pade_series(0.1, 1.0, n)


def test_pole_reports_term():
    s = PadeSeries(n=2, sigma=0.1, alpha=np.array([0.1, 0.2]), beta=np.array([0.1, 0.5]))
    with pytest.raises(SingularityError) as err:
        evaluate_propagator(s, -2.0)
    assert err.value.term == 2


def test_bad_step_parameters():
    with pytest.raises(ValueError):
        compute_pade_series(-1.0, 1.0, 2)
