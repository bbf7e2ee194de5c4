"""
A test suite for special functions and quadrature rules.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import eval_genlaguerre, eval_jacobi, gamma

from dunkl_pauli.entities import DunklParams, ParitySector
from dunkl_pauli.errors import AdmissibilityError, DomainError
from dunkl_pauli.specfun import (
    angular_norms,
    dunkl_angular_rule,
    jacobi_norm_sq,
    jacobi_P,
    laguerre_L,
    laguerre_L2,
    ln_gamma,
)


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (2.0, 0.0), (0.5, 0.5723649429247001), (10.0, np.log(362880.0))],
)
def test_ln_gamma(x, expected):
    assert ln_gamma(x) == pytest.approx(expected, abs=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, np.inf])
def test_ln_gamma_domain(x):
    with pytest.raises(DomainError):
        ln_gamma(x)


@given(st.floats(min_value=0.05, max_value=40.0))
def test_ln_gamma_duplication(x):
    left = ln_gamma(x) + ln_gamma(x + 0.5)
    right = (1 - 2 * x) * np.log(2.0) + 0.5 * np.log(np.pi) + ln_gamma(2 * x)
    assert left == pytest.approx(right, abs=1e-11 * max(1.0, abs(right)))


@pytest.mark.parametrize("n", [0, 1, 2, 5, 9])
@pytest.mark.parametrize("a, b", [(-0.5, -0.5), (0.3, -0.2), (1.2, 0.7)])
def test_jacobi_against_scipy(n, a, b):
    x = np.linspace(-1.0, 1.0, 21)
    result = jacobi_P(n, a, b, x)
    assert result.degree == n
    np.testing.assert_allclose(result.value, eval_jacobi(n, a, b, x), rtol=1e-12, atol=1e-12)


@given(
    n=st.integers(min_value=1, max_value=8),
    a=st.floats(min_value=-0.9, max_value=2.0),
    b=st.floats(min_value=-0.9, max_value=2.0),
    x=st.floats(min_value=-0.9, max_value=0.9),
)
def test_jacobi_derivative(n, a, b, x):
    step = 1e-6
    finite = (jacobi_P(n, a, b, x + step).value - jacobi_P(n, a, b, x - step).value) / (2 * step)
    assert jacobi_P(n, a, b, x).derivative == pytest.approx(finite, rel=1e-5, abs=1e-6)


def test_jacobi_scalar_in_scalar_out():
    assert isinstance(jacobi_P(3, 0.1, 0.2, 0.4).value, float)


@pytest.mark.parametrize("n", [0, 1, 3, 6])
@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.4, 3.5])
def test_laguerre_against_scipy(n, alpha):
    x = np.linspace(0.0, 12.0, 25)
    result = laguerre_L(n, alpha, x)
    np.testing.assert_allclose(
        result.value, eval_genlaguerre(n, alpha, x), rtol=1e-11, atol=1e-11
    )


@pytest.mark.parametrize("n, alpha", [(1, 0.5), (4, 1.4), (6, 2.0)])
def test_laguerre_derivatives(n, alpha):
    x = np.linspace(0.1, 8.0, 17)
    np.testing.assert_allclose(
        laguerre_L(n, alpha, x).derivative,
        -eval_genlaguerre(n - 1, alpha + 1, x),
        rtol=1e-11,
        atol=1e-11,
    )
    expected = eval_genlaguerre(n - 2, alpha + 2, x) if n >= 2 else np.zeros_like(x)
    np.testing.assert_allclose(laguerre_L2(n, alpha, x), expected, rtol=1e-11, atol=1e-11)


@pytest.mark.parametrize("n", [-1, 1.5])
def test_negative_or_fractional_degree(n):
    with pytest.raises(DomainError):
        laguerre_L(n, 0.0, 1.0)
    with pytest.raises(DomainError):
        jacobi_P(n, 0.0, 0.0, 0.5)


def test_laguerre_parameter_domain():
    with pytest.raises(DomainError):
        laguerre_L(2, -1.0, 1.0)


@pytest.mark.parametrize(
    "n, a, b", [(0, -0.5, -0.5), (0, 0.3, -0.2), (3, 0.3, -0.2), (5, 1.5, 0.5)]
)
def test_jacobi_norm_sq(n, a, b):
    value, _ = quad(
        lambda x: eval_jacobi(n, a, b, x) ** 2, -1.0, 1.0, weight="alg", wvar=(b, a)
    )
    assert jacobi_norm_sq(n, a, b) == pytest.approx(value, rel=1e-9)


def test_constant_mode_norm_undeformed():
    first, second = angular_norms(ParitySector(), 0, DunklParams())
    assert first == pytest.approx(1 / np.sqrt(2 * np.pi), rel=1e-14)
    assert second == 0.0


@pytest.mark.parametrize(
    "sector, l",
    [(ParitySector(eps1=1, eps2=1), 0.5), (ParitySector(eps1=-1, eps2=1), 1.0)],
)
def test_angular_norms_lattice(sector, l):
    with pytest.raises(AdmissibilityError):
        angular_norms(sector, l, DunklParams(nu1=0.3, nu2=0.1))


@pytest.mark.parametrize("nu1, nu2", [(0.0, 0.0), (0.3, -0.3), (0.25, 0.25), (1.2, -0.4)])
def test_angular_rule_total_measure(nu1, nu2):
    phi, weights = dunkl_angular_rule(DunklParams(nu1=nu1, nu2=nu2), 6)
    assert phi.shape == weights.shape == (24,)
    expected = 2 * gamma(nu1 + 0.5) * gamma(nu2 + 0.5) / gamma(nu1 + nu2 + 1)
    assert weights.sum() == pytest.approx(expected, rel=1e-12)


def test_angular_rule_trigonometric_moment():
    params = DunklParams(nu1=0.3, nu2=0.6)

    def weighted(phi):
        measure = np.abs(np.cos(phi)) ** (2 * params.nu1) * np.abs(np.sin(phi)) ** (2 * params.nu2)
        return np.cos(phi) ** 4 * np.sin(phi) ** 2 * measure

    expected = sum(
        quad(weighted, low, low + np.pi / 2, limit=200)[0]
        for low in (-np.pi, -np.pi / 2, 0.0, np.pi / 2)
    )
    phi, weights = dunkl_angular_rule(params, 8)
    integrand = np.cos(phi) ** 4 * np.sin(phi) ** 2
    assert np.sum(weights * integrand) == pytest.approx(expected, rel=1e-7)
