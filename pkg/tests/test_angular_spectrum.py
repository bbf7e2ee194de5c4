"""
A test suite for angular eigenvalues, eigenfunctions and the flux gate.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from dunkl_pauli.angular_spectrum import (
    ab_constrain,
    angular_gram,
    angular_table,
    check_admissible,
    check_mode_parity,
    eval_Phi,
    lambda_of,
    make_mode,
    mode_battery,
    verify_mode,
)
from dunkl_pauli.entities import AbReport, AngularMode, DunklParams, ParitySector
from dunkl_pauli.errors import AdmissibilityError

EVEN = ParitySector(eps1=1, eps2=1)
ODD = ParitySector(eps1=-1, eps2=1)
PARAMETER_SETS = [(0.3, -0.3), (0.25, 0.25), (0.6, 0.15)]


@pytest.mark.parametrize(
    "sector, l, sign, nu1, nu2, expected",
    [
        (EVEN, 1, 1, 0.3, -0.3, 2.0),
        (EVEN, 2, -1, 0.3, -0.3, -4.0),
        (EVEN, 0, 1, 0.3, 0.2, 0.0),
        (ODD, 0.5, 1, 0.25, 0.25, 1.5),
        (ODD, 1.5, -1, 0.0, 0.0, -3.0),
        (EVEN, 1, 1, 0.5, 0.5, 2 * np.sqrt(2.0)),
    ],
)
def test_lambda(sector, l, sign, nu1, nu2, expected):
    assert lambda_of(sector, l, sign, DunklParams(nu1=nu1, nu2=nu2)) == pytest.approx(expected)


@pytest.mark.parametrize(
    "sector, l",
    [
        (EVEN, 0.5),
        (EVEN, -1),
        (ODD, 1.0),
        (ODD, 0.0),
        (ParitySector(eps1=-1, eps2=-1), 0),
    ],
)
def test_admissibility(sector, l):
    with pytest.raises(AdmissibilityError):
        check_admissible(sector, l)


def test_mode_rejects_wrong_eigenvalue():
    with pytest.raises(ValidationError):
        AngularMode(sector=EVEN, l=1, sign=1, lam=2.5, params=DunklParams(nu1=0.3, nu2=-0.3))


def test_mode_accepts_alias():
    mode = AngularMode(
        sector=EVEN, l=1, sign=1, **{"lambda": 2.0}, params=DunklParams(nu1=0.3, nu2=-0.3)
    )
    assert mode.lam == 2.0


def test_undeformed_plane_wave():
    mode = make_mode(EVEN, 1, 1, DunklParams())
    phi = np.linspace(-3.0, 3.0, 13)
    values = eval_Phi(mode, phi)
    np.testing.assert_allclose(np.abs(values), 1 / np.sqrt(2 * np.pi), rtol=1e-12)
    np.testing.assert_allclose(values / eval_Phi(mode, 0.0), np.exp(-2j * phi), atol=1e-12)


def test_constant_mode():
    mode = make_mode(EVEN, 0, 1, DunklParams(nu1=0.3, nu2=0.2))
    values = eval_Phi(mode, np.array([-1.0, 0.2, 2.0]))
    assert np.all(values == values[0])
    assert isinstance(eval_Phi(mode, 0.3), complex)


@pytest.mark.parametrize("nu1, nu2", PARAMETER_SETS)
@pytest.mark.parametrize("eps", [1, -1])
def test_eigen_residual(nu1, nu2, eps):
    for mode in mode_battery(DunklParams(nu1=nu1, nu2=nu2), eps, l_max=4):
        report = verify_mode(mode, N=256)
        assert report.passed, report.details


@pytest.mark.parametrize("eps", [1, -1])
def test_shifted_eigenvalue_fails(eps):
    mode = mode_battery(DunklParams(nu1=0.3, nu2=-0.3), eps, count=3)[-1]
    report = verify_mode(mode, N=256, lambda_shift=0.1)
    assert report.residual >= 1e-2
    assert not report.passed


@pytest.mark.parametrize(
    "sector, l",
    [
        (EVEN, 2),
        (ParitySector(eps1=-1, eps2=-1), 2),
        (ODD, 1.5),
        (ParitySector(eps1=1, eps2=-1), 1.5),
    ],
)
def test_both_leading_parities(sector, l):
    mode = make_mode(sector, l, -1, DunklParams(nu1=0.25, nu2=0.25))
    assert verify_mode(mode, N=128).passed
    assert check_mode_parity(mode, N=128).passed


@pytest.mark.parametrize("nu1, nu2", PARAMETER_SETS)
@pytest.mark.parametrize("eps", [1, -1])
def test_gram_orthonormality(nu1, nu2, eps):
    modes = mode_battery(DunklParams(nu1=nu1, nu2=nu2), eps, l_max=4)
    gram = angular_gram(modes)
    np.testing.assert_allclose(gram, np.eye(len(modes)), atol=1e-6)


def test_gram_mixed_parameters():
    modes = [
        make_mode(EVEN, 1, 1, DunklParams(nu1=0.3, nu2=-0.3)),
        make_mode(EVEN, 1, 1, DunklParams(nu1=0.2, nu2=0.1)),
    ]
    with pytest.raises(ValueError):
        angular_gram(modes)


def test_mode_battery_bounds():
    params = DunklParams(nu1=0.3, nu2=-0.3)
    with pytest.raises(ValueError):
        mode_battery(params, 1)
    modes = mode_battery(params, 1, count=5)
    assert [(mode.l, mode.sign) for mode in modes] == [(0, 1), (1, 1), (1, -1), (2, 1), (2, -1)]
    odd = mode_battery(params, -1, l_max=2.0)
    assert [mode.l for mode in odd] == [0.5, 0.5, 1.5, 1.5]


def test_ab_gate_accepts():
    params = DunklParams(nu1=0.3, nu2=-0.3)
    assert ab_constrain(EVEN, params) == params
    same = DunklParams(nu1=0.25, nu2=0.25)
    assert ab_constrain(ODD, same) == same


def test_ab_gate_rejects():
    params = DunklParams(nu1=0.3, nu2=0.3)
    report = ab_constrain(EVEN, params)
    assert isinstance(report, AbReport)
    assert not report.accepted
    assert report.residual == pytest.approx(0.6)
    assert "nu1 = -nu2" in report.relation


def test_angular_table():
    rows = angular_table(DunklParams(nu1=0.3, nu2=-0.3), 2.0, 128)
    assert {row["eps"] for row in rows} == {1, -1}
    assert all(row["passed"] for row in rows)
