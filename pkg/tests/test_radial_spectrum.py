"""
A test suite for the radial indices, modes and matching at the flux tube.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from dunkl_pauli.entities import AbReport, DunklParams, FluxSpin, ParitySector
from dunkl_pauli.errors import (
    BranchError,
    ConsistencyError,
    ConstraintViolationError,
    DomainError,
    NormalizabilityError,
    QuadratureOrderError,
)
from dunkl_pauli.radial_spectrum import (
    build_mode,
    energy,
    k_minus,
    k_plus,
    matched_eval,
    matched_modes,
    matching_report,
    normalization,
    ode_residual,
    printed_energy,
    radial_eval,
    radial_expectations,
    sector_identity_check,
    spectrum_row,
)

EVEN = ParitySector(eps1=1, eps2=1)
ODD = ParitySector(eps1=-1, eps2=1)
SET_A = DunklParams(nu1=0.3, nu2=-0.3)
SET_A_FLUX = FluxSpin(vartheta=0.6, m_s=1)


@given(
    nu1=st.floats(min_value=-0.49, max_value=1.0),
    nu2=st.floats(min_value=-0.49, max_value=1.0),
    eps1=st.sampled_from([-1, 1]),
)
def test_sector_identity(nu1, nu2, eps1):
    sector = ParitySector(eps1=eps1, eps2=1)
    assert sector_identity_check(DunklParams(nu1=nu1, nu2=nu2), sector) <= 1e-14


def test_k_minus_set_a():
    assert k_minus(2.0, SET_A, EVEN) == pytest.approx(2.0)
    assert k_minus(2.0, SET_A, EVEN, m_s=1) == pytest.approx(2.0)


def test_k_minus_odd_sector():
    params = DunklParams(nu1=0.25, nu2=0.25)
    assert k_minus(1.5, params, ODD) == pytest.approx(1.5)
    # without the flux relation the radical keeps the deformation term
    assert k_minus(1.5, params, EVEN) == pytest.approx(np.sqrt(2.25 + 0.25))


def test_k_minus_branch():
    with pytest.raises(BranchError):
        k_minus(2.0, SET_A, EVEN, m_s=-1)


@pytest.mark.parametrize(
    "lam, flux, params, sector, expected",
    [
        (2.0, SET_A_FLUX, SET_A, EVEN, 1.4),
        (1.5, FluxSpin(vartheta=0.4, m_s=1), DunklParams(nu1=0.25, nu2=0.25), ODD, 1.1),
        (-2.0, FluxSpin(vartheta=-0.6, m_s=-1), SET_A, EVEN, 1.4),
        (2.0, FluxSpin(), DunklParams(nu1=0.3, nu2=0.1), EVEN, np.hypot(2, 0.4)),
    ],
)
def test_k_plus(lam, flux, params, sector, expected):
    assert k_plus(lam, flux, params, sector) == pytest.approx(expected, abs=1e-12)


def test_k_plus_constraint():
    with pytest.raises(ConstraintViolationError):
        k_plus(2.0, SET_A_FLUX, DunklParams(nu1=0.3, nu2=0.3), EVEN)


def test_k_plus_branch():
    with pytest.raises(BranchError):
        k_plus(-2.0, SET_A_FLUX, SET_A, EVEN)


def test_k_plus_normalizability():
    with pytest.raises(NormalizabilityError):
        k_plus(2.0, FluxSpin(vartheta=3.5, m_s=1), SET_A, EVEN)


@pytest.mark.parametrize("n, K, expected", [(0, 2.0, 3.0), (0, 1.4, 2.4), (1, 1.5, 4.5)])
def test_energy(n, K, expected):
    assert energy(n, K) == pytest.approx(expected)


@pytest.mark.parametrize("n, K", [(0, -1.0), (-1, 0.5)])
def test_energy_domain(n, K):
    with pytest.raises(DomainError):
        energy(n, K)


def test_energy_region_indices():
    assert energy(0, 2.0, SET_A_FLUX, 2.0) == pytest.approx(3.0)
    assert energy(0, 1.4, SET_A_FLUX, 2.0) == pytest.approx(2.4)
    with pytest.raises(ConsistencyError):
        energy(0, 1.0, SET_A_FLUX, 2.0)


@pytest.mark.parametrize(
    "n, lam, flux, region, expected",
    [
        (0, 2.0, SET_A_FLUX, "inner", 3.0),
        (0, 2.0, SET_A_FLUX, "outer", 3.6),
        (1, 1.5, FluxSpin(vartheta=0.4, m_s=1), "inner", 4.5),
    ],
)
def test_printed_energy(n, lam, flux, region, expected):
    assert printed_energy(n, lam, flux, region) == pytest.approx(expected)


def test_radial_eval_reference():
    mode = build_mode("outer", 0, 2.0)
    assert mode.norm_prefactor == pytest.approx(1.0)
    assert radial_eval(mode, 1.0) == pytest.approx(np.exp(-0.5), abs=1e-12)
    assert radial_eval(mode, 1.0) == pytest.approx(0.60653, abs=1e-5)


def test_build_mode_normalizability():
    with pytest.raises(NormalizabilityError):
        build_mode("inner", 0, -1.2)


@pytest.mark.parametrize("n, K", [(0, 0.5), (1, 1.4), (3, 2.0), (2, -0.4), (5, 3.5)])
def test_unit_norm(n, K):
    mode = build_mode("outer", n, K)
    value, _ = quad(
        lambda xi: radial_eval(mode, xi) ** 2, 0.0, np.inf, limit=200, epsabs=1e-13, epsrel=1e-12
    )
    assert normalization(n, K) == mode.norm_prefactor
    assert value == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("K", [0.5, 1.1, 1.4, 2.0, 3.5])
@pytest.mark.parametrize("n", range(6))
def test_ode_residual(n, K):
    xi = np.linspace(0.05, 8.0, 400)
    assert ode_residual(build_mode("outer", n, K), xi) <= 1e-9


def test_ode_residual_detects_wrong_energy():
    xi = np.linspace(0.05, 8.0, 400)
    assert ode_residual(build_mode("outer", 1, 1.4), xi, energy_shift=0.1) >= 1e-2


def test_matching_set_a():
    report = matching_report(2.0, SET_A_FLUX, SET_A, EVEN, R=1e-2, n=1)
    assert report.K_minus == pytest.approx(2.0)
    assert report.K_plus == pytest.approx(1.4)
    assert len(report.defects) == 4
    assert all(order >= 0.9 for order in report.orders)
    assert report.amplitude_ratio_leading[0] == pytest.approx(1e-2**0.6)


def test_matching_without_flux():
    report = matching_report(2.0, FluxSpin(), SET_A, EVEN)
    assert report.defects == pytest.approx([0.0] * 4)
    assert report.amplitude_ratio == pytest.approx([1.0] * 4)


def test_matching_violation():
    report = matching_report(2.0, SET_A_FLUX, DunklParams(nu1=0.3, nu2=0.3), EVEN)
    assert isinstance(report, AbReport)
    assert "nu1 = -nu2" in report.relation


@pytest.mark.parametrize("R", [0.0, 0.2])
def test_matching_radius(R):
    with pytest.raises(DomainError):
        matching_report(2.0, SET_A_FLUX, SET_A, EVEN, R=R)


@pytest.mark.parametrize("R", [1e-2, 1e-3])
@pytest.mark.parametrize("n", [0, 1, 3])
def test_matched_modes_continuous(n, R):
    inner, outer = matched_modes(n, 2.0, SET_A_FLUX, SET_A, EVEN, R_reg=R)
    assert (inner.region, outer.region) == ("inner", "outer")
    assert (inner.K, outer.K) == pytest.approx((2.0, 1.4))
    assert inner.norm_prefactor == normalization(n, 2.0)
    assert radial_eval(outer, R) == pytest.approx(radial_eval(inner, R), rel=1e-12)
    report = matching_report(2.0, SET_A_FLUX, SET_A, EVEN, R=R, n=n, halvings=0)
    ratio = outer.norm_prefactor / inner.norm_prefactor
    assert ratio == pytest.approx(report.amplitude_ratio[0], rel=1e-12)


def test_matched_ground_state_amplitude():
    inner, outer = matched_modes(0, 2.0, SET_A_FLUX, SET_A, EVEN, R_reg=1e-2)
    assert outer.norm_prefactor / inner.norm_prefactor == pytest.approx(1e-2**0.6, rel=1e-12)
    _, finer = matched_modes(0, 2.0, SET_A_FLUX, SET_A, EVEN, R_reg=1e-5)
    assert radial_eval(finer, 1.0) / radial_eval(outer, 1.0) == pytest.approx(1e-3**0.6)


def test_matched_eval_piecewise():
    R = 1e-2
    inner, outer = matched_modes(1, 2.0, SET_A_FLUX, SET_A, EVEN, R_reg=R)
    xi = np.array([R / 2, R, 1.0])
    values = matched_eval(inner, outer, xi)
    assert values[0] == pytest.approx(radial_eval(inner, R / 2))
    assert values[1] == pytest.approx(radial_eval(outer, R))
    assert values[2] == pytest.approx(radial_eval(outer, 1.0))
    assert values[2] != pytest.approx(radial_eval(inner, 1.0))


def test_matched_modes_without_flux():
    params = DunklParams(nu1=0.3, nu2=0.1)
    inner, outer = matched_modes(2, 2.0, FluxSpin(), params, EVEN)
    assert outer.K == inner.K
    assert outer.norm_prefactor == pytest.approx(inner.norm_prefactor, rel=1e-14)


def test_spectrum_row_set_a():
    row = spectrum_row(0, 1, 1, SET_A, EVEN, SET_A_FLUX)
    assert row["lambda"] == pytest.approx(2.0)
    assert row["K_minus"] == pytest.approx(2.0)
    assert row["K_plus"] == pytest.approx(1.4)
    assert row["E_minus"] == pytest.approx(3.0)
    assert row["E_plus"] == pytest.approx(2.4)
    assert row["E_minus"] - row["E_plus"] == pytest.approx(SET_A_FLUX.vartheta)
    assert row["E_plus_printed"] == pytest.approx(3.6)
    assert row["E_plus_discrepancy"] == pytest.approx(1.2)


@pytest.mark.parametrize("n", range(4))
def test_spectrum_row_without_flux(n):
    row = spectrum_row(n, 2, -1, DunklParams(nu1=0.4, nu2=0.1), EVEN, FluxSpin())
    assert row["E_plus"] == row["E_minus"]


@pytest.mark.parametrize("n, K", [(0, 0.5), (2, 1.4), (4, 2.0), (3, -0.3)])
def test_expectations_virial(n, K):
    mode = build_mode("outer", n, K)
    xi_sq, kappa = radial_expectations(mode)
    assert xi_sq == pytest.approx(mode.E, rel=1e-10)
    assert kappa == pytest.approx(mode.E, rel=1e-10)


def test_expectations_order():
    with pytest.raises(QuadratureOrderError):
        radial_expectations(build_mode("outer", 3, 1.0), order=4)
