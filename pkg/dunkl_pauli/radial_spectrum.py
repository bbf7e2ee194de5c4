"""
Radial problem of the invariant under an Aharonov-Bohm flux regularized at a
radius R: effective indices K- (inside) and K+ (outside), the flux constraint,
radial eigenfunctions, invariant eigenvalues and the matching at R.
"""

import numpy as np
from scipy.special import roots_genlaguerre

from .angular_spectrum import ab_constrain, lambda_of
from .entities import (
    AbReport,
    DeltaShift,
    DunklParams,
    FluxSpin,
    MatchingReport,
    ParitySector,
    RadialMode,
)
from .errors import (
    BranchError,
    ConsistencyError,
    ConstraintViolationError,
    DomainError,
    NormalizabilityError,
    QuadratureOrderError,
)
from .specfun import laguerre_L, laguerre_L2, ln_gamma

__all__ = [
    "sector_identity_check",
    "k_minus",
    "k_plus",
    "energy",
    "printed_energy",
    "normalization",
    "build_mode",
    "matched_modes",
    "matched_eval",
    "radial_eval",
    "radial_derivatives",
    "ode_residual",
    "matching_report",
    "spectrum_row",
    "radial_expectations",
]

CONSISTENCY_TOLERANCE = 1e-10


def sector_identity_check(params: DunklParams, sector: ParitySector) -> float:
    """|delta (delta - 1) - 2 nu1 nu2 (1 - eps) - ((nu1 + eps nu2)^2 - 1/4)|."""
    delta = DeltaShift.from_params(params).delta
    left = delta * (delta - 1) - 2 * params.nu1 * params.nu2 * (1 - sector.eps)
    right = (params.nu1 + sector.eps * params.nu2) ** 2 - 0.25
    return abs(left - right)


def k_minus(
    lam: float, params: DunklParams, sector: ParitySector, m_s: int | None = None
) -> float:
    """
    Inner index K- = sqrt(lambda^2 + (nu1 + eps nu2)^2).

    When `m_s` is given the branch K- = lambda / m_s is requested, which
    requires lambda m_s > 0 and coincides with the radical under the flux
    constraint.

    Raises
    ------
    BranchError
        If the branch is requested and lambda m_s <= 0.
    """
    radical = float(np.hypot(lam, params.nu1 + sector.eps * params.nu2))
    if m_s is None:
        return radical
    if lam * m_s <= 0:
        raise BranchError(
            f"the spin projection m_s={m_s} must share the sign of lambda={lam} "
            "for K- = lambda / m_s to be positive"
        )
    if isinstance(ab_constrain(sector, params), AbReport):
        return radical
    return lam / m_s


def k_plus(lam: float, flux: FluxSpin, params: DunklParams, sector: ParitySector) -> float:
    """
    Outer index K+ = K- - vartheta m_s, cross-checked against the direct radical
    sqrt((vartheta - lambda)^2 + (nu1 + eps nu2)^2 + 2 vartheta (nu1 eps1 + nu2 eps2) m_s).

    Without flux K+ = K- and no constraint applies.

    Raises
    ------
    ConstraintViolationError
        If vartheta != 0 and nu1 + eps nu2 != 0.
    BranchError
        If lambda m_s <= 0 with nonzero flux.
    NormalizabilityError
        If K+ <= -1.
    ConsistencyError
        If the two expressions for K+ differ by more than 1e-10.
    """
    if flux.vartheta == 0:
        return k_minus(lam, params, sector)
    gate = ab_constrain(sector, params)
    if isinstance(gate, AbReport):
        raise ConstraintViolationError(
            f"nonzero flux requires {gate.relation}; got nu1={params.nu1}, nu2={params.nu2}"
        )
    inner = k_minus(lam, params, sector, flux.m_s)
    outer = inner - flux.vartheta * flux.m_s
    if outer <= -1:
        raise NormalizabilityError(f"K+ = {outer} is not above -1")
    radicand = (
        (flux.vartheta - lam) ** 2
        + (params.nu1 + sector.eps * params.nu2) ** 2
        + 2 * flux.vartheta * (params.nu1 * sector.eps1 + params.nu2 * sector.eps2) * flux.m_s
    )
    direct = float(np.sqrt(max(radicand, 0.0)))
    if abs(direct - outer) > CONSISTENCY_TOLERANCE:
        raise ConsistencyError(
            f"K+ from the matching ({outer}) and from the outer radical ({direct}) disagree"
        )
    return outer


def energy(
    n: int, K: float, flux: FluxSpin | None = None, lam: float | None = None
) -> float:
    """
    Invariant eigenvalue E = 2n + K + 1 of a radial mode.

    Given `flux` and `lam` under a nonzero flux, K must be one of the region
    indices K- = lambda/m_s or K+ = K- - vartheta m_s.

    Raises
    ------
    DomainError
        If K <= -1 or n < 0.
    ConsistencyError
        If K matches neither region index.
    """
    if K <= -1:
        raise DomainError(f"K must exceed -1, got K={K}")
    if n < 0:
        raise DomainError(f"n must be nonnegative, got n={n}")
    if flux is not None and lam is not None and flux.vartheta != 0:
        inner = lam / flux.m_s
        outer = inner - flux.vartheta * flux.m_s
        if min(abs(K - inner), abs(K - outer)) > CONSISTENCY_TOLERANCE:
            raise ConsistencyError(
                f"K={K} is neither K-={inner} nor K+={outer} for lambda={lam}"
            )
    return 2 * n + K + 1


def printed_energy(n: int, lam: float, flux: FluxSpin, region: str) -> float:
    """
    The closed form 2n + 1 + lambda/m_s, plus vartheta m_s in the outer region.

    Outside it exceeds energy(n, K+) by 2 vartheta m_s, since K+ = K- - vartheta m_s;
    it is reported next to the certified value and never used downstream.
    """
    value = 2 * n + 1 + lam / flux.m_s
    if region == "outer":
        value += flux.vartheta * flux.m_s
    return value


def normalization(n: int, K: float) -> float:
    """N = sqrt(2 n! / Gamma(n + K + 1)), making the mode unit norm on (0, inf)."""
    return float(np.exp(0.5 * (np.log(2.0) + ln_gamma(n + 1) - ln_gamma(n + K + 1))))


def build_mode(
    region: str, n: int, K: float, R_reg: float = 1e-2, partner_K: float | None = None
) -> RadialMode:
    """
    Radial mode of the given region.

    Without a partner the mode is unit norm on (0, inf). An outer mode with
    `partner_K` = K- is matched to the unit-norm inner mode: its amplitude is
    N+ = N- u_(K-)(R) / u_(K+)(R) = N- R^(K- - K+) L_n^(K-)(R^2) / L_n^(K+)(R^2),
    so the two agree at R_reg.
    """
    if K <= -1:
        raise NormalizabilityError(f"K must exceed -1, got K={K}")
    prefactor = normalization(n, K)
    if region == "outer" and partner_K is not None:
        if partner_K <= -1:
            raise NormalizabilityError(f"K must exceed -1, got K={partner_K}")
        prefactor = normalization(n, partner_K) * _amplitude_ratio(n, partner_K, K, R_reg)
    return RadialMode(
        region=region,
        n=n,
        K=K,
        E=energy(n, K),
        norm_prefactor=prefactor,
        R_reg=R_reg,
        partner_K=partner_K,
    )


def matched_modes(
    n: int,
    lam: float,
    flux: FluxSpin,
    params: DunklParams,
    sector: ParitySector,
    R_reg: float = 1e-2,
) -> tuple[RadialMode, RadialMode]:
    """Inner and outer modes continuous at R_reg, the inner one unit norm."""
    inner = k_minus(lam, params, sector, flux.m_s if flux.vartheta else None)
    outer = k_plus(lam, flux, params, sector)
    return (
        build_mode("inner", n, inner, R_reg, partner_K=outer),
        build_mode("outer", n, outer, R_reg, partner_K=inner),
    )


def matched_eval(
    inner: RadialMode, outer: RadialMode, xi: float | np.ndarray
) -> float | np.ndarray:
    """Piecewise solution: the inner mode below R_reg, the outer mode from R_reg on."""
    xi = np.asarray(xi, dtype=float)
    value = np.where(xi < inner.R_reg, radial_eval(inner, xi), radial_eval(outer, xi))
    return float(value) if value.ndim == 0 else value


def _shape(n: int, K: float, xi: np.ndarray) -> tuple[np.ndarray, ...]:
    """u = h P, h = xi^(K+1/2) exp(-xi^2/2), P = L_n^K(xi^2), with two derivatives."""
    s = K + 0.5
    x = xi**2
    h = xi**s * np.exp(-x / 2)
    ratio = s / xi - xi
    dh = h * ratio
    d2h = h * (ratio**2 - s / xi**2 - 1.0)
    poly = laguerre_L(n, K, x)
    p, dp_x = poly.value, poly.derivative
    d2p_x = laguerre_L2(n, K, x)
    dp = 2 * xi * dp_x
    d2p = 2 * dp_x + 4 * x * d2p_x
    return h * p, dh * p + h * dp, d2h * p + 2 * dh * dp + h * d2p


def radial_eval(mode: RadialMode, xi: float | np.ndarray) -> float | np.ndarray:
    """
    N xi^(K+1/2) exp(-xi^2/2) L_n^K(xi^2) for xi > 0.

    Parameters
    ----------
    mode : RadialMode
        Mode to evaluate.
    xi : float or np.ndarray
        Positive scaled radius.

    Returns
    -------
    float or np.ndarray
        Value(s) of the radial mode.
    """
    xi = np.asarray(xi, dtype=float)
    value = mode.norm_prefactor * _shape(mode.n, mode.K, xi)[0]
    return float(value) if value.ndim == 0 else value


def radial_derivatives(mode: RadialMode, xi: np.ndarray) -> tuple[np.ndarray, ...]:
    """Value, first and second xi-derivative of a radial mode."""
    xi = np.asarray(xi, dtype=float)
    return tuple(mode.norm_prefactor * part for part in _shape(mode.n, mode.K, xi))


def ode_residual(mode: RadialMode, xi: np.ndarray, energy_shift: float = 0.0) -> float:
    """
    Relative residual of L'' - (K^2 - 1/4)/xi^2 L - xi^2 L + 2E L = 0.

    Parameters
    ----------
    mode : RadialMode
        Mode to check.
    xi : np.ndarray
        Grid strictly inside one region.
    energy_shift : float
        Offset added to E; nonzero values must produce a large residual.

    Returns
    -------
    float
        max |residual| / max |L| over the grid.
    """
    xi = np.asarray(xi, dtype=float)
    value, _, second = radial_derivatives(mode, xi)
    e = mode.E + energy_shift
    residual = second - (mode.K**2 - 0.25) / xi**2 * value - xi**2 * value + 2 * e * value
    return float(np.max(np.abs(residual)) / np.max(np.abs(value)))


def _log_derivative(n: int, K: float, R: float) -> float:
    value, first, _ = _shape(n, K, np.asarray(R))
    return float(first / value)


def _amplitude_ratio(n: int, k_in: float, k_out: float, R: float) -> float:
    inner = _shape(n, k_in, np.asarray(R))[0]
    outer = _shape(n, k_out, np.asarray(R))[0]
    return float(inner / outer)


def matching_report(
    lam: float,
    flux: FluxSpin,
    params: DunklParams,
    sector: ParitySector,
    R: float = 1e-2,
    n: int = 1,
    halvings: int = 3,
) -> MatchingReport | AbReport:
    """
    Matching of the inner and outer modes at the regularization radius.

    Continuity fixes N+/N- = R^(K- - K+) L_n^(K-)(R^2) / L_n^(K+)(R^2), whose
    leading term is R^(vartheta m_s). The derivative jump forced by the delta
    term leaves the defect [L+'(R) - L-'(R) + (vartheta m_s / R) L-(R)] / L-(R),
    which vanishes as R -> 0; it is evaluated at R, R/2, ... with the observed
    order of each halving.

    Returns
    -------
    MatchingReport or AbReport
        The report, or the violation report when the flux constraint fails.
    """
    if not 0 < R <= 0.1:
        raise DomainError(f"regularization radius must lie in (0, 0.1], got R={R}")
    gate = ab_constrain(sector, params)
    if flux.vartheta != 0 and isinstance(gate, AbReport):
        return gate
    inner = k_minus(lam, params, sector, flux.m_s if flux.vartheta else None)
    outer = k_plus(lam, flux, params, sector)
    radii = [R / 2**k for k in range(halvings + 1)]
    defects = []
    for radius in radii:
        jump = _log_derivative(n, outer, radius) - _log_derivative(n, inner, radius)
        defects.append(abs(jump + flux.vartheta * flux.m_s / radius))
    orders: list[float | None] = []
    for coarse, fine in zip(defects, defects[1:]):
        orders.append(float(np.log2(coarse / fine)) if coarse > 0 and fine > 0 else None)
    return MatchingReport(
        K_minus=inner,
        K_plus=outer,
        n=n,
        radii=radii,
        amplitude_ratio=[_amplitude_ratio(n, inner, outer, r) for r in radii],
        amplitude_ratio_leading=[r ** (flux.vartheta * flux.m_s) for r in radii],
        defects=defects,
        orders=orders,
    )


def spectrum_row(
    n: int, l: float, sign: int, params: DunklParams, sector: ParitySector, flux: FluxSpin
) -> dict:
    """
    One spectrum table row {n, l, sign, m_s, vartheta, lambda, K_minus, K_plus,
    E_minus, E_plus, E_plus_printed, E_plus_discrepancy}. The printed outer value
    and its difference from E_plus are carried for comparison.
    """
    lam = lambda_of(sector, l, sign, params)
    inner = k_minus(lam, params, sector, flux.m_s if flux.vartheta else None)
    outer = k_plus(lam, flux, params, sector)
    e_plus = energy(n, outer, flux, lam)
    printed = printed_energy(n, lam, flux, "outer")
    return {
        "n": n,
        "l": l,
        "sign": sign,
        "m_s": flux.m_s,
        "vartheta": flux.vartheta,
        "lambda": lam,
        "K_minus": inner,
        "K_plus": outer,
        "E_minus": energy(n, inner, flux, lam),
        "E_plus": e_plus,
        "E_plus_printed": printed,
        "E_plus_discrepancy": printed - e_plus,
    }


def radial_expectations(mode: RadialMode, order: int | None = None) -> tuple[float, float]:
    """
    Expectations <xi^2> and <kappa>, kappa = -d^2/dxi^2 + (K^2 - 1/4)/xi^2, in
    a normalized mode.

    Both integrands reduce to polynomials in x = xi^2 against x^K exp(-x), so a
    generalized Gauss-Laguerre rule of `order` nodes is exact when
    n <= order - 1; orders below n + 2 are refused.

    Raises
    ------
    QuadratureOrderError
        If n > order - 2.
    """
    n, K = mode.n, mode.K
    order = n + 2 if order is None else order
    if n > order - 2:
        raise QuadratureOrderError(f"quadrature of order {order} does not support n={n}")
    x, w = roots_genlaguerre(order, K)
    poly = laguerre_L(n, K, x)
    p, dp = poly.value, poly.derivative
    d2p = laguerre_L2(n, K, x)
    scale = 0.5 * mode.norm_prefactor**2
    xi_sq = scale * np.sum(w * x * p**2)
    kappa_p = (2 * K + 2 - x) * p + (4 * x - 4 * K - 4) * dp - 4 * x * d2p
    kappa = scale * np.sum(w * p * kappa_p)
    return float(xi_sq), float(kappa)
