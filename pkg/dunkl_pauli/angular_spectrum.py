"""
Closed-form spectrum of the Dunkl angular operator J_phi.

Eigenfunctions are two-term combinations of Jacobi polynomials in -cos(2 phi)
whose components carry opposite reflection parities. The leading (real)
component fixes the reported (eps1, eps2); the eigenvalue depends only on the
product eps, the index l and the sign branch.
"""

import numpy as np

from .dunkl_ops import angular_operator, reflection_matrix
from .entities import AbReport, AngularMode, CheckResult, DunklParams, ParitySector
from .errors import AdmissibilityError, DomainError
from .specfun import angular_norms, dunkl_angular_rule, jacobi_P

__all__ = [
    "check_admissible",
    "lambda_of",
    "make_mode",
    "eval_Phi",
    "verify_mode",
    "check_mode_parity",
    "ab_relation",
    "ab_constrain",
    "angular_gram",
    "mode_battery",
    "angular_table",
]

AB_TOLERANCE = 1e-12


def check_admissible(sector: ParitySector, l: float) -> None:
    """
    Raise AdmissibilityError unless `l` lies on the lattice of the sector:
    l = 0, 1, 2, ... for eps=+1 (l=0 only with leading parity (+,+)) and
    l = 1/2, 3/2, ... for eps=-1.
    """
    if sector.eps == 1:
        if l < 0 or l != int(l):
            raise AdmissibilityError(f"eps=+1 requires a nonnegative integer l, got l={l}")
        if l == 0 and sector.eps1 == -1:
            raise AdmissibilityError("the l=0 mode is the constant, its parity is (+,+)")
    elif l < 0.5 or (l - 0.5) != int(l - 0.5):
        raise AdmissibilityError(f"eps=-1 requires a half-odd-integer l >= 1/2, got l={l}")


def lambda_of(sector: ParitySector, l: float, sign: int, params: DunklParams) -> float:
    """
    Eigenvalue of J_phi.

    eps=+1: lambda = sign * 2 sqrt(l (l + nu1 + nu2));
    eps=-1: lambda = sign * 2 sqrt((l + nu1)(l + nu2)).

    Raises
    ------
    AdmissibilityError
        If `l` is off the sector lattice.
    DomainError
        If the radicand is negative.
    """
    check_admissible(sector, l)
    if sector.eps == 1:
        radicand = l * (l + params.nu1 + params.nu2)
    else:
        radicand = (l + params.nu1) * (l + params.nu2)
    if radicand < 0:
        raise DomainError(f"negative radicand {radicand} for l={l}")
    return float(sign * 2.0 * np.sqrt(radicand))


def make_mode(sector: ParitySector, l: float, sign: int, params: DunklParams) -> AngularMode:
    """Validated angular mode with its closed-form eigenvalue."""
    return AngularMode(
        sector=sector, l=l, sign=sign, lam=lambda_of(sector, l, sign, params), params=params
    )


def eval_Phi(mode: AngularMode, phi: float | np.ndarray) -> complex | np.ndarray:
    """
    Evaluate the normalized angular eigenfunction.

    Parameters
    ----------
    mode : AngularMode
        Mode to evaluate.
    phi : float or np.ndarray
        Angle(s), any real value (the function is 2 pi periodic).

    Returns
    -------
    complex or np.ndarray
        Phi(phi), unit norm under |cos phi|^(2 nu1) |sin phi|^(2 nu2) dphi.
    """
    nu1, nu2 = mode.params.nu1, mode.params.nu2
    first, second = angular_norms(mode.sector, mode.l, mode.params)
    phi = np.asarray(phi, dtype=float)
    x = -np.cos(2 * phi)
    s, c = np.sin(phi), np.cos(phi)
    sign = mode.sign
    if mode.sector.eps == 1:
        l = int(mode.l)
        if l == 0:
            value = first * np.ones_like(phi, dtype=complex)
            return complex(value) if value.ndim == 0 else value
        even = first * jacobi_P(l, nu1 - 0.5, nu2 - 0.5, x).value
        odd = second * s * c * jacobi_P(l - 1, nu1 + 0.5, nu2 + 0.5, x).value
        if mode.sector.eps1 == 1:
            value = (even + 1j * sign * odd) / np.sqrt(2)
        else:
            value = (odd - 1j * sign * even) / np.sqrt(2)
    else:
        m = int(mode.l - 0.5)
        cos_led = first * c * jacobi_P(m, nu1 + 0.5, nu2 - 0.5, x).value
        sin_led = second * s * jacobi_P(m, nu1 - 0.5, nu2 + 0.5, x).value
        if mode.sector.eps1 == -1:
            value = (cos_led - 1j * sign * sin_led) / np.sqrt(2)
        else:
            value = (sin_led + 1j * sign * cos_led) / np.sqrt(2)
    return complex(value) if np.ndim(value) == 0 else value


def verify_mode(mode: AngularMode, N: int = 256, lambda_shift: float = 0.0) -> CheckResult:
    """
    Grid eigen-residual ||J_phi Phi - lambda Phi||_inf / ||Phi||_inf.

    Parameters
    ----------
    mode : AngularMode
        Mode to check.
    N : int
        Grid size, divisible by 4.
    lambda_shift : float
        Offset added to the closed-form eigenvalue; nonzero values must fail.

    Returns
    -------
    CheckResult
        Report named "angular_mode".
    """
    j = angular_operator("J_phi", N, mode.params)
    samples = eval_Phi(mode, j.nodes)
    lam = mode.lam + lambda_shift
    residual = float(np.max(np.abs(j @ samples - lam * samples)) / np.max(np.abs(samples)))
    return CheckResult(
        name="angular_mode",
        residual=residual,
        threshold=1e-6,
        passed=residual <= 1e-6,
        details={
            "N": N,
            "l": mode.l,
            "sign": mode.sign,
            "lambda": lam,
            "eps1": mode.sector.eps1,
            "eps2": mode.sector.eps2,
        },
    )


def check_mode_parity(mode: AngularMode, N: int = 256) -> CheckResult:
    """
    Reflection behaviour on the grid: R1 R2 Phi = eps Phi and
    R2 Phi = eps2 conj(Phi), eps2 being the parity of the leading component.
    """
    nodes = angular_operator("identity", N, mode.params).nodes
    r1, r2 = reflection_matrix(N, 1), reflection_matrix(N, 2)
    samples = eval_Phi(mode, nodes)
    scale = np.max(np.abs(samples))
    joint = np.max(np.abs(r1 @ r2 @ samples - mode.sector.eps * samples)) / scale
    single = np.max(np.abs(r2 @ samples - mode.sector.eps2 * np.conj(samples))) / scale
    residual = float(max(joint, single))
    return CheckResult(
        name="mode_parity",
        residual=residual,
        threshold=1e-10,
        passed=residual <= 1e-10,
        details={"joint": float(joint), "r2_conjugate": float(single), "l": mode.l},
    )


def ab_relation(sector: ParitySector) -> str:
    """Relation on (nu1, nu2) required by the flux in the given sector."""
    if sector.eps == 1:
        return "nu1 = -nu2 (nu1 + eps nu2 = 0 with eps = +1)"
    return "nu1 = nu2 (nu1 + eps nu2 = 0 with eps = -1)"


def ab_constrain(sector: ParitySector, params: DunklParams) -> DunklParams | AbReport:
    """
    Flux-compatibility gate: nu1 eps1 + nu2 eps2 = 0, equivalently
    nu1 + eps nu2 = 0.

    Returns
    -------
    DunklParams or AbReport
        `params` unchanged when the relation holds within 1e-12, otherwise a
        violation report naming the required relation.
    """
    residual = abs(params.nu1 + sector.eps * params.nu2)
    if residual <= AB_TOLERANCE:
        return params
    return AbReport(
        accepted=False,
        params=params,
        sector=sector,
        residual=residual,
        relation=ab_relation(sector),
    )


def angular_gram(modes: list[AngularMode], order: int | None = None) -> np.ndarray:
    """
    Gram matrix <Phi_a, Phi_b> under the Dunkl angular measure.

    All modes must share their deformation parameters. The quadrature is exact
    for the polynomial degrees involved when `order` is left at its default.
    """
    if not modes:
        return np.zeros((0, 0), dtype=complex)
    params = modes[0].params
    if any(mode.params != params for mode in modes):
        raise ValueError("all modes of a Gram matrix must share their parameters")
    if order is None:
        order = int(max(mode.l for mode in modes)) + 4
    phi, weights = dunkl_angular_rule(params, order)
    values = np.column_stack([eval_Phi(mode, phi) for mode in modes])
    return values.conj().T @ (weights[:, None] * values)


def mode_battery(
    params: DunklParams, eps: int, count: int | None = None, l_max: float | None = None
) -> list[AngularMode]:
    """
    Distinct modes of one sector in increasing l, both sign branches.

    The leading parity is (+,+) for eps=+1 and (-,+) for eps=-1; the other
    leading parity of a sector only multiplies each mode by a phase. Either
    `count` (number of modes) or `l_max` bounds the list.
    """
    if count is None and l_max is None:
        raise ValueError("mode_battery needs count or l_max")
    sector = ParitySector(eps1=1, eps2=1) if eps == 1 else ParitySector(eps1=-1, eps2=1)
    l = 0.0 if eps == 1 else 0.5
    modes: list[AngularMode] = []
    while True:
        if l_max is not None and l > l_max:
            return modes
        signs = (1,) if l == 0 else (1, -1)
        for sign in signs:
            if count is not None and len(modes) >= count:
                return modes
            modes.append(make_mode(sector, l, sign, params))
        l += 1.0


def angular_table(params: DunklParams, l_max: float, N: int) -> list[dict]:
    """Rows (eps, eps1, eps2, l, sign, lambda, residual) for both sectors."""
    rows = []
    for eps in (1, -1):
        for mode in mode_battery(params, eps, l_max=l_max):
            report = verify_mode(mode, N)
            rows.append(
                {
                    "eps": eps,
                    "eps1": mode.sector.eps1,
                    "eps2": mode.sector.eps2,
                    "l": mode.l,
                    "sign": mode.sign,
                    "lambda": mode.lam,
                    "residual": report.residual,
                    "passed": report.passed,
                }
            )
    return rows
