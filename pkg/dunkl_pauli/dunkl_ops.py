"""
Dunkl operator calculus.

Two representations are provided: an exact calculus on polynomials stored as
monomial coefficients, used for the algebraic identities, and dense operators
on a reflection-symmetric periodic angular grid, used for the angular
operators B_phi and J_phi. A finite-difference radial calculus checks the
commutation relations of the generators T1, T2, T3.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Literal

import click
import numpy as np
from scipy.linalg import toeplitz

from .entities import (
    AngularGridOperator,
    CheckResult,
    DeltaShift,
    DunklParams,
    FluxSpin,
    ParitySector,
    RadialGrid,
)
from .errors import GridError

__all__ = [
    "MonomialFunction",
    "monomial",
    "reflect",
    "multiply_by",
    "dunkl_deriv",
    "dunkl_laplacian",
    "laplacian_expanded",
    "check_heisenberg",
    "angular_nodes",
    "differentiation_matrix",
    "reflection_matrix",
    "angular_operator",
    "check_reflections",
    "check_sector_closure",
    "check_J_squared",
    "centrifugal_coupling",
    "check_T_algebra",
]

Axis = Literal["x", "y"]
Coefficient = float | Fraction


@dataclass(frozen=True)
class MonomialFunction:
    """
    Polynomial in (x, y) stored as {(i, j): coefficient of x^i y^j}.

    With `exact=True` the coefficients are `Fraction` instances and every
    operator application is carried out in rational arithmetic.
    """

    terms: dict[tuple[int, int], Coefficient] = field(default_factory=dict)
    exact: bool = False

    def __post_init__(self):
        cast = Fraction if self.exact else float
        cleaned = {power: cast(c) for power, c in self.terms.items() if c != 0}
        object.__setattr__(self, "terms", cleaned)

    @property
    def max_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=0)

    def scale(self, factor: Coefficient) -> "MonomialFunction":
        factor = self._coerce(factor)
        return MonomialFunction({p: factor * c for p, c in self.terms.items()}, self.exact)

    def __add__(self, other: "MonomialFunction") -> "MonomialFunction":
        terms = dict(self.terms)
        for power, c in other.terms.items():
            terms[power] = terms.get(power, 0) + c
        return MonomialFunction(terms, self.exact and other.exact)

    def __sub__(self, other: "MonomialFunction") -> "MonomialFunction":
        return self + other.scale(-1)

    def max_abs(self) -> float:
        """Largest absolute coefficient, 0.0 for the zero polynomial."""
        return float(max((abs(c) for c in self.terms.values()), default=0))

    def _coerce(self, value: Coefficient) -> Coefficient:
        return Fraction(value) if self.exact else float(value)


def monomial(
    i: int, j: int, coefficient: Coefficient = 1, exact: bool = False
) -> MonomialFunction:
    """The monomial coefficient * x^i y^j."""
    return MonomialFunction({(i, j): coefficient}, exact)


def _axis_index(axis: Axis) -> int:
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return 0 if axis == "x" else 1


def _nu(params: DunklParams, axis: Axis, exact: bool) -> Coefficient:
    value = params.nu1 if axis == "x" else params.nu2
    return Fraction(value) if exact else value


def reflect(f: MonomialFunction, axis: Axis) -> MonomialFunction:
    """Reflection R_x (x -> -x) or R_y (y -> -y)."""
    k = _axis_index(axis)
    return MonomialFunction(
        {power: c if power[k] % 2 == 0 else -c for power, c in f.terms.items()}, f.exact
    )


def multiply_by(f: MonomialFunction, axis: Axis) -> MonomialFunction:
    """Multiplication by the coordinate x or y."""
    k = _axis_index(axis)
    shift = (1, 0) if k == 0 else (0, 1)
    return MonomialFunction(
        {(i + shift[0], j + shift[1]): c for (i, j), c in f.terms.items()}, f.exact
    )


def dunkl_deriv(f: MonomialFunction, axis: Axis, params: DunklParams) -> MonomialFunction:
    """
    Dunkl derivative D_j = d/dx_j + (nu_j / x_j)(1 - R_j).

    On monomials D_x x^k = (k + nu1 (1 - (-1)^k)) x^(k-1); the reflection term
    cancels the pole exactly.

    Parameters
    ----------
    f : MonomialFunction
        Polynomial to differentiate.
    axis : {"x", "y"}
        Direction of the derivative.
    params : DunklParams
        Deformation parameters.

    Returns
    -------
    MonomialFunction
        D_axis f, in the arithmetic of `f`.
    """
    k = _axis_index(axis)
    nu = _nu(params, axis, f.exact)
    terms: dict[tuple[int, int], Coefficient] = {}
    for power, c in f.terms.items():
        degree = power[k]
        if degree == 0:
            continue
        factor = degree + (2 * nu if degree % 2 else 0)
        lowered = (power[0] - 1, power[1]) if k == 0 else (power[0], power[1] - 1)
        terms[lowered] = terms.get(lowered, 0) + factor * c
    return MonomialFunction(terms, f.exact)


def dunkl_laplacian(f: MonomialFunction, params: DunklParams) -> MonomialFunction:
    """Dunkl Laplacian as the sum of squared Dunkl derivatives."""
    xx = dunkl_deriv(dunkl_deriv(f, "x", params), "x", params)
    yy = dunkl_deriv(dunkl_deriv(f, "y", params), "y", params)
    return xx + yy


def laplacian_expanded(f: MonomialFunction, params: DunklParams) -> MonomialFunction:
    """
    Dunkl Laplacian in its expanded differential-difference form

        sum_j [ d^2/dx_j^2 + (2 nu_j / x_j) d/dx_j - (nu_j / x_j^2)(1 - R_j) ],

    evaluated term by term on monomials.
    """
    terms: dict[tuple[int, int], Coefficient] = {}
    for axis in ("x", "y"):
        k = _axis_index(axis)
        nu = _nu(params, axis, f.exact)
        for power, c in f.terms.items():
            degree = power[k]
            if degree < 2:
                # degree 1: 2 nu - 2 nu cancels; degree 0: every term vanishes
                continue
            factor = degree * (degree - 1) + 2 * nu * degree - (2 * nu if degree % 2 else 0)
            lowered = (power[0] - 2, power[1]) if k == 0 else (power[0], power[1] - 2)
            terms[lowered] = terms.get(lowered, 0) + factor * c
    return MonomialFunction(terms, f.exact)


def check_heisenberg(params: DunklParams, max_degree: int = 8, exact: bool = False) -> CheckResult:
    """
    Deformed Heisenberg algebra on every monomial of total degree <= max_degree.

    Evaluates [D_j, x_i] - delta_ij (1 + 2 nu_j R_j), [D_x, D_y] and [x, y] and
    reports the largest coefficient of any residual polynomial.

    Parameters
    ----------
    params : DunklParams
        Deformation parameters.
    max_degree : int
        Largest total degree of the test monomials, at least 2.
    exact : bool
        Use rational arithmetic; the residual is then exactly zero.

    Returns
    -------
    CheckResult
        Report named "heisenberg".
    """
    if max_degree < 2:
        raise ValueError(f"max_degree must be at least 2, got {max_degree}")
    worst = 0.0
    for i, j in product(range(max_degree + 1), repeat=2):
        if i + j > max_degree:
            continue
        f = monomial(i, j, exact=exact)
        for d_axis, x_axis in product(("x", "y"), repeat=2):
            commutator = dunkl_deriv(multiply_by(f, x_axis), d_axis, params) - multiply_by(
                dunkl_deriv(f, d_axis, params), x_axis
            )
            if d_axis == x_axis:
                nu = _nu(params, d_axis, exact)
                commutator = commutator - f - reflect(f, d_axis).scale(2 * nu)
            worst = max(worst, commutator.max_abs())
        mixed = dunkl_deriv(dunkl_deriv(f, "y", params), "x", params) - dunkl_deriv(
            dunkl_deriv(f, "x", params), "y", params
        )
        coordinates = multiply_by(multiply_by(f, "y"), "x") - multiply_by(multiply_by(f, "x"), "y")
        worst = max(worst, mixed.max_abs(), coordinates.max_abs())
    threshold = 0.0 if exact else 1e-13
    return CheckResult(
        name="heisenberg",
        residual=worst,
        threshold=threshold,
        passed=worst <= threshold,
        details={"max_degree": max_degree, "exact": exact, **params.model_dump()},
    )


def angular_nodes(N: int) -> np.ndarray:
    """Offset grid phi_k = -pi + (k + 1/2) 2 pi / N, k = 0 ... N-1."""
    if N % 4:
        raise GridError(f"angular grid size must be divisible by 4, got N={N}")
    return -np.pi + (np.arange(N) + 0.5) * 2 * np.pi / N


def differentiation_matrix(N: int) -> np.ndarray:
    """
    Trigonometric-interpolation differentiation matrix on N equispaced nodes,
    D_jk = (-1)^(j-k) cot((phi_j - phi_k) / 2) / 2 with zero diagonal.
    """
    h = 2 * np.pi / N
    k = np.arange(1, N)
    column = np.zeros(N)
    column[1:] = 0.5 * (-1.0) ** k / np.tan(0.5 * k * h)
    return toeplitz(column, -column)


def reflection_matrix(N: int, axis: Literal[1, 2]) -> np.ndarray:
    """
    Permutation matrix of R1 (phi -> pi - phi) or R2 (phi -> -phi) on the
    offset grid.
    """
    k = np.arange(N)
    image = (N // 2 - 1 - k) % N if axis == 1 else N - 1 - k
    matrix = np.zeros((N, N))
    matrix[k, image] = 1.0
    return matrix


def angular_operator(
    label: Literal["B_phi", "J_phi", "R1", "R2", "identity"], N: int, params: DunklParams
) -> AngularGridOperator:
    """
    Dense grid representation of an angular operator.

        J_phi = i [ d/dphi + nu2 cot(phi) (1 - R2) - nu1 tan(phi) (1 - R1) ]
        B_phi = -1/2 d^2/dphi^2 + (nu1 tan(phi) - nu2 cot(phi)) d/dphi
                + nu1 / (2 cos^2 phi) (1 - R1) + nu2 / (2 sin^2 phi) (1 - R2)

    Parameters
    ----------
    label : str
        Operator to build.
    N : int
        Grid size, divisible by 4 and at least 32.
    params : DunklParams
        Deformation parameters.

    Returns
    -------
    AngularGridOperator
        Immutable operator with its nodes.

    Raises
    ------
    GridError
        If N is not divisible by 4 or smaller than 32.
    """
    nodes = angular_nodes(N)
    if N < 32:
        raise GridError(f"angular grid size must be at least 32, got N={N}")
    identity = np.eye(N)
    r1 = reflection_matrix(N, 1)
    r2 = reflection_matrix(N, 2)
    match label:
        case "identity":
            matrix = identity
        case "R1":
            matrix = r1
        case "R2":
            matrix = r2
        case "J_phi":
            d = differentiation_matrix(N)
            tan, cot = np.tan(nodes), 1.0 / np.tan(nodes)
            matrix = 1j * (
                d
                + params.nu2 * cot[:, None] * (identity - r2)
                - params.nu1 * tan[:, None] * (identity - r1)
            )
        case "B_phi":
            d = differentiation_matrix(N)
            tan, cot = np.tan(nodes), 1.0 / np.tan(nodes)
            matrix = (
                -0.5 * d @ d
                + (params.nu1 * tan - params.nu2 * cot)[:, None] * d
                + (params.nu1 / (2 * np.cos(nodes) ** 2))[:, None] * (identity - r1)
                + (params.nu2 / (2 * np.sin(nodes) ** 2))[:, None] * (identity - r2)
            )
        case _:
            raise ValueError(f"unknown angular operator {label!r}")
    return AngularGridOperator(N=N, label=label, nodes=nodes, matrix=matrix)


def check_reflections(N: int) -> CheckResult:
    """R1 and R2 are commuting involutions that permute the grid, checked exactly."""
    nodes = angular_nodes(N)
    r1, r2 = reflection_matrix(N, 1), reflection_matrix(N, 2)
    identity = np.eye(N, dtype=int)
    failures = []
    if not np.array_equal(r1 @ r1, identity):
        failures.append("R1 squared")
    if not np.array_equal(r2 @ r2, identity):
        failures.append("R2 squared")
    if not np.array_equal(r1 @ r2, r2 @ r1):
        failures.append("R1 R2 commutation")
    # images of the nodes must be nodes
    mismatch = max(
        np.max(np.abs(r1 @ nodes - (np.pi - nodes + np.where(nodes < 0, -2 * np.pi, 0)))),
        np.max(np.abs(r2 @ nodes + nodes)),
    )
    if mismatch > 1e-12:
        failures.append("node images")
    return CheckResult(
        name="reflections",
        residual=float(len(failures)),
        threshold=0.0,
        passed=not failures,
        details={"N": N, "failures": failures, "node_mismatch": float(mismatch)},
    )


def check_sector_closure(N: int, params: DunklParams) -> CheckResult:
    """J_phi and B_phi commute with R1 R2 on the grid."""
    parity = reflection_matrix(N, 1) @ reflection_matrix(N, 2)
    worst = 0.0
    for label in ("J_phi", "B_phi"):
        matrix = angular_operator(label, N, params).matrix
        scale = max(np.max(np.abs(matrix)), 1.0)
        worst = max(worst, np.max(np.abs(matrix @ parity - parity @ matrix)) / scale)
    return CheckResult(
        name="sector_closure",
        residual=float(worst),
        threshold=1e-10,
        passed=worst <= 1e-10,
        details={"N": N, **params.model_dump()},
    )


def _test_battery() -> dict[str, Callable[[np.ndarray], np.ndarray]]:
    return {
        "sin": np.sin,
        "cos": np.cos,
        "sin2": lambda phi: np.sin(2 * phi),
        "cos2": lambda phi: np.cos(2 * phi),
        "exp_sin": lambda phi: np.exp(np.sin(phi)),
        "sin_cos": lambda phi: np.sin(phi) * np.cos(phi),
        "cos_exp_sin": lambda phi: np.cos(phi) * np.exp(np.sin(phi)),
        "sin2_cos": lambda phi: np.sin(2 * phi) * np.cos(phi),
    }


def check_J_squared(N: int, params: DunklParams, threshold: float = 1e-7) -> CheckResult:
    """
    Identity J_phi^2 = 2 B_phi + 2 nu1 nu2 (1 - R1 R2) on a battery of smooth
    periodic test functions.

    Returns
    -------
    CheckResult
        Report named "j_squared" with the residual of each test function.
    """
    j = angular_operator("J_phi", N, params)
    b = angular_operator("B_phi", N, params)
    parity = reflection_matrix(N, 1) @ reflection_matrix(N, 2)
    identity = np.eye(N)
    defect = j.matrix @ j.matrix - 2 * b.matrix - 2 * params.nu1 * params.nu2 * (identity - parity)
    residuals = {}
    for name, g in _test_battery().items():
        samples = g(j.nodes)
        residuals[name] = float(np.max(np.abs(defect @ samples)) / np.max(np.abs(samples)))
    worst = max(residuals.values())
    return CheckResult(
        name="j_squared",
        residual=worst,
        threshold=threshold,
        passed=worst <= threshold,
        details={"N": N, "per_function": residuals, **params.model_dump()},
    )


def centrifugal_coupling(
    lam: float, params: DunklParams, sector: ParitySector, flux: FluxSpin
) -> float:
    """
    Coefficient V of the 1/r^2 term of T1 in a fixed (eps, lambda, m_s) sector:

        V = (vartheta - lambda)^2 + delta (delta - 1) - 2 nu1 nu2 (1 - eps)
            + 2 vartheta (nu1 eps1 + nu2 eps2) m_s
    """
    delta = DeltaShift.from_params(params).delta
    return (
        (flux.vartheta - lam) ** 2
        + delta * (delta - 1)
        - 2 * params.nu1 * params.nu2 * (1 - sector.eps)
        + 2 * flux.vartheta * (params.nu1 * sector.eps1 + params.nu2 * sector.eps2) * flux.m_s
    )


# sixth-order central stencils
_FIRST = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
_SECOND = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0


def _stencil(values: np.ndarray, weights: np.ndarray, scale: float) -> np.ndarray:
    out = np.full(values.shape, np.nan, dtype=complex)
    out[3:-3] = np.convolve(values, weights[::-1], mode="valid") / scale
    return out


class _RadialGenerators:
    """T1, T2, T3 acting on samples over a uniform radial grid."""

    def __init__(self, grid: RadialGrid, delta: float, coupling: float):
        self.r = grid.nodes
        self.h = grid.h
        self.delta = delta
        self.coupling = coupling

    def d1(self, f: np.ndarray) -> np.ndarray:
        return _stencil(f, _FIRST, self.h)

    def d2(self, f: np.ndarray) -> np.ndarray:
        return _stencil(f, _SECOND, self.h**2)

    def t1(self, f: np.ndarray) -> np.ndarray:
        r, delta = self.r, self.delta
        kinetic = self.d2(f) + 2 * delta * self.d1(f) / r + delta * (delta - 1) * f / r**2
        return -0.5 * kinetic + self.coupling * f / r**2

    def t2(self, f: np.ndarray) -> np.ndarray:
        return 0.5 * self.r**2 * f

    def t3(self, f: np.ndarray) -> np.ndarray:
        return -1j * (self.r * self.d1(f) + (self.delta + 0.5) * f)


def _relative(residual: np.ndarray, target: np.ndarray, mask: np.ndarray) -> float:
    return float(np.max(np.abs(residual[mask])) / max(np.max(np.abs(target[mask])), 1e-300))


def check_T_algebra(
    grid: RadialGrid,
    params: DunklParams,
    lam: float,
    sector: ParitySector = ParitySector(),
    flux: FluxSpin = FluxSpin(),
    threshold: float = 1e-6,
    verbose: bool = False,
) -> CheckResult:
    """
    Lie algebra of the generators
    T1 = p^2/2 + V/r^2, T2 = r^2/2, T3 = (r p + p r)/2, p = -i (d/dr + delta/r).

    The generators as defined satisfy [T1, T2] = -i T3, [T2, T3] = 2i T2 and
    [T1, T3] = -2i T1; each is checked on interior nodes with sixth-order
    finite differences against a set of smooth test vectors.

    Parameters
    ----------
    grid : RadialGrid
        Uniform radial grid; h of about 0.01 is required for the threshold.
    params : DunklParams
        Deformation parameters fixing delta.
    lam : float
        Angular eigenvalue of the sector.
    sector, flux : ParitySector, FluxSpin
        Sector and flux entering the centrifugal coupling V.
    threshold : float
        Largest accepted relative residual.
    verbose : bool
        Echo a diagnostic when the grid is too coarse for the threshold.

    Returns
    -------
    CheckResult
        Report named "t_algebra" with the residual of each relation.
    """
    delta = DeltaShift.from_params(params).delta
    ops = _RadialGenerators(grid, delta, centrifugal_coupling(lam, params, sector, flux))
    r = ops.r
    vectors = {
        "r4_gauss": r**4 * np.exp(-(r**2) / 2),
        "r5_shifted_gauss": r**5 * np.exp(-((r - 1) ** 2)),
        "r2_gauss": r**2 * np.exp(-(r**2)),
    }
    # trim the stencil boundary of nested applications and the small-r end
    mask = (r > 0.5) & (r < r[-1] - 12 * grid.h)
    residuals = {}
    for name, f in vectors.items():
        f = f.astype(complex)
        relations = {
            "T1T2": (ops.t1(ops.t2(f)) - ops.t2(ops.t1(f)), -1j * ops.t3(f)),
            "T2T3": (ops.t2(ops.t3(f)) - ops.t3(ops.t2(f)), 2j * ops.t2(f)),
            "T1T3": (ops.t1(ops.t3(f)) - ops.t3(ops.t1(f)), -2j * ops.t1(f)),
        }
        for relation, (commutator, expected) in relations.items():
            value = _relative(commutator - expected, expected, mask)
            residuals[relation] = max(residuals.get(relation, 0.0), value)
    worst = max(residuals.values())
    passed = worst <= threshold
    if not passed and verbose:
        click.echo(
            f"T-algebra residual {worst:.3e} exceeds {threshold:.1e}; refine the radial grid "
            f"(h={grid.h:.3g}).",
            err=True,
        )
    return CheckResult(
        name="t_algebra",
        residual=worst,
        threshold=threshold,
        passed=passed,
        details={"h": grid.h, "lambda": lam, "relations": residuals, **params.model_dump()},
    )
