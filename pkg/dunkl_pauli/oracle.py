"""
Independent numerical cross-checks of the closed forms: finite-difference
diagonalization of the radial invariant operator with an in-package symmetric
tridiagonal eigensolver, and grid diagonalization of J_phi.
"""

from math import copysign, hypot

import click
import numpy as np

from .angular_spectrum import mode_battery
from .dunkl_ops import angular_operator
from .entities import DunklParams, RadialGrid, SymmetricEigenResult, SymmetricTridiagonal
from .errors import ConvergenceError, DomainError, GridError

__all__ = [
    "radial_operator",
    "sturm_count",
    "bisection_eigenvalues",
    "ql_eigenvalues",
    "solve_tridiagonal",
    "inverse_iteration",
    "eig_sym_tridiagonal",
    "compare_radial_spectrum",
    "radial_convergence",
    "flux_shift",
    "angular_eig",
    "compare_angular_spectrum",
]

MAX_QL_SWEEPS = 30
MAX_BISECTIONS = 200


def radial_operator(K: float, grid: RadialGrid) -> SymmetricTridiagonal:
    """
    Central-difference discretization of -d^2/dxi^2 + (K^2 - 1/4)/xi^2 + xi^2
    with Dirichlet conditions at xi = 0 and xi = xi_max.
    """
    if K <= -1:
        raise DomainError(f"K must exceed -1, got K={K}")
    xi = grid.nodes
    h = grid.h
    diag = 2.0 / h**2 + (K**2 - 0.25) / xi**2 + xi**2
    off = np.full(xi.shape[0] - 1, -1.0 / h**2)
    return SymmetricTridiagonal(diag=diag, off=off)


def sturm_count(op: SymmetricTridiagonal, x: float) -> int:
    """Number of eigenvalues strictly below `x`, from the Sturm sequence of pivots."""
    diag = op.diag.tolist()
    off_sq = (op.off**2).tolist()
    tiny = np.finfo(float).tiny
    count = 0
    q = diag[0] - x
    for i in range(len(diag)):
        if i:
            q = diag[i] - x - off_sq[i - 1] / q
        if q == 0.0:
            q = -tiny
        if q < 0:
            count += 1
    return count


def _gershgorin(op: SymmetricTridiagonal) -> tuple[float, float]:
    radius = np.zeros(op.size)
    radius[:-1] += np.abs(op.off)
    radius[1:] += np.abs(op.off)
    return float(np.min(op.diag - radius)), float(np.max(op.diag + radius))


def bisection_eigenvalues(
    op: SymmetricTridiagonal, count: int, rtol: float = 1e-13
) -> tuple[np.ndarray, int]:
    """
    Lowest `count` eigenvalues by bisection on Sturm counts.

    Returns
    -------
    eigenvalues : np.ndarray
        Ascending eigenvalues.
    iterations : int
        Sturm counts performed.

    Raises
    ------
    ConvergenceError
        If an eigenvalue is not bracketed to `rtol` within the bisection cap.
    """
    lower, upper = _gershgorin(op)
    values = []
    iterations = 0
    for index in range(min(count, op.size)):
        low = values[-1] if values else lower
        high = upper
        for _ in range(MAX_BISECTIONS):
            mid = 0.5 * (low + high)
            iterations += 1
            if sturm_count(op, mid) > index:
                high = mid
            else:
                low = mid
            if high - low <= rtol * max(1.0, abs(mid)):
                break
        else:
            raise ConvergenceError(f"bisection did not converge for eigenvalue {index}", index)
        values.append(0.5 * (low + high))
    return np.array(values), iterations


def ql_eigenvalues(op: SymmetricTridiagonal) -> tuple[np.ndarray, int]:
    """
    All eigenvalues by the implicit-shift QL algorithm.

    Returns
    -------
    eigenvalues : np.ndarray
        Ascending eigenvalues.
    iterations : int
        QL sweeps performed.

    Raises
    ------
    ConvergenceError
        If an eigenvalue needs more than 30 sweeps.
    """
    d = op.diag.tolist()
    e = op.off.tolist() + [0.0]
    n = len(d)
    eps = np.finfo(float).eps
    sweeps = 0
    for l in range(n):
        iteration = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if iteration == MAX_QL_SWEEPS:
                raise ConvergenceError(f"QL did not converge for eigenvalue {l}", l)
            iteration += 1
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = c = 1.0
            p = 0.0
            deflated = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d)), sweeps


def solve_tridiagonal(
    sub: np.ndarray, diag: np.ndarray, sup: np.ndarray, rhs: np.ndarray
) -> np.ndarray:
    """Thomas algorithm for a tridiagonal system without pivoting."""
    n = len(diag)
    beta = np.empty(n)
    gamma = np.empty(max(n - 1, 0))
    temp = np.empty(n)
    x = np.empty(n)
    beta[0] = diag[0]
    for i in range(n - 1):
        gamma[i] = sup[i] / beta[i]
        beta[i + 1] = diag[i + 1] - sub[i] * gamma[i]
    temp[0] = rhs[0] / beta[0]
    for i in range(1, n):
        temp[i] = (rhs[i] - sub[i - 1] * temp[i - 1]) / beta[i]
    x[n - 1] = temp[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = temp[i] - gamma[i] * x[i + 1]
    return x


def inverse_iteration(
    op: SymmetricTridiagonal, eigenvalue: float, steps: int = 3
) -> tuple[np.ndarray, float]:
    """
    Eigenvector of a computed eigenvalue by shifted inverse iteration.

    Returns
    -------
    vector : np.ndarray
        Eigenvector with unit maximum norm.
    residual : float
        ||A v - lambda v||_inf / ||v||_inf.
    """
    shift = eigenvalue + 1e-10 * max(1.0, abs(eigenvalue))
    vector = np.random.default_rng(0).uniform(0.5, 1.0, op.size)
    shifted = op.diag - shift
    for _ in range(steps):
        vector = solve_tridiagonal(op.off, shifted, op.off, vector)
        vector /= np.max(np.abs(vector))
    residual = float(np.max(np.abs(op.matvec(vector) - eigenvalue * vector)))
    return vector, residual


def eig_sym_tridiagonal(
    op: SymmetricTridiagonal, count: int | None = None, vectors: bool = False
) -> SymmetricEigenResult:
    """
    Eigenvalues of a symmetric tridiagonal matrix in ascending order.

    The whole spectrum (`count` omitted) is computed by implicit QL, a lowest
    part by Sturm bisection. With `vectors=True` each eigenvalue is paired with
    an inverse-iteration eigenvector and its residual certificate.

    Parameters
    ----------
    op : SymmetricTridiagonal
        Matrix to diagonalize.
    count : int, optional
        Number of lowest eigenvalues wanted.
    vectors : bool
        Also return eigenvectors as columns.

    Returns
    -------
    SymmetricEigenResult
        Eigenvalues with convergence metadata.
    """
    if count is None:
        values, iterations = ql_eigenvalues(op)
        method = "ql"
    else:
        values, iterations = bisection_eigenvalues(op, count)
        method = "bisection"
    matrix, residuals = None, None
    if vectors:
        pairs = [inverse_iteration(op, value) for value in values]
        matrix = np.column_stack([vector for vector, _ in pairs])
        residuals = np.array([residual for _, residual in pairs])
    return SymmetricEigenResult(
        eigenvalues=values,
        vectors=matrix,
        residuals=residuals,
        method=method,
        iterations=iterations,
    )


def compare_radial_spectrum(
    K: float, n_max: int, grid: RadialGrid, verbose: bool = False
) -> list[dict]:
    """
    Relative errors |mu_n - 2(2n + K + 1)| / (2(2n + K + 1)) of the lowest
    discrete eigenvalues, n = 0 ... n_max.

    A truncation warning is echoed when xi_max < 2 sqrt(2 E(n_max)); the table
    is produced regardless.
    """
    if K <= 0:
        raise GridError(f"the Dirichlet radial oracle is limited to K > 0, got K={K}")
    highest = 2 * n_max + K + 1
    if grid.xi_max < 2 * np.sqrt(2 * highest) and verbose:
        click.echo(
            f"xi_max={grid.xi_max} truncates the classically forbidden region of level "
            f"{n_max}; raise it above {2 * np.sqrt(2 * highest):.3g}.",
            err=True,
        )
    result = eig_sym_tridiagonal(radial_operator(K, grid), count=n_max + 1)
    rows = []
    for n, discrete in enumerate(result.eigenvalues):
        exact = 2.0 * (2 * n + K + 1)
        rows.append(
            {
                "n": n,
                "K": K,
                "closed_form": exact,
                "discrete": float(discrete),
                "relative_error": float(abs(discrete - exact) / exact),
            }
        )
    return rows


def radial_convergence(
    K: float, n_max: int, xi_max: float, sizes: list[int]
) -> dict[str, list]:
    """
    Largest relative error per grid size and the observed order
    log2(e_N / e_2N) of each refinement.
    """
    errors = []
    for size in sizes:
        rows = compare_radial_spectrum(K, n_max, RadialGrid(xi_max=xi_max, N=size))
        errors.append(max(row["relative_error"] for row in rows))
    orders = [
        float(np.log2(coarse / fine)) if fine > 0 else None
        for coarse, fine in zip(errors, errors[1:])
    ]
    return {"sizes": list(sizes), "errors": errors, "orders": orders}


def flux_shift(inner: list[dict], outer: list[dict]) -> list[float]:
    """Level-by-level differences of two discrete spectra."""
    return [a["discrete"] - b["discrete"] for a, b in zip(inner, outer)]


def angular_eig(N: int, params: DunklParams, cutoff: float | None = None) -> np.ndarray:
    """
    Real eigenvalues of the grid J_phi, ascending.

    Eigenvalues with a non-negligible imaginary part or a magnitude above
    `cutoff` (a quarter of the Nyquist harmonic N/2 by default) are discarded
    as unresolved.
    """
    cutoff = N / 8 if cutoff is None else cutoff
    values = np.linalg.eigvals(angular_operator("J_phi", N, params).matrix)
    real = np.abs(values.imag) <= 1e-6 * np.maximum(1.0, np.abs(values.real))
    kept = values.real[real & (np.abs(values.real) <= cutoff + 1e-9 * max(1.0, cutoff))]
    return np.sort(kept)


def compare_angular_spectrum(N: int, params: DunklParams) -> list[dict]:
    """
    Closed-form eigenvalues of both sectors with |lambda| <= N/8 against the
    nearest grid eigenvalue.
    """
    cutoff = N / 8
    grid = angular_eig(N, params, cutoff=cutoff + 1.0)
    rows = []
    for eps in (1, -1):
        for mode in mode_battery(params, eps, l_max=cutoff / 2):
            if abs(mode.lam) > cutoff:
                continue
            nearest = float(grid[np.argmin(np.abs(grid - mode.lam))]) if grid.size else np.nan
            rows.append(
                {
                    "eps": eps,
                    "l": mode.l,
                    "sign": mode.sign,
                    "closed_form": mode.lam,
                    "discrete": nearest,
                    "abs_error": abs(nearest - mode.lam),
                }
            )
    return rows
