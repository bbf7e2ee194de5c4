"""
Special functions used by the angular and radial modes: log-gamma, Jacobi and
generalized Laguerre polynomials via three-term recurrences, and the
normalization constants of the angular eigenfunctions.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, roots_jacobi

from .entities import DunklParams, ParitySector
from .errors import AdmissibilityError, DomainError

__all__ = [
    "PolyEval",
    "ln_gamma",
    "jacobi_P",
    "laguerre_L",
    "laguerre_L2",
    "jacobi_norm_sq",
    "angular_norms",
    "dunkl_angular_rule",
]

ArrayLike = float | np.ndarray


@dataclass(frozen=True)
class PolyEval:
    """Value and first derivative of a polynomial of given degree."""

    degree: int
    value: ArrayLike
    derivative: ArrayLike


def ln_gamma(x: ArrayLike) -> ArrayLike:
    """
    Natural logarithm of the gamma function for positive arguments.

    Parameters
    ----------
    x : float or np.ndarray
        Positive argument(s).

    Returns
    -------
    float or np.ndarray
        ln Gamma(x).

    Raises
    ------
    DomainError
        If any argument is not strictly positive.
    """
    values = np.asarray(x, dtype=float)
    if np.any(values <= 0) or np.any(~np.isfinite(values)):
        raise DomainError(f"ln_gamma requires positive finite arguments, got {x}")
    result = gammaln(values)
    return float(result) if result.ndim == 0 else result


def _check_order(n: int) -> None:
    if n < 0 or int(n) != n:
        raise DomainError(f"polynomial degree must be a nonnegative integer, got {n}")


def _jacobi_value(n: int, a: float, b: float, x: ArrayLike) -> ArrayLike:
    x = np.asarray(x, dtype=float)
    previous = np.ones_like(x)
    if n == 0:
        return previous
    current = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c1 = 2.0 * k * (k + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        previous, current = current, (c2 * current - c3 * previous) / c1
    return current


def _laguerre_value(n: int, alpha: float, x: ArrayLike) -> ArrayLike:
    x = np.asarray(x, dtype=float)
    previous = np.ones_like(x)
    if n <= 0:
        # L_{-1} is identically zero, which the derivative formulas rely on
        return previous if n == 0 else np.zeros_like(x)
    current = 1.0 + alpha - x
    for k in range(1, n):
        following = (2 * k + 1 + alpha - x) * current - (k + alpha) * previous
        previous, current = current, following / (k + 1)
    return current


def _scalar(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def jacobi_P(n: int, a: float, b: float, x: ArrayLike) -> PolyEval:
    """
    Jacobi polynomial P_n^(a,b)(x) and its derivative.

    The derivative uses d/dx P_n^(a,b) = (n + a + b + 1)/2 P_{n-1}^(a+1,b+1).

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    a, b : float
        Jacobi parameters, both > -1.
    x : float or np.ndarray
        Evaluation point(s).

    Returns
    -------
    PolyEval
        Degree, value and derivative with the shape of `x`.

    Raises
    ------
    DomainError
        On a negative degree or a parameter not exceeding -1.
    """
    _check_order(n)
    if a <= -1 or b <= -1:
        raise DomainError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")
    value = _jacobi_value(n, a, b, x)
    if n == 0:
        derivative = np.zeros_like(value)
    else:
        derivative = 0.5 * (n + a + b + 1.0) * _jacobi_value(n - 1, a + 1.0, b + 1.0, x)
    return PolyEval(degree=n, value=_scalar(value), derivative=_scalar(derivative))


def laguerre_L(n: int, alpha: float, x: ArrayLike) -> PolyEval:
    """
    Generalized Laguerre polynomial L_n^alpha(x) and its derivative
    -L_{n-1}^(alpha+1)(x).

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    alpha : float
        Laguerre parameter, > -1.
    x : float or np.ndarray
        Evaluation point(s).

    Returns
    -------
    PolyEval
        Degree, value and derivative with the shape of `x`.

    Raises
    ------
    DomainError
        On a negative degree or alpha not exceeding -1.
    """
    _check_order(n)
    if alpha <= -1:
        raise DomainError(f"Laguerre parameter must exceed -1, got alpha={alpha}")
    value = _laguerre_value(n, alpha, x)
    derivative = -_laguerre_value(n - 1, alpha + 1.0, x)
    return PolyEval(degree=n, value=_scalar(value), derivative=_scalar(derivative))


def laguerre_L2(n: int, alpha: float, x: ArrayLike) -> ArrayLike:
    """Second derivative of L_n^alpha, equal to L_{n-2}^(alpha+2)."""
    _check_order(n)
    if alpha <= -1:
        raise DomainError(f"Laguerre parameter must exceed -1, got alpha={alpha}")
    return _scalar(_laguerre_value(n - 2, alpha + 2.0, x))


def jacobi_norm_sq(n: int, a: float, b: float) -> float:
    """
    Squared norm of P_n^(a,b) under the weight (1-x)^a (1+x)^b on [-1, 1].

    Parameters
    ----------
    n : int
        Degree.
    a, b : float
        Jacobi parameters, both > -1.

    Returns
    -------
    float
        h_n = 2^(a+b+1) Gamma(n+a+1) Gamma(n+b+1) / ((2n+a+b+1) Gamma(n+a+b+1) n!).
    """
    _check_order(n)
    if a <= -1 or b <= -1:
        raise DomainError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")
    log_h = (a + b + 1) * np.log(2.0) + ln_gamma(n + a + 1) + ln_gamma(n + b + 1)
    if n == 0:
        # (a+b+1) Gamma(a+b+1) folded into Gamma(a+b+2), valid also at a+b+1 = 0
        log_h -= ln_gamma(a + b + 2)
    else:
        log_h -= np.log(2 * n + a + b + 1) + ln_gamma(n + a + b + 1) + ln_gamma(n + 1)
    return float(np.exp(log_h))


def _log_ratio(numerator: list[float], denominator: list[float]) -> float:
    """Log of a product of gamma functions over another, with domain checks."""
    arguments = numerator + denominator
    if min(arguments) <= 0:
        raise DomainError(f"gamma argument at or below a pole: {min(arguments)}")
    return sum(ln_gamma(x) for x in numerator) - sum(ln_gamma(x) for x in denominator)


def angular_norms(sector: ParitySector, l: float, params: DunklParams) -> tuple[float, float]:
    """
    Normalization constants of the two Jacobi terms of an angular eigenfunction.

    For eps=+1 returns (A_l, A'_l), for eps=-1 returns (B_l, B'_l). Each
    constant is the inverse norm of its term under the Dunkl angular measure
    |cos phi|^(2 nu1) |sin phi|^(2 nu2) dphi on [-pi, pi). For eps=+1 and l=0
    the second term is absent and 0.0 is returned in its place.

    Parameters
    ----------
    sector : ParitySector
        Parity sector of the mode.
    l : float
        Quantum index admissible for the sector.
    params : DunklParams
        Deformation parameters.

    Returns
    -------
    tuple[float, float]
        Positive normalization constants, computed in log space.

    Raises
    ------
    AdmissibilityError
        If `l` does not lie on the lattice of the sector.
    DomainError
        If any gamma argument is not positive.
    """
    nu1, nu2 = params.nu1, params.nu2
    nu = nu1 + nu2
    if sector.eps == 1:
        if l < 0 or l != int(l):
            raise AdmissibilityError(f"eps=+1 requires a nonnegative integer l, got {l}")
        l = int(l)
        if l == 0:
            log_a0 = _log_ratio([nu + 1], [nu1 + 0.5, nu2 + 0.5]) - np.log(2.0)
            return float(np.exp(0.5 * log_a0)), 0.0
        log_pre = np.log(2 * l + nu) - np.log(2.0)
        log_a = log_pre + _log_ratio([l + nu, l + 1], [l + nu1 + 0.5, l + nu2 + 0.5])
        log_b = log_pre + _log_ratio([l + nu + 1, l], [l + nu1 + 0.5, l + nu2 + 0.5])
        return float(np.exp(0.5 * log_a)), float(np.exp(0.5 * log_b))
    if l < 0.5 or (l - 0.5) != int(l - 0.5):
        raise AdmissibilityError(f"eps=-1 requires a half-odd-integer l >= 1/2, got {l}")
    log_pre = np.log(2 * l + nu) - np.log(2.0)
    log_b = log_pre + _log_ratio([l + nu + 0.5, l + 0.5], [l + nu1 + 1, l + nu2])
    log_b_prime = log_pre + _log_ratio([l + nu + 0.5, l + 0.5], [l + nu1, l + nu2 + 1])
    return float(np.exp(0.5 * log_b)), float(np.exp(0.5 * log_b_prime))


def dunkl_angular_rule(params: DunklParams, order: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Quadrature rule on [-pi, pi) for the Dunkl angular measure.

    Gauss-Jacobi nodes in t = cos(2 phi) are mapped to the first quadrant and
    replicated under phi -> -phi, pi - phi and phi - pi. The rule integrates
    exactly any product of two angular modes whose Jacobi degrees sum below
    2 * order - 2.

    Parameters
    ----------
    params : DunklParams
        Deformation parameters fixing the weight.
    order : int
        Number of Gauss-Jacobi nodes per quadrant.

    Returns
    -------
    phi : np.ndarray
        Nodes, 4 * order of them.
    weights : np.ndarray
        Matching weights, summing to the total measure of the circle.
    """
    t, w = roots_jacobi(order, params.nu2 - 0.5, params.nu1 - 0.5)
    quadrant = 0.5 * np.arccos(t)
    scale = 2.0 ** (-params.nu1 - params.nu2 - 1.0)
    phi = np.concatenate([quadrant, -quadrant, np.pi - quadrant, quadrant - np.pi])
    weights = np.tile(scale * w, 4)
    return phi, weights
