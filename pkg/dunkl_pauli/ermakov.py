"""
Ermakov-Pinney auxiliary equation

    rho'' + (M'/M) rho' + Omega^2 rho = 1 / (M^2 rho^3)

for the scaling function of the invariant, with its closed-form and
conservation oracles for constant coefficients.
"""

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .entities import ErmakovTrajectory, TimeProfiles
from .errors import (
    CoverageError,
    DomainError,
    FamilyError,
    ProfileDomainError,
    SingularityError,
)

__all__ = [
    "COLLAPSE_RADIUS",
    "equilibrium_rho",
    "solve",
    "invariant_drift",
    "pinney_oracle",
    "time_reversal_defect",
    "interpolate",
    "to_frame",
]

COLLAPSE_RADIUS = 1e-8


def equilibrium_rho(profiles: TimeProfiles, t: float = 0.0) -> float:
    """Adiabatic seed (M(t) |Omega(t)|)^(-1/2)."""
    product = float(profiles.mass(t)) * float(np.abs(profiles.omega(t)))
    if product <= 0:
        raise ProfileDomainError(f"M Omega must be positive for the equilibrium seed at t={t}")
    return product**-0.5


def _rhs(profiles: TimeProfiles):
    def rhs(t: float, y: np.ndarray) -> list[float]:
        rho, rho_dot = y
        mass = float(profiles.mass(t))
        if mass <= 0:
            raise ProfileDomainError(f"mass profile is not positive at t={t}: M={mass}")
        damping = float(profiles.mass_dot(t)) / mass
        force = -damping * rho_dot - float(profiles.omega_sq(t)) * rho + 1.0 / (mass**2 * rho**3)
        return [rho_dot, force]

    return rhs


def _collapse(t: float, y: np.ndarray) -> float:
    return y[0] - COLLAPSE_RADIUS


_collapse.terminal = True
_collapse.direction = -1


def solve(
    profiles: TimeProfiles,
    rho0: float | None = None,
    rho_dot0: float = 0.0,
    t_end: float = 10.0,
    tol: float = 1e-10,
    samples: int = 1001,
    t_start: float = 0.0,
) -> ErmakovTrajectory:
    """
    Integrate the Ermakov-Pinney equation with an adaptive explicit
    Runge-Kutta scheme (DOP853).

    Parameters
    ----------
    profiles : TimeProfiles
        Mass and frequency profiles.
    rho0 : float, optional
        Initial value, the equilibrium seed (M Omega)^(-1/2) at `t_start` when
        omitted.
    rho_dot0 : float
        Initial derivative.
    t_end : float
        End of the window; may precede `t_start` for backward integration.
    tol : float
        Relative local error tolerance in [1e-12, 1e-4]; the absolute tolerance
        is tol / 100.
    samples : int
        Number of equally spaced output samples, end points included.
    t_start : float
        Start of the window.

    Returns
    -------
    ErmakovTrajectory
        Sampled (rho, rho_dot) with step-control metadata.

    Raises
    ------
    DomainError
        On a non-positive rho0, a tolerance out of range or an empty window.
    ProfileDomainError
        If the mass is not positive somewhere on the window or a tabulated
        profile does not cover it.
    SingularityError
        If rho falls below 1e-8; carries the time of collapse.
    """
    if not 1e-12 <= tol <= 1e-4:
        raise DomainError(f"tolerance must lie in [1e-12, 1e-4], got {tol}")
    if t_end == t_start:
        raise DomainError("integration window is empty")
    window = profiles.window()
    if window is not None:
        low, high = sorted((t_start, t_end))
        if low < window[0] or high > window[1]:
            raise ProfileDomainError(
                f"window [{low}, {high}] exceeds the tabulated range {list(window)}"
            )
    if rho0 is None:
        rho0 = equilibrium_rho(profiles, t_start)
    if rho0 <= 0:
        raise DomainError(f"rho0 must be positive, got {rho0}")
    times = np.linspace(t_start, t_end, samples)
    solution = solve_ivp(
        _rhs(profiles),
        (t_start, t_end),
        [rho0, rho_dot0],
        method="DOP853",
        rtol=tol,
        atol=tol * 1e-2,
        dense_output=True,
        events=_collapse,
    )
    if solution.status == 1:
        time = float(solution.t_events[0][0])
        raise SingularityError(f"rho collapsed below {COLLAPSE_RADIUS} at t={time}", time)
    if solution.status != 0:
        time = float(solution.t[-1])
        raise SingularityError(f"integration stopped at t={time}: {solution.message}", time)
    rho, rho_dot = solution.sol(times)
    return ErmakovTrajectory(
        times=times,
        rho=rho,
        rho_dot=rho_dot,
        profiles=profiles,
        tol=tol,
        steps=len(solution.t) - 1,
        evaluations=solution.nfev,
    )


def invariant_drift(traj: ErmakovTrajectory) -> float:
    """
    max |Q(t) - Q(0)| / |Q(0)| for Q = rho'^2/2 + Omega^2 rho^2/2 + 1/(2 M^2 rho^2),
    conserved when M and Omega are constant.

    Raises
    ------
    FamilyError
        For profiles other than the constant family.
    """
    if traj.profiles.family != "constant":
        raise FamilyError(
            f"the conserved quantity needs constant profiles, got {traj.profiles.family}"
        )
    mass, omega_sq = traj.profiles.M0, traj.profiles.Omega0**2
    q = 0.5 * traj.rho_dot**2 + 0.5 * omega_sq * traj.rho**2 + 0.5 / (mass**2 * traj.rho**2)
    return float(np.max(np.abs(q - q[0])) / abs(q[0]))


def pinney_oracle(
    Omega0: float, M0: float, rho0: float, rho_dot0: float, t: float | np.ndarray
) -> float | np.ndarray:
    """
    Closed-form constant-coefficient solution built from cos and sin solutions
    of u'' + Omega0^2 u = 0:

        rho^2 = a cos^2 + 2 b cos sin / Omega0 + c sin^2 / Omega0^2,

    with a = rho0^2, b = rho0 rho_dot0 and c = (1/M0^2 + b^2) / a, so that the
    Wronskian condition produces the 1/(M0^2 rho^3) source.
    """
    t = np.asarray(t, dtype=float)
    a = rho0**2
    b = rho0 * rho_dot0
    c = (1.0 / M0**2 + b**2) / a
    cos, sin = np.cos(Omega0 * t), np.sin(Omega0 * t)
    rho = np.sqrt(a * cos**2 + 2 * b * cos * sin / Omega0 + c * sin**2 / Omega0**2)
    return float(rho) if rho.ndim == 0 else rho


def time_reversal_defect(traj: ErmakovTrajectory) -> float:
    """Integrate back from the last sample to the first and return the largest
    deviation from the initial (rho, rho_dot)."""
    back = solve(
        traj.profiles,
        rho0=float(traj.rho[-1]),
        rho_dot0=float(traj.rho_dot[-1]),
        t_start=float(traj.times[-1]),
        t_end=float(traj.times[0]),
        tol=traj.tol,
        samples=len(traj.times),
    )
    return float(max(abs(back.rho[-1] - traj.rho[0]), abs(back.rho_dot[-1] - traj.rho_dot[0])))


def interpolate(traj: ErmakovTrajectory, t: float | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Cubic Hermite interpolation of (rho, rho_dot) between samples.

    Raises
    ------
    CoverageError
        If any requested time lies outside the trajectory.
    """
    order = np.argsort(traj.times)
    times = traj.times[order]
    t = np.asarray(t, dtype=float)
    if np.any(t < times[0]) or np.any(t > times[-1]):
        raise CoverageError(f"times outside the trajectory window [{times[0]}, {times[-1]}]")
    rho, rho_dot = traj.rho[order], traj.rho_dot[order]
    mass = traj.profiles.mass(times)
    accel = (
        -traj.profiles.mass_dot(times) / mass * rho_dot
        - traj.profiles.omega_sq(times) * rho
        + 1.0 / (mass**2 * rho**3)
    )
    rho_spline = CubicHermiteSpline(times, rho, rho_dot)
    rho_dot_spline = CubicHermiteSpline(times, rho_dot, accel)
    return rho_spline(t), rho_dot_spline(t)


def to_frame(traj: ErmakovTrajectory) -> pd.DataFrame:
    """Trajectory as a data frame with columns t, rho, rho_dot."""
    return pd.DataFrame({"t": traj.times, "rho": traj.rho, "rho_dot": traj.rho_dot})
