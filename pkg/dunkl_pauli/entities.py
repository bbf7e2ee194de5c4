"""
Entity (data) models with in-built type validation.
"""

from typing import Any, Literal

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PrivateAttr,
    computed_field,
    field_validator,
    model_validator,
)
from scipy.interpolate import PchipInterpolator

__all__ = [
    "DunklParams",
    "ParitySector",
    "DeltaShift",
    "FluxSpin",
    "AngularMode",
    "RadialMode",
    "AngularGridOperator",
    "RadialGrid",
    "SymmetricTridiagonal",
    "SymmetricEigenResult",
    "ProfileTable",
    "TimeProfiles",
    "ErmakovTrajectory",
    "StateSpec",
    "PhaseRecord",
    "CheckResult",
    "AbReport",
    "MatchingReport",
    "QuantumNumbers",
    "GridSettings",
    "TrajectorySettings",
    "RunConfig",
    "Settings",
]

_ARRAYS = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class DunklParams(BaseModel):
    """Wigner deformation pair of the two reflection axes."""

    model_config = ConfigDict(frozen=True)

    nu1: float = Field(
        default=0.0,
        gt=-0.5,
        description="Deformation strength of the x-axis reflection term.",
        examples=[0.3],
    )
    nu2: float = Field(
        default=0.0,
        gt=-0.5,
        description="Deformation strength of the y-axis reflection term.",
        examples=[-0.3],
    )


class ParitySector(BaseModel):
    """
    Reflection eigenvalues of a mode.

    For angular modes, (eps1, eps2) is the parity of the real (leading) component,
    the imaginary component carrying the opposite pair. Only the product `eps` is
    conserved by the angular operator.
    """

    model_config = ConfigDict(frozen=True)

    eps1: Literal[-1, 1] = Field(default=1, description="Eigenvalue of R1 (x -> -x).")
    eps2: Literal[-1, 1] = Field(default=1, description="Eigenvalue of R2 (y -> -y).")

    @computed_field
    @property
    def eps(self) -> int:
        """Joint eigenvalue of R1 R2."""
        return self.eps1 * self.eps2


class DeltaShift(BaseModel):
    """Shift delta = 1/2 + nu1 + nu2 entering the radial momentum."""

    model_config = ConfigDict(frozen=True)

    delta: float = Field(gt=-0.5, description="Radial momentum shift.", examples=[0.5])

    @classmethod
    def from_params(cls, params: DunklParams) -> "DeltaShift":
        return cls(delta=0.5 + params.nu1 + params.nu2)


class FluxSpin(BaseModel):
    """Aharonov-Bohm flux and spin projection."""

    model_config = ConfigDict(frozen=True)

    vartheta: float = Field(
        default=0.0,
        description="Total flux threading the filament, in natural units.",
        examples=[0.6],
    )
    m_s: Literal[-1, 1] = Field(default=1, description="Eigenvalue of sigma_z.")


class AngularMode(BaseModel):
    """Eigenmode of the Dunkl angular operator J_phi."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    sector: ParitySector
    l: float = Field(
        description="Quantum index: integer for eps=+1, half-odd-integer for eps=-1.",
        examples=[1, 0.5],
    )
    sign: Literal[-1, 1] = Field(default=1, description="Sign branch of lambda.")
    lam: float = Field(alias="lambda", description="Eigenvalue of J_phi.")
    params: DunklParams

    @model_validator(mode="after")
    def _check_eigenvalue(self) -> "AngularMode":
        # deferred import, the closed form lives with the other angular formulas
        from .angular_spectrum import lambda_of

        expected = lambda_of(self.sector, self.l, self.sign, self.params)
        if not np.isclose(self.lam, expected, rtol=1e-12, atol=1e-12):
            raise ValueError(f"lambda={self.lam} does not match closed form {expected}")
        return self


class RadialMode(BaseModel):
    """Radial eigenmode of the invariant in one region of the regularized problem."""

    model_config = ConfigDict(frozen=True)

    region: Literal["inner", "outer"] = Field(
        description="Region relative to the regularization radius: inner (xi<R) or outer (xi>R)."
    )
    n: int = Field(ge=0, description="Radial quantum number.")
    K: float = Field(gt=-1.0, description="Effective centrifugal index.")
    E: float = Field(description="Invariant eigenvalue 2n + K + 1.")
    norm_prefactor: float = Field(default=1.0, description="Amplitude N of the mode.")
    R_reg: float = Field(default=1e-2, gt=0.0, description="Regularization radius.")
    partner_K: float | None = Field(
        default=None,
        description="Index of the other region when the mode is matched at R_reg; the outer "
        "mode then carries the continuity ratio N+/N- in its amplitude.",
    )

    @model_validator(mode="after")
    def _check_spectrum(self) -> "RadialMode":
        if abs(self.E - (2 * self.n + self.K + 1)) > 1e-12:
            raise ValueError(f"E={self.E} differs from 2n+K+1={2 * self.n + self.K + 1}")
        return self


class AngularGridOperator(BaseModel):
    """Dense operator on the reflection-symmetric offset angular grid."""

    model_config = _ARRAYS

    N: int = Field(description="Number of grid nodes, divisible by 4.", examples=[128])
    label: Literal["B_phi", "J_phi", "R1", "R2", "identity"]
    nodes: np.ndarray = Field(description="Nodes phi_k = -pi + (k + 1/2) 2 pi / N.")
    matrix: np.ndarray

    def __matmul__(self, other: np.ndarray) -> np.ndarray:
        return self.matrix @ other


class RadialGrid(BaseModel):
    """Uniform radial grid xi_i = i h, i = 1 ... N-1, Dirichlet at both ends."""

    model_config = ConfigDict(frozen=True)

    xi_max: float = Field(gt=0.0, description="Truncation radius.", examples=[12.0])
    N: int = Field(ge=4, description="Number of intervals.", examples=[8000])

    @property
    def h(self) -> float:
        return self.xi_max / self.N

    @property
    def nodes(self) -> np.ndarray:
        return self.h * np.arange(1, self.N)


class SymmetricTridiagonal(BaseModel):
    """Symmetric tridiagonal matrix stored by its diagonals."""

    model_config = _ARRAYS

    diag: np.ndarray
    off: np.ndarray

    @model_validator(mode="after")
    def _check_shapes(self) -> "SymmetricTridiagonal":
        if self.off.shape[0] != max(self.diag.shape[0] - 1, 0):
            raise ValueError("off-diagonal must be one shorter than the diagonal")
        return self

    @property
    def size(self) -> int:
        return int(self.diag.shape[0])

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.off * v[1:]
        out[1:] += self.off * v[:-1]
        return out


class SymmetricEigenResult(BaseModel):
    """Eigenvalues (ascending) with optional eigenvectors and their residuals."""

    model_config = _ARRAYS

    eigenvalues: np.ndarray
    vectors: np.ndarray | None = None
    residuals: np.ndarray | None = Field(
        default=None, description="Per-pair ||Av - lambda v||_inf / ||v||_inf."
    )
    method: Literal["ql", "bisection"]
    iterations: int = Field(description="Total QL sweeps or Sturm counts performed.")


class ProfileTable(BaseModel):
    """Sampled mass and frequency profiles."""

    model_config = ConfigDict(frozen=True)

    times: list[float] = Field(min_length=2, description="Strictly increasing sample times.")
    mass: list[float] = Field(min_length=2, description="Mass samples, all positive.")
    omega: list[float] = Field(min_length=2, description="Frequency samples.")

    @model_validator(mode="after")
    def _check_table(self) -> "ProfileTable":
        if not len(self.times) == len(self.mass) == len(self.omega):
            raise ValueError("times, mass and omega must have the same length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("table times must be strictly increasing")
        if min(self.mass) <= 0:
            raise ValueError("tabulated mass must be positive at every sample")
        return self


class TimeProfiles(BaseModel):
    """
    Time-dependent mass M(t) and frequency Omega(t).

    Families:
    - constant: M = M0, Omega = Omega0;
    - exponential-mass: M = M0 exp(gamma t), Omega = Omega0;
    - modulated-frequency: M = M0, Omega^2 = Omega0^2 (1 + a cos(w_d t)), |a| < 1;
    - tabulated: monotone cubic interpolation of a sample table.
    """

    model_config = ConfigDict(frozen=True)

    family: Literal["constant", "exponential-mass", "modulated-frequency", "tabulated"] = (
        "constant"
    )
    M0: float = Field(default=1.0, gt=0.0, description="Mass scale.")
    Omega0: float = Field(default=1.0, description="Frequency scale.")
    gamma: float = Field(default=0.0, description="Mass growth rate (exponential-mass).")
    modulation: float = Field(
        default=0.0, gt=-1.0, lt=1.0, description="Relative modulation a of Omega^2."
    )
    drive_frequency: float = Field(default=1.0, description="Modulation frequency w_d.")
    table: ProfileTable | None = None

    _mass_interp: Any = PrivateAttr(default=None)
    _omega_interp: Any = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_family(self) -> "TimeProfiles":
        if self.family == "tabulated":
            if self.table is None:
                raise ValueError("tabulated profiles require a table")
            self._mass_interp = PchipInterpolator(self.table.times, self.table.mass)
            self._omega_interp = PchipInterpolator(self.table.times, self.table.omega)
            return self
        # M_dot must be the derivative of M
        t = np.array([0.0, 0.7, 2.5])
        step = 1e-5
        finite = (self.mass(t + step) - self.mass(t - step)) / (2 * step)
        if not np.allclose(finite, self.mass_dot(t), rtol=1e-6, atol=1e-8):
            raise ValueError("mass derivative is inconsistent with the mass profile")
        return self

    def mass(self, t: float | np.ndarray) -> float | np.ndarray:
        match self.family:
            case "exponential-mass":
                return self.M0 * np.exp(self.gamma * np.asarray(t, dtype=float))
            case "tabulated":
                return self._mass_interp(t)
            case _:
                return self.M0 + 0.0 * np.asarray(t, dtype=float)

    def mass_dot(self, t: float | np.ndarray) -> float | np.ndarray:
        match self.family:
            case "exponential-mass":
                return self.gamma * self.mass(t)
            case "tabulated":
                return self._mass_interp.derivative()(t)
            case _:
                return 0.0 * np.asarray(t, dtype=float)

    def omega_sq(self, t: float | np.ndarray) -> float | np.ndarray:
        match self.family:
            case "modulated-frequency":
                phase = self.drive_frequency * np.asarray(t, dtype=float)
                return self.Omega0**2 * (1.0 + self.modulation * np.cos(phase))
            case "tabulated":
                return self._omega_interp(t) ** 2
            case _:
                return self.Omega0**2 + 0.0 * np.asarray(t, dtype=float)

    def omega(self, t: float | np.ndarray) -> float | np.ndarray:
        return np.sqrt(self.omega_sq(t))

    def window(self) -> tuple[float, float] | None:
        """Interval where the profile is defined, None if unbounded."""
        if self.table is None:
            return None
        return self.table.times[0], self.table.times[-1]


class ErmakovTrajectory(BaseModel):
    """Time-sampled solution (rho, rho_dot) of the Ermakov-Pinney equation."""

    model_config = _ARRAYS

    times: np.ndarray
    rho: np.ndarray
    rho_dot: np.ndarray
    profiles: TimeProfiles
    tol: float = Field(description="Local error tolerance used by the integrator.")
    steps: int = Field(ge=0, description="Accepted integrator steps.")
    evaluations: int = Field(ge=0, description="Right-hand-side evaluations.")

    @model_validator(mode="after")
    def _check_samples(self) -> "ErmakovTrajectory":
        if np.any(self.rho <= 0):
            raise ValueError("rho must stay positive")
        steps = np.diff(self.times)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("samples must be strictly time-ordered")
        return self

    @property
    def mass(self) -> np.ndarray:
        return np.asarray(self.profiles.mass(self.times), dtype=float)


class StateSpec(BaseModel):
    """Quantum numbers and component modes of one invariant eigenstate."""

    model_config = ConfigDict(frozen=True)

    angular: AngularMode
    radial: RadialMode
    spin: FluxSpin
    n: int = Field(ge=0)


class PhaseRecord(BaseModel):
    """Lewis-Riesenfeld phase sampled on a trajectory grid."""

    model_config = _ARRAYS

    times: np.ndarray
    eta: np.ndarray
    eta_dyn: np.ndarray | None = None
    eta_geo: np.ndarray | None = None
    E: float = Field(description="Invariant eigenvalue the phase was computed for.")


class CheckResult(BaseModel):
    """Named numerical check with its residual, threshold and verdict."""

    name: str
    residual: float
    threshold: float
    passed: bool
    details: dict = Field(default_factory=dict)


class AbReport(BaseModel):
    """Outcome of testing the flux-compatibility relation for a sector."""

    accepted: bool
    params: DunklParams
    sector: ParitySector
    residual: float = Field(description="|nu1 + eps * nu2|.")
    relation: str = Field(description="Relation the parameters must satisfy.")


class MatchingReport(BaseModel):
    """Continuity and derivative-jump diagnostics at the regularization radius."""

    K_minus: float
    K_plus: float
    n: int
    radii: list[float]
    amplitude_ratio: list[float] = Field(description="Exact N+/N- from continuity.")
    amplitude_ratio_leading: list[float] = Field(description="R^(vartheta m_s).")
    defects: list[float] = Field(description="Relative derivative-jump defect per radius.")
    orders: list[float | None] = Field(description="Observed order per halving.")


class QuantumNumbers(BaseModel):
    """Quantum numbers requested by a run."""

    n: int = Field(default=0, ge=0, description="Radial quantum number of a single state.")
    n_max: int = Field(default=4, ge=0, description="Largest radial quantum number in tables.")
    l: float = Field(default=1.0, ge=0.0, description="Angular quantum index.")
    sign: Literal[-1, 1] = Field(default=1, description="Sign branch of lambda.")
    l_max: float = Field(default=4.0, ge=0.0, description="Largest l in angular tables.")


class GridSettings(BaseModel):
    """Discretization sizes for oracles and sampled outputs."""

    angular_n: int = Field(default=256, ge=32, description="Angular grid size (multiple of 4).")
    radial_n: int = Field(default=8000, ge=100, description="Radial oracle intervals.")
    xi_max: float = Field(default=12.0, gt=0.0, description="Radial oracle truncation.")
    r_max: float = Field(default=6.0, gt=0.0, description="Largest r in wavefunction samples.")
    r_points: int = Field(default=121, ge=2, description="Number of r samples.")
    phi_points: int = Field(default=64, ge=4, description="Number of phi samples (multiple of 4).")
    times: list[float] = Field(default=[0.0], description="Sample times for wavefunctions.")

    @field_validator("angular_n", "phi_points")
    @classmethod
    def _multiple_of_four(cls, value: int) -> int:
        if value % 4:
            raise ValueError("angular grid sizes must be divisible by 4")
        return value


class TrajectorySettings(BaseModel):
    """Integration window and initial data of the auxiliary equation."""

    t_end: float = Field(default=10.0, gt=0.0, description="End of the integration window.")
    samples: int = Field(default=1001, ge=3, description="Number of output samples.")
    rho0: float | None = Field(
        default=None, gt=0.0, description="Initial rho; equilibrium value when omitted."
    )
    rho_dot0: float = Field(default=0.0, description="Initial rho derivative.")


class RunConfig(BaseModel):
    """
    Complete configuration of a CLI run. The defaults reproduce the reference
    configuration (nu1 = -nu2 = 0.3, eps = +1, l = 1, vartheta = 0.6, m_s = +1).
    """

    params: DunklParams = DunklParams(nu1=0.3, nu2=-0.3)
    sector: ParitySector = ParitySector(eps1=1, eps2=1)
    flux: FluxSpin = FluxSpin(vartheta=0.6, m_s=1)
    quantum: QuantumNumbers = QuantumNumbers()
    profile: TimeProfiles = TimeProfiles()
    grids: GridSettings = GridSettings()
    trajectory: TrajectorySettings = TrajectorySettings()
    tol: float = Field(default=1e-10, ge=1e-12, le=1e-4, description="Integrator tolerance.")
    R_reg: float = Field(default=1e-2, gt=0.0, le=0.1, description="Regularization radius.")
    seed: int = Field(default=0, description="Seed of randomized identity sweeps.")

    @model_validator(mode="after")
    def _check_index(self) -> "RunConfig":
        # deferred import, the lattice rules live with the angular formulas
        from .angular_spectrum import check_admissible

        check_admissible(self.sector, self.quantum.l)
        return self


class Settings(BaseModel):
    """Output settings controlling destination, format and verbosity."""

    out: str | None = Field(
        default=None,
        description="Path to write the main output to. Standard output when omitted.",
    )
    format: Literal["json", "csv"] = Field(default="json", description="Tabular output format.")
    verbose: bool = Field(default=False, description="When True, provide more output.")
