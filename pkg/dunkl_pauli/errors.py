"""
Exception hierarchy shared by the numerical modules and the CLI.
"""

__all__ = [
    "DunklError",
    "DomainError",
    "AdmissibilityError",
    "ConstraintViolationError",
    "BranchError",
    "ConsistencyError",
    "NormalizabilityError",
    "GridError",
    "SingularityError",
    "ProfileDomainError",
    "CoverageError",
    "QuadratureOrderError",
    "ConvergenceError",
    "FamilyError",
]


class DunklError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(DunklError, ValueError):
    """An argument lies outside the domain of a function or formula."""


class AdmissibilityError(DomainError):
    """A quantum index is not on the lattice allowed for its parity sector."""


class ConstraintViolationError(DunklError):
    """The flux-compatibility relation nu1 + eps * nu2 = 0 does not hold."""


class BranchError(DunklError):
    """The spin projection does not co-align with the sign branch of lambda."""


class ConsistencyError(DunklError):
    """Two independent closed forms for the same quantity disagree."""


class NormalizabilityError(DunklError):
    """A radial index K <= -1 would make the mode non-normalizable."""


class GridError(DunklError):
    """A discretization is too coarse or malformed for the requested operation."""


class SingularityError(DunklError):
    """The auxiliary function collapsed towards zero during integration."""

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


class ProfileDomainError(DomainError):
    """A mass profile is non-positive somewhere on the integration window."""


class CoverageError(DunklError):
    """A requested time lies outside the sampled trajectory."""


class QuadratureOrderError(DunklError):
    """The requested radial index exceeds the supported quadrature order."""


class ConvergenceError(DunklError):
    """An iterative eigensolver did not converge within its iteration cap."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class FamilyError(DunklError):
    """An operation is defined only for a different profile family."""
