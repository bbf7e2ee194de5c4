"""
Angular identity J_phi^2 = 2 B_phi + 2 nu1 nu2 (1 - R1 R2) on the periodic grid.
"""

from ..dunkl_ops import check_J_squared
from ..entities import CheckResult
from ._base import BaseCheck

GRID_SIZES = (32, 64, 128)


class Check(BaseCheck):
    """Residual at N=128 with the decay of the residual under N-doubling."""

    name = "j_squared"

    def run(self) -> CheckResult:
        reports = [check_J_squared(size, self.config.params) for size in GRID_SIZES]
        final = reports[-1]
        return CheckResult(
            name=self.name,
            residual=final.residual,
            threshold=final.threshold,
            passed=final.passed,
            details={
                "sizes": list(GRID_SIZES),
                "decay": [report.residual for report in reports],
                "per_function": final.details["per_function"],
            },
        )
