"""
Deformed Heisenberg algebra on monomials, exact and floating arithmetic.
"""

from ..dunkl_ops import check_heisenberg
from ..entities import CheckResult, DunklParams
from ._base import BaseCheck

PARAMETER_PAIRS = [(0.0, 0.0), (0.25, 0.25), (0.5, -0.2), (1.0, 0.7)]


class Check(BaseCheck):
    """
    Algebra check over the configured parameters, the undeformed case and a
    few generic pairs.
    """

    name = "heisenberg"

    def run(self) -> CheckResult:
        pairs = [self.config.params] + [DunklParams(nu1=a, nu2=b) for a, b in PARAMETER_PAIRS]
        floating = [check_heisenberg(params, max_degree=8) for params in pairs]
        exact = [check_heisenberg(params, max_degree=8, exact=True) for params in pairs]
        worst = max(report.residual for report in floating)
        return CheckResult(
            name=self.name,
            residual=worst,
            threshold=floating[0].threshold,
            passed=all(report.passed for report in floating + exact),
            details={
                "pairs": [params.model_dump() for params in pairs],
                "floating": [report.residual for report in floating],
                "exact": [report.residual for report in exact],
            },
        )
