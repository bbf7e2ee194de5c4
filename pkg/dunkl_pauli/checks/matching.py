"""
Matching of the inner and outer radial modes at a shrinking regularization radius.
"""

from ..angular_spectrum import lambda_of
from ..entities import AbReport, CheckResult
from ..radial_spectrum import matching_report
from ._base import BaseCheck

MIN_ORDER = 0.9
HALVINGS = 3


class Check(BaseCheck):
    """
    The derivative-jump defect must shrink at least like R^0.9 as R is halved;
    the threshold is the defect at R scaled down accordingly.
    """

    name = "matching"

    def run(self) -> CheckResult:
        config = self.config
        lam = lambda_of(config.sector, config.quantum.l, config.quantum.sign, config.params)
        report = matching_report(
            lam,
            config.flux,
            config.params,
            config.sector,
            R=config.R_reg,
            n=max(config.quantum.n, 1),
            halvings=HALVINGS,
        )
        if isinstance(report, AbReport):
            return CheckResult(
                name=self.name,
                residual=report.residual,
                threshold=0.0,
                passed=False,
                details={"relation": report.relation},
            )
        residual = report.defects[-1]
        threshold = report.defects[0] * 2 ** (-MIN_ORDER * HALVINGS)
        return CheckResult(
            name=self.name,
            residual=residual,
            threshold=threshold,
            passed=residual <= threshold,
            details={"radii": report.radii, "defects": report.defects, "orders": report.orders},
        )
