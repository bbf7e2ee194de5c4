"""
Lie algebra of the radial generators T1, T2, T3 in the configured sector.
"""

from ..angular_spectrum import lambda_of
from ..dunkl_ops import check_T_algebra
from ..entities import CheckResult, RadialGrid
from ._base import BaseCheck


class Check(BaseCheck):
    name = "t_algebra"

    def run(self) -> CheckResult:
        config = self.config
        lam = lambda_of(config.sector, config.quantum.l, config.quantum.sign, config.params)
        report = check_T_algebra(
            RadialGrid(xi_max=10.0, N=1000),
            config.params,
            lam,
            sector=config.sector,
            flux=config.flux,
            verbose=self.settings.verbose,
        )
        return report
