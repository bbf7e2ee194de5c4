"""
Sector identity delta (delta - 1) - 2 nu1 nu2 (1 - eps) = (nu1 + eps nu2)^2 - 1/4
over random parameter pairs.
"""

import numpy as np

from ..entities import CheckResult, DunklParams, ParitySector
from ..radial_spectrum import sector_identity_check
from ._base import BaseCheck

SAMPLES = 100
THRESHOLD = 1e-14


class Check(BaseCheck):
    """Randomized sweep seeded from the configuration, both sectors per pair."""

    name = "sector_identity"

    def run(self) -> CheckResult:
        rng = np.random.default_rng(self.config.seed)
        nus = rng.uniform(-0.49, 1.0, size=(SAMPLES, 2))
        sectors = (ParitySector(eps1=1, eps2=1), ParitySector(eps1=-1, eps2=1))
        worst = 0.0
        for nu1, nu2 in nus:
            params = DunklParams(nu1=float(nu1), nu2=float(nu2))
            for sector in sectors:
                worst = max(worst, sector_identity_check(params, sector))
        return CheckResult(
            name=self.name,
            residual=worst,
            threshold=THRESHOLD,
            passed=worst <= THRESHOLD,
            details={"samples": SAMPLES, "seed": self.config.seed},
        )
