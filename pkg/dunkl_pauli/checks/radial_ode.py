"""
Radial modes against their defining equation on a grid inside one region.
"""

import numpy as np

from ..entities import CheckResult
from ..radial_spectrum import build_mode, ode_residual, spectrum_row
from ._base import BaseCheck

INDICES = (0.5, 1.1, 1.4, 2.0, 3.5)
N_MAX = 5
THRESHOLD = 1e-9


class Check(BaseCheck):
    name = "radial_ode"

    def run(self) -> CheckResult:
        config = self.config
        row = spectrum_row(
            0, config.quantum.l, config.quantum.sign, config.params, config.sector, config.flux
        )
        indices = sorted(set(INDICES) | {row["K_minus"], row["K_plus"]})
        xi = np.linspace(0.05, 8.0, 400)
        per_index = {}
        for K in indices:
            residuals = [
                ode_residual(build_mode("outer", n, K, config.R_reg), xi) for n in range(N_MAX + 1)
            ]
            per_index[f"{K:.12g}"] = max(residuals)
        worst = max(per_index.values())
        return CheckResult(
            name=self.name,
            residual=worst,
            threshold=THRESHOLD,
            passed=worst <= THRESHOLD,
            details={"n_max": N_MAX, "per_index": per_index},
        )
