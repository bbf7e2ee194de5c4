"""
Closed-form angular eigenpairs against the grid J_phi, their reflection
behaviour and their orthonormality under the Dunkl angular measure.
"""

import numpy as np

from ..angular_spectrum import angular_gram, check_mode_parity, mode_battery, verify_mode
from ..entities import CheckResult, DunklParams
from ._base import BaseCheck

PARAMETER_PAIRS = [(0.3, -0.3), (0.25, 0.25)]
GRAM_THRESHOLD = 1e-6
FAULT_SHIFT = 0.1


class Check(BaseCheck):
    """
    Eigen-residuals for both sectors, l up to `quantum.l_max` and both sign
    branches. With `inject_fault` every eigenvalue is shifted by 0.1, which
    must make the check fail.
    """

    name = "angular_modes"

    def run(self) -> CheckResult:
        config = self.config
        pairs = [config.params]
        for nu1, nu2 in PARAMETER_PAIRS:
            params = DunklParams(nu1=nu1, nu2=nu2)
            if params not in pairs:
                pairs.append(params)
        shift = FAULT_SHIFT if self.inject_fault else 0.0
        eigen, parity, gram = 0.0, 0.0, 0.0
        threshold = None
        for params in pairs:
            for eps in (1, -1):
                modes = mode_battery(params, eps, l_max=config.quantum.l_max)
                for mode in modes:
                    report = verify_mode(mode, config.grids.angular_n, lambda_shift=shift)
                    threshold = report.threshold
                    eigen = max(eigen, report.residual)
                    parity = max(parity, check_mode_parity(mode, config.grids.angular_n).residual)
                matrix = angular_gram(modes)
                gram = max(gram, float(np.max(np.abs(matrix - np.eye(len(modes))))))
        return CheckResult(
            name=self.name,
            residual=eigen,
            threshold=threshold,
            passed=eigen <= threshold and parity <= 1e-10 and gram <= GRAM_THRESHOLD,
            details={
                "N": config.grids.angular_n,
                "l_max": config.quantum.l_max,
                "lambda_shift": shift,
                "parity": parity,
                "gram": gram,
                "pairs": [params.model_dump() for params in pairs],
            },
        )
