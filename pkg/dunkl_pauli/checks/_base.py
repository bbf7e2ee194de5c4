"""
A base check class from which other checks inherit.
"""

import asyncio
from abc import ABC, abstractmethod
from typing import final

import click

from ..entities import CheckResult, RunConfig, Settings
from ..errors import DunklError


class BaseCheck(ABC):
    """
    Base check class from which other checks inherit.

    Methods
    -------
    run(self)
        Evaluate the identity on the configured problem and report its residual.
    """

    def __init__(
        self,
        config: RunConfig,
        settings: Settings | None = None,
        inject_fault: bool = False,
    ):
        """
        Initialise an instance of the base class.

        Parameters
        ----------
        config : RunConfig
            Problem parameters, grids and tolerances.
        settings : Settings
            Output settings, only verbosity is used.
        inject_fault : bool, default=False
            Perturb the check so that it must fail; used to verify the harness.
        """
        self.__config = config
        self.__settings = settings or Settings()
        self.inject_fault = inject_fault

    @final
    async def __call__(self) -> CheckResult:
        try:
            result = await asyncio.to_thread(self.run)
        except DunklError as error:
            # a check that cannot run is reported as failed, not raised
            result = CheckResult(
                name=self.name,
                residual=float("inf"),
                threshold=0.0,
                passed=False,
                details={"error": type(error).__name__, "message": str(error)},
            )
        if self.__settings.verbose:
            status = "passed" if result.passed else "FAILED"
            click.echo(
                f"{result.name}: {status} (residual {result.residual:.3e}, "
                f"threshold {result.threshold:.1e})",
                err=True,
            )
        return result

    @property
    @abstractmethod
    def name(self) -> str:
        """Name of the check as reported."""

    @abstractmethod
    def run(self) -> CheckResult:
        """
        Check-specific evaluation. This method must be overridden in a subclass.

        Returns
        -------
        CheckResult
            Residual, threshold and diagnostics of the check.
        """

    @property
    @final
    def config(self) -> RunConfig:
        return self.__config

    @property
    @final
    def settings(self) -> Settings:
        return self.__settings
