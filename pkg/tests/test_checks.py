"""
A test suite for the verification check plug-ins.
"""

import asyncio
import importlib

import pytest

from dunkl_pauli.checks import BaseCheck
from dunkl_pauli.entities import CheckResult, DunklParams, FluxSpin, RunConfig, Settings
from dunkl_pauli.errors import GridError
from dunkl_pauli.utils import list_checks


def make_check(name: str, config: RunConfig | None = None, **kwargs) -> BaseCheck:
    module = importlib.import_module(f"dunkl_pauli.checks.{name}")
    return module.Check(config or RunConfig(), **kwargs)


def test_list_checks():
    assert list_checks() == [
        "angular_modes",
        "heisenberg",
        "j_squared",
        "matching",
        "radial_ode",
        "sector_identity",
        "t_algebra",
    ]


@pytest.mark.parametrize("name", list_checks())
def test_default_config_passes(name):
    result = asyncio.run(make_check(name)())
    assert isinstance(result, CheckResult)
    assert result.name == name
    assert result.passed, result.details


def test_injected_fault_fails():
    result = asyncio.run(make_check("angular_modes", inject_fault=True)())
    assert not result.passed
    assert result.residual >= 1e-2
    assert result.details["lambda_shift"] == 0.1


@pytest.mark.parametrize("name", ["heisenberg", "sector_identity", "radial_ode"])
def test_fault_only_touches_angular_check(name):
    assert asyncio.run(make_check(name, inject_fault=True)()).passed


def test_sector_identity_deterministic():
    config = RunConfig(seed=11)
    first = asyncio.run(make_check("sector_identity", config)())
    second = asyncio.run(make_check("sector_identity", config)())
    assert first == second


def test_matching_without_flux():
    config = RunConfig(flux=FluxSpin(vartheta=0.0), params=DunklParams(nu1=0.3, nu2=0.1))
    result = asyncio.run(make_check("matching", config)())
    assert result.passed
    assert result.residual == 0.0


def test_verbose_summary(capsys):
    asyncio.run(make_check("sector_identity", settings=Settings(verbose=True))())
    assert "sector_identity: passed" in capsys.readouterr().err


class FailingCheck(BaseCheck):
    name = "failing"

    def run(self) -> CheckResult:
        raise GridError("grid too small")


def test_errors_are_reported():
    result = asyncio.run(FailingCheck(RunConfig())())
    assert not result.passed
    assert result.details["error"] == "GridError"
    assert result.residual == float("inf")
