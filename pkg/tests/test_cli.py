"""
A test suite for the CLI.
"""

import io
import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner
from scipy.integrate import trapezoid

from dunkl_pauli import __main__ as cli
from dunkl_pauli.utils import list_checks


@pytest.fixture
def write_config(tmp_path):
    def write(name: str, data: dict | str) -> str:
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
        return str(path)

    return write


def invoke(*args: str):
    runner = CliRunner(mix_stderr=False)
    return runner.invoke(cli.cli, list(args))


def test_list():
    result = invoke("list")
    assert result.exit_code == 0
    assert result.output.split() == list_checks()
    assert "heisenberg" in result.output


def test_spectrum_reference(tmp_path):
    path = tmp_path / "spectrum.json"
    result = invoke("spectrum", "--out", str(path))
    assert result.exit_code == 0, result.stderr
    report = json.loads(path.read_text(encoding="utf-8"))
    assert {"config_hash", "tool_version", "schema_version"} <= report.keys()
    first = report["rows"][0]
    assert first["K_minus"] == pytest.approx(2.0)
    assert first["K_plus"] == pytest.approx(1.4)
    assert first["E_minus"] == pytest.approx(3.0)
    assert first["E_plus"] == pytest.approx(2.4)
    assert first["E_plus_printed"] == pytest.approx(3.6)
    assert [row["n"] for row in report["rows"]] == list(range(5))


def test_spectrum_without_flux(write_config):
    config = write_config(
        "config.json", {"params": {"nu1": 0.4, "nu2": 0.1}, "flux": {"vartheta": 0.0}}
    )
    result = invoke("spectrum", "--config", config, "--format", "csv")
    assert result.exit_code == 0, result.stderr
    df = pd.read_csv(io.StringIO(result.stdout))
    assert (df["E_plus"] == df["E_minus"]).all()


def test_spectrum_is_deterministic():
    first, second = invoke("spectrum"), invoke("spectrum")
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout
    assert first.stdout.endswith("\n")


def test_constraint_violation(write_config):
    config = write_config("config.json", {"params": {"nu1": 0.3, "nu2": 0.3}})
    result = invoke("spectrum", "--config", config)
    assert result.exit_code == 2
    assert "nu1 = -nu2" in result.stderr


@pytest.mark.parametrize(
    "args",
    [
        ["spectrum", "--tol", "1e-2"],
        ["spectrum", "--config", "missing.json"],
        ["spectrum", "--format", "xml"],
        ["verify", "--check", "unknown"],
        ["spectra"],
        ["--bogus", "spectrum"],
    ],
)
def test_usage_errors(args):
    assert invoke(*args).exit_code == 4


@pytest.mark.parametrize(
    "content",
    ["{not json", json.dumps({"quantum": {"l": 0.5}}), json.dumps({"tol": "small"})],
)
def test_malformed_config(write_config, content):
    config = write_config("config.json", content)
    result = invoke("spectrum", "--config", config)
    assert result.exit_code == 4
    assert "invalid configuration" in result.stderr


def test_angular_table():
    result = invoke("angular", "--format", "csv")
    assert result.exit_code == 0, result.stderr
    df = pd.read_csv(io.StringIO(result.stdout))
    assert set(df["eps"]) == {1, -1}
    assert df["passed"].all()


def test_verify_single_check():
    result = invoke("verify", "--check", "sector_identity")
    assert result.exit_code == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["passed"] is True
    assert [check["name"] for check in report["checks"]] == ["sector_identity"]


def test_verify_injected_fault():
    result = invoke("verify", "--inject-fault", "--check", "angular_modes")
    assert result.exit_code == 3
    assert "angular_modes" in result.stderr


def test_verify_respects_constraint(write_config):
    config = write_config("config.json", {"params": {"nu1": 0.3, "nu2": 0.3}})
    assert invoke("verify", "--config", config, "-c", "heisenberg").exit_code == 2


SMALL_GRIDS = {"grids": {"r_points": 6, "phi_points": 8, "times": [0.0, 1.5]}}


def test_wavefunction_csv(tmp_path, write_config):
    config = write_config("config.json", SMALL_GRIDS)
    path = tmp_path / "psi.csv"
    result = invoke("wavefunction", "--config", config, "-f", "csv", "-o", str(path))
    assert result.exit_code == 0, result.stderr
    df = pd.read_csv(path)
    assert list(df.columns) == [
        "r", "phi", "t", "re_psi1", "im_psi1", "re_psi2", "im_psi2", "density"
    ]
    assert len(df) == 6 * 8 * 2
    assert np.all(df["re_psi2"] == 0) and np.all(df["im_psi2"] == 0)
    header = json.loads((tmp_path / "psi.csv.json").read_text(encoding="utf-8"))
    assert header["state"]["K"] == pytest.approx(1.4)
    assert all(value == pytest.approx(1.0, abs=1e-6) for value in header["norms"].values())


def test_wavefunction_grid_normalization(tmp_path, write_config):
    data = {
        "params": {"nu1": 0.2, "nu2": 0.1},
        "flux": {"vartheta": 0.0},
        "grids": {"r_max": 6.0, "r_points": 300, "phi_points": 128, "times": [0.0]},
    }
    path = tmp_path / "psi.csv"
    config = write_config("config.json", data)
    result = invoke("wavefunction", "--config", config, "-f", "csv", "-o", str(path))
    assert result.exit_code == 0, result.stderr
    df = pd.read_csv(path)
    r = df["r"].to_numpy().reshape(300, 128)
    phi = df["phi"].to_numpy().reshape(300, 128)
    density = df["density"].to_numpy().reshape(300, 128)
    # r^(2 delta) |cos phi|^(2 nu1) |sin phi|^(2 nu2), delta = 1/2 + nu1 + nu2
    weight = r**1.6 * np.abs(np.cos(phi)) ** 0.4 * np.abs(np.sin(phi)) ** 0.2
    angular = (density * weight).sum(axis=1) * 2 * np.pi / 128
    assert trapezoid(angular, r[:, 0]) == pytest.approx(1.0, rel=1e-2)


def test_ermakov_collapse(write_config):
    data = {
        "profile": {"M0": 1e4, "Omega0": 1.0},
        "trajectory": {"rho0": 1.0, "rho_dot0": -1e5, "t_end": 1.0, "samples": 11},
    }
    result = invoke("ermakov", "--config", write_config("config.json", data), "--tol", "1e-8")
    assert result.exit_code == 3
    assert "SingularityError" in result.stderr


def test_wavefunction_spin_down(write_config):
    data = {
        **SMALL_GRIDS,
        "flux": {"vartheta": -0.6, "m_s": -1},
        "quantum": {"sign": -1},
    }
    result = invoke("wavefunction", "--config", write_config("config.json", data), "-f", "csv")
    assert result.exit_code == 0, result.stderr
    df = pd.read_csv(io.StringIO(result.stdout))
    assert np.all(df["re_psi1"] == 0) and np.all(df["im_psi1"] == 0)
    assert np.any(df["density"] > 0)


def test_ermakov_csv(tmp_path, write_config):
    config = write_config("config.json", {"trajectory": {"t_end": 4.0, "samples": 41}})
    path = tmp_path / "rho.csv"
    result = invoke("ermakov", "--config", config, "-f", "csv", "-o", str(path), "--tol", "1e-9")
    assert result.exit_code == 0, result.stderr
    df = pd.read_csv(path)
    assert list(df.columns) == ["t", "rho", "rho_dot"]
    assert len(df) == 41
    metadata = json.loads((tmp_path / "rho.csv.json").read_text(encoding="utf-8"))
    assert metadata["tol"] == 1e-9
    assert metadata["steps"] > 0
    assert metadata["invariant_drift"] <= 1e-7


def test_ermakov_ignores_flux_gate(write_config):
    data = {"params": {"nu1": 0.3, "nu2": 0.3}, "trajectory": {"t_end": 1.0, "samples": 11}}
    assert invoke("ermakov", "--config", write_config("config.json", data)).exit_code == 0


def test_oracle(write_config):
    data = {"quantum": {"n_max": 2}, "grids": {"radial_n": 4000, "angular_n": 64}}
    result = invoke("oracle", "--config", write_config("config.json", data))
    assert result.exit_code == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["radial"]["inner"]["K"] == pytest.approx(2.0)
    assert report["radial"]["outer"]["K"] == pytest.approx(1.4)
    assert report["flux_shift"]["expected"] == pytest.approx(1.2)
    np.testing.assert_allclose(report["flux_shift"]["levels"], 1.2, atol=1e-2)
