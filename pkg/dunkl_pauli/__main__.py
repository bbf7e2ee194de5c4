"""
A command line interface for spectra, wavefunctions, trajectories and checks.
"""

import asyncio
import importlib
import json
from functools import wraps

import click
import numpy as np
import pandas as pd
from pydantic import ValidationError
from tqdm.asyncio import tqdm

from . import ermakov, oracle, solution
from .angular_spectrum import ab_constrain, angular_table
from .dunkl_ops import angular_nodes
from .entities import AbReport, RadialGrid, RunConfig, Settings
from .errors import ConstraintViolationError, DunklError, GridError
from .radial_spectrum import spectrum_row
from .utils import dumps_report, frame_to_csv, list_checks, load_config, make_sync, write_content

EXIT_CONSTRAINT = 2
EXIT_NUMERICAL = 3
EXIT_CONFIG = 4


class UsageExitMixin:
    """Usage errors exit with 4; click's default of 2 is taken by the flux constraint."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as error:
            error.exit_code = EXIT_CONFIG
            raise


class ReportingCommand(UsageExitMixin, click.Command):
    """
    Command mapping failures to stable exit codes: 2 for a violated flux
    constraint, 3 for a numerical failure and 4 for a malformed configuration
    or command line.
    """

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ConstraintViolationError as error:
            click.echo(f"Error: {error}", err=True)
            raise click.exceptions.Exit(EXIT_CONSTRAINT) from error
        except DunklError as error:
            click.echo(f"Error: {type(error).__name__}: {error}", err=True)
            raise click.exceptions.Exit(EXIT_NUMERICAL) from error
        except (ValidationError, json.JSONDecodeError) as error:
            click.echo(f"Error: invalid configuration\n{error}", err=True)
            raise click.exceptions.Exit(EXIT_CONFIG) from error


class ReportingGroup(UsageExitMixin, click.Group):
    command_class = ReportingCommand

    def resolve_command(self, ctx, args):
        try:
            return super().resolve_command(ctx, args)
        except click.UsageError as error:
            error.exit_code = EXIT_CONFIG
            raise


def common_options(func):
    """Options shared by every computing command."""

    @click.option(
        "--config",
        "config_path",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="Path to a JSON configuration; flags take precedence over its fields.",
    )
    @click.option("--out", "-o", type=str, default=None, help="Path to write the output to.")
    @click.option(
        "--format",
        "-f",
        type=click.Choice(["json", "csv"], case_sensitive=False),
        default="json",
        show_default=True,
        help="Output format of tabular results.",
    )
    @click.option("--tol", type=float, default=None, help="Integrator tolerance in [1e-12, 1e-4].")
    @click.option("--seed", type=int, default=None, help="Seed of randomized identity sweeps.")
    @click.option("--verbose", is_flag=True, help="Enable verbose output.")
    @wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


def prepare(kwargs: dict, gate: bool = True) -> tuple[RunConfig, Settings]:
    """
    Load the configuration with defaults < file < flags precedence and apply
    the flux-compatibility gate.

    Raises
    ------
    ConstraintViolationError
        If the flux is nonzero and nu1 + eps nu2 != 0.
    """
    config = load_config(
        kwargs.pop("config_path"), tol=kwargs.pop("tol"), seed=kwargs.pop("seed")
    )
    settings = Settings(**kwargs)
    if gate and config.flux.vartheta != 0:
        report = ab_constrain(config.sector, config.params)
        if isinstance(report, AbReport):
            raise ConstraintViolationError(
                f"a nonzero flux requires {report.relation}; got nu1={config.params.nu1}, "
                f"nu2={config.params.nu2} (residual {report.residual:.3g})"
            )
    return config, settings


async def emit(report: dict, rows: list[dict], config: RunConfig, settings: Settings) -> None:
    """Write rows as CSV or the full report as JSON to the output path or stdout."""
    if settings.format == "csv":
        content = frame_to_csv(pd.DataFrame(rows))
    else:
        content = dumps_report(report, config)
    if settings.out is None:
        click.echo(content, nl=False)
        return
    await write_content(content, settings.out)
    if settings.verbose:
        click.echo(f"Saved the output to {settings.out}.", err=True)


async def emit_metadata(metadata: dict, config: RunConfig, settings: Settings) -> None:
    """JSON metadata of a CSV output, stored next to it as `<out>.json`."""
    if settings.out is not None:
        await write_content(dumps_report(metadata, config), f"{settings.out}.json")
    elif settings.verbose:
        click.echo(dumps_report(metadata, config), err=True, nl=False)


@click.group(cls=ReportingGroup)
def cli():
    """A CLI for the Dunkl-Pauli oscillator under an Aharonov-Bohm flux."""


@cli.command()
def list():
    """List available verification checks."""
    checks = "\n".join(list_checks())
    click.echo(checks)


@cli.command()
@common_options
@make_sync
async def spectrum(**kwargs):
    """Inner and outer invariant eigenvalues for n = 0 ... n_max."""
    config, settings = prepare(kwargs)
    quantum = config.quantum
    rows = [
        spectrum_row(n, quantum.l, quantum.sign, config.params, config.sector, config.flux)
        for n in range(quantum.n_max + 1)
    ]
    await emit({"rows": rows}, rows, config, settings)


@cli.command()
@common_options
@make_sync
async def angular(**kwargs):
    """Angular eigenvalues of both sectors with their grid eigen-residuals."""
    config, settings = prepare(kwargs, gate=False)
    rows = angular_table(config.params, config.quantum.l_max, config.grids.angular_n)
    await emit({"rows": rows}, rows, config, settings)


@cli.command()
@common_options
@make_sync
async def wavefunction(**kwargs):
    """Two-component wavefunction sampled on a polar grid at the configured times."""
    config, settings = prepare(kwargs)
    quantum, grids = config.quantum, config.grids
    state = solution.build_state(
        config.params, config.sector, config.flux, quantum.l, quantum.sign, quantum.n, config.R_reg
    )
    t_end = max(config.trajectory.t_end, *grids.times)
    traj = ermakov.solve(
        config.profile,
        rho0=config.trajectory.rho0,
        rho_dot0=config.trajectory.rho_dot0,
        t_end=t_end,
        tol=config.tol,
        samples=config.trajectory.samples,
    )
    r = np.linspace(grids.r_max / grids.r_points, grids.r_max, grids.r_points)
    phi = angular_nodes(grids.phi_points)
    frames = []
    for t in grids.times:
        psi = solution.eval_psi(state, traj, r[:, None], phi[None, :], t)
        rr, pp = np.meshgrid(r, phi, indexing="ij")
        frames.append(
            pd.DataFrame(
                {
                    "r": rr.ravel(),
                    "phi": pp.ravel(),
                    "t": t,
                    "re_psi1": psi[..., 0].real.ravel(),
                    "im_psi1": psi[..., 0].imag.ravel(),
                    "re_psi2": psi[..., 1].real.ravel(),
                    "im_psi2": psi[..., 1].imag.ravel(),
                    "density": (np.abs(psi) ** 2).sum(axis=-1).ravel(),
                }
            )
        )
    df = pd.concat(frames, ignore_index=True)
    header = {
        "state": {
            "n": state.n,
            "l": state.angular.l,
            "sign": state.angular.sign,
            "lambda": state.angular.lam,
            "K": state.radial.K,
            "E": state.radial.E,
            "m_s": state.spin.m_s,
        },
        "norms": {f"{t:.17g}": solution.dunkl_norm(state, traj, t) for t in grids.times},
        "printed_prefactor": solution.printed_prefactor(quantum.n, quantum.l, config.params),
        "norm_prefactor": state.radial.norm_prefactor,
    }
    rows = df.to_dict(orient="records")
    await emit({"header": header, "samples": rows}, rows, config, settings)
    if settings.format == "csv":
        await emit_metadata(header, config, settings)


@cli.command("ermakov")
@common_options
@make_sync
async def ermakov_command(**kwargs):
    """Scaling function rho(t) of the invariant."""
    config, settings = prepare(kwargs, gate=False)
    trajectory = config.trajectory
    traj = ermakov.solve(
        config.profile,
        rho0=trajectory.rho0,
        rho_dot0=trajectory.rho_dot0,
        t_end=trajectory.t_end,
        tol=config.tol,
        samples=trajectory.samples,
    )
    metadata = {
        "profile": config.profile.model_dump(mode="json"),
        "tol": traj.tol,
        "steps": traj.steps,
        "evaluations": traj.evaluations,
        "rho_min": float(traj.rho.min()),
    }
    if config.profile.family == "constant":
        metadata["invariant_drift"] = ermakov.invariant_drift(traj)
    rows = ermakov.to_frame(traj).to_dict(orient="records")
    await emit({"metadata": metadata, "samples": rows}, rows, config, settings)
    if settings.format == "csv":
        await emit_metadata(metadata, config, settings)


@cli.command()
@click.option(
    "--check",
    "-c",
    "names",
    type=click.Choice(list_checks(), case_sensitive=False),
    multiple=True,
    help="Restrict the run to the named check; may be repeated.",
)
@click.option(
    "--inject-fault",
    is_flag=True,
    help="Shift every angular eigenvalue by 0.1 so that the angular check must fail.",
)
@common_options
@make_sync
async def verify(**kwargs):
    """Run verification checks; exits with 3 if any check fails."""
    names = kwargs.pop("names") or list_checks()
    inject_fault = kwargs.pop("inject_fault")
    config, settings = prepare(kwargs)
    checks = []
    for name in names:
        # dynamically import the module and check
        module = importlib.import_module(f".checks.{name}", __package__)
        checks.append(module.Check(config, settings=settings, inject_fault=inject_fault))
    results = await tqdm.gather(*[check() for check in checks], disable=not settings.verbose)
    passed = all(result.passed for result in results)
    rows = [result.model_dump(exclude={"details"}) for result in results]
    await emit({"checks": results, "passed": passed}, rows, config, settings)
    if not passed:
        failed = ", ".join(result.name for result in results if not result.passed)
        click.echo(f"Failed checks: {failed}", err=True)
        raise click.exceptions.Exit(EXIT_NUMERICAL)


def _radial_rows(K: float, config: RunConfig, settings: Settings) -> dict:
    grid = RadialGrid(xi_max=config.grids.xi_max, N=config.grids.radial_n)
    try:
        rows = oracle.compare_radial_spectrum(K, config.quantum.n_max, grid, settings.verbose)
    except GridError as error:
        click.echo(f"Skipped the radial oracle for K={K}: {error}", err=True)
        return {"K": K, "skipped": str(error), "rows": []}
    return {"K": K, "rows": rows, "max_relative_error": max(r["relative_error"] for r in rows)}


@cli.command("oracle")
@common_options
@make_sync
async def oracle_command(**kwargs):
    """Closed-form spectra against independent numerical diagonalizations."""
    config, settings = prepare(kwargs)
    quantum = config.quantum
    row = spectrum_row(0, quantum.l, quantum.sign, config.params, config.sector, config.flux)
    indices = {"inner": row["K_minus"], "outer": row["K_plus"]}
    jobs = [asyncio.to_thread(_radial_rows, K, config, settings) for K in indices.values()]
    jobs.append(
        asyncio.to_thread(oracle.compare_angular_spectrum, config.grids.angular_n, config.params)
    )
    *radial, angular_rows = await tqdm.gather(*jobs, disable=not settings.verbose)
    report = {"radial": dict(zip(indices, radial)), "angular": angular_rows}
    inner, outer = radial
    if inner["rows"] and outer["rows"]:
        report["flux_shift"] = {
            "levels": oracle.flux_shift(inner["rows"], outer["rows"]),
            "expected": 2 * config.flux.vartheta * config.flux.m_s,
        }
    rows = [
        {"region": region, **level}
        for region, table in report["radial"].items()
        for level in table["rows"]
    ]
    await emit(report, rows, config, settings)


if __name__ == "__main__":
    cli()
