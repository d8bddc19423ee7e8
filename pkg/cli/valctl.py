#!/usr/bin/env python3
"""
WassVal - valctl
Command-line driver: validation runs, plot data, data simulation and calculators.
"""

import json
import sys
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import typer
from rich.console import Console
from rich.table import Table
from rich import print as rprint

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.wassval.analytic import (
    LtiPair,
    ScalarLinearPair,
    beta_beta_w2,
    lti_bound_series,
    prajna_check,
    w2_scalar_affine,
    w2_scalar_linear,
    w2_scalar_linear_discrete,
    w2_scalar_sde,
)
from src.wassval.certificates import n_chernoff, n_worstcase
from src.wassval.config import get_settings
from src.wassval.densities import Gaussian, cdf, read_ensemble_csv
from src.wassval.errors import WassvalError
from src.wassval.logging_setup import configure_logging
from src.wassval.services import emit_plot_data, read_report, run_validate, simulate
from src.wassval.transport import SampleComplexityParams, n_wass, n_wass_bound, w2_1d, w2_gaussian, w2_lp, write_plan_csv

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALIDATED = 2

app = typer.Typer(
    name="valctl",
    help="Wasserstein model validation: certificates, distances and bounds",
    add_completion=False,
    no_args_is_help=True,
)
calc = typer.Typer(
    help="Closed-form and transport calculators; print JSON with the inputs echoed",
    add_completion=False,
    no_args_is_help=True,
)
app.add_typer(calc, name="calc")
console = Console(stderr=True)


@app.callback()
def main(
    log: Optional[str] = typer.Option(None, "--log", help="Log level (default: WASSVAL_LOG)"),
):
    configure_logging(log)


def _fail(error: Exception) -> None:
    if isinstance(error, WassvalError):
        console.print(f"[bold red]✗ {error.code}[/bold red] {error.message}"
                      + (f" [dim](at {error.location})[/dim]" if error.location else ""))
    else:
        console.print(f"[bold red]✗ ERROR[/bold red] {error}")
    raise typer.Exit(EXIT_ERROR)


def _emit(payload: dict) -> None:
    digits = get_settings().json_digits

    def rounded(value):
        if isinstance(value, float):
            return round(value, digits) if np.isfinite(value) else None
        if isinstance(value, dict):
            return {k: rounded(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [rounded(v) for v in value]
        return value

    typer.echo(json.dumps(rounded(payload)))


def _matrix(text: str, name: str) -> np.ndarray:
    try:
        return np.atleast_1d(np.asarray(json.loads(text), dtype=float))
    except (json.JSONDecodeError, TypeError, ValueError) as e:
        raise ValueError(f"--{name} must be a JSON number array: {e}") from e


# === Pipeline commands ===

@app.command(name="validate")
def validate(
    config: Path = typer.Option(..., "--config", "-c", help="Validation config JSON"),
    data: Optional[str] = typer.Option(None, "--data", "-d", help="Measured data CSV (t,w,x1,...)"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Master seed (overrides the config)"),
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads over density draws"),
):
    """
    Run a validation: certificates, W2 series, bounds and the reachability check.

    Exit code 0 on success, 2 when the reachability check invalidates the model,
    1 on error.

    Examples:
        python -m cli validate --config configs/example1.json
        python -m cli validate --config configs/self_validation.json --data output/self/data.csv
    """
    rprint(f"[bold blue]🚀 Validating with {config}[/bold blue]", file=sys.stderr)
    try:
        run = run_validate(config, data=data, out=out, seed=seed, threads=threads)
    except (WassvalError, ValueError) as e:
        _fail(e)

    report = run.report
    table = Table(title=f"Validation of {report.model_id}", show_header=True, header_style="bold magenta")
    table.add_column("Certificate", style="cyan")
    table.add_column("N", style="green")
    table.add_column("Values", style="green")
    for certificate in report.certificates:
        values = ", ".join(f"{v:.3g}" for v in certificate.values)
        table.add_row(certificate.kind, str(certificate.N), values)
    console.print(table)

    for warning in report.warnings:
        console.print(f"[yellow]⚠ {warning.code}[/yellow] {warning.message}")
    if report.stationary is not None:
        gap = "n/a" if report.stationary.w2 is None else f"{report.stationary.w2:.6g}"
        console.print(f"Stationary gap: [bold]{gap}[/bold]")
    if report.prajna is not None:
        console.print(f"Reachability check: [bold]{report.prajna.verdict}[/bold] (witness {report.prajna.witness:g})")
    if run.report_path is not None:
        console.print(f"[dim]Report: {run.report_path} (digest {run.digest[:12]})[/dim]")

    if run.invalidated:
        raise typer.Exit(EXIT_INVALIDATED)
    console.print("[bold green]✨ Done![/bold green]")


@app.command(name="plotdata")
def plotdata(
    report: Path = typer.Option(..., "--report", "-r", help="Report JSON written by validate"),
    out: Path = typer.Option(Path("."), "--out", "-o", help="Directory for the CSV series"),
):
    """Write plot-ready CSV series from a report."""
    try:
        written = emit_plot_data(read_report(report), out)
    except (WassvalError, OSError) as e:
        _fail(e)
    if not written:
        console.print("[yellow]⚠ NOSERIES[/yellow] report has no series; nothing written")
    for path in written:
        console.print(f"[green]✓[/green] {path}")


@app.command(name="simulate")
def simulate_data(
    config: Path = typer.Option(..., "--config", "-c", help="Validation config JSON"),
    out: Path = typer.Option(..., "--out", "-o", help="Data CSV to write"),
    member: int = typer.Option(0, "--member", help="Law draw to propagate"),
):
    """Write a measured-data CSV by propagating one initial density through the truth model."""
    try:
        path = simulate(config, out, member=member)
    except (WassvalError, ValueError) as e:
        _fail(e)
    console.print(f"[green]✓[/green] Data written to {path}")


# === Calculators ===

@calc.command(name="w2-lp")
def calc_w2_lp(
    source: Path = typer.Option(..., "--source", help="Ensemble CSV (w,x1,...)"),
    target: Path = typer.Option(..., "--target", help="Ensemble CSV (w,x1,...)"),
    plan: Optional[Path] = typer.Option(None, "--plan", help="Write the optimal plan as i,j,mass"),
):
    """W2 between two weighted ensembles via the transportation LP."""
    try:
        w2, coupling = w2_lp(read_ensemble_csv(source), read_ensemble_csv(target))
        if plan is not None:
            write_plan_csv(coupling, plan)
    except (WassvalError, ValueError) as e:
        _fail(e)
    _emit({"source": str(source), "target": str(target), "w2": w2, "support": coupling.support_size})


@calc.command(name="w2-1d")
def calc_w2_1d(
    source: Path = typer.Option(..., "--source", help="1-D ensemble CSV"),
    target: Path = typer.Option(..., "--target", help="1-D ensemble CSV"),
):
    """W2 between two scalar ensembles via the quantile formula."""
    try:
        w2 = w2_1d(cdf(read_ensemble_csv(source)), cdf(read_ensemble_csv(target)))
    except (WassvalError, ValueError) as e:
        _fail(e)
    _emit({"source": str(source), "target": str(target), "w2": w2})


@calc.command(name="w2-gauss")
def calc_w2_gauss(
    mean1: str = typer.Option(..., "--mean1", help="JSON vector"),
    cov1: str = typer.Option(..., "--cov1", help="JSON matrix"),
    mean2: str = typer.Option(..., "--mean2", help="JSON vector"),
    cov2: str = typer.Option(..., "--cov2", help="JSON matrix"),
):
    """W2 between two Gaussians in closed form."""
    try:
        g1 = Gaussian(_matrix(mean1, "mean1"), np.atleast_2d(_matrix(cov1, "cov1")))
        g2 = Gaussian(_matrix(mean2, "mean2"), np.atleast_2d(_matrix(cov2, "cov2")))
        w2 = w2_gaussian(g1, g2)
    except (WassvalError, ValueError) as e:
        _fail(e)
    _emit({"mean1": json.loads(mean1), "cov1": json.loads(cov1),
           "mean2": json.loads(mean2), "cov2": json.loads(cov2), "w2": w2})


@calc.command(name="beta-w2")
def calc_beta_w2(
    alpha: float = typer.Option(..., "--alpha"),
    beta: float = typer.Option(..., "--beta"),
):
    """W2 between Beta(alpha, beta) and Beta(beta, alpha) on [0, 1]."""
    try:
        w2 = beta_beta_w2(alpha, beta)
    except ValueError as e:
        _fail(e)
    _emit({"alpha": alpha, "beta": beta, "w2": w2})


@calc.command(name="scalar-gap")
def calc_scalar_gap(
    a1: float = typer.Option(..., "--a1"),
    c1: float = typer.Option(..., "--c1"),
    a2: float = typer.Option(..., "--a2"),
    c2: float = typer.Option(..., "--c2"),
    t: float = typer.Option(..., "--t", help="Time (step count when --kind discrete)"),
    m20: float = typer.Option(..., "--m20", help="Second raw moment of the initial density"),
    kind: str = typer.Option("linear", "--kind", help="linear, affine, sde or discrete"),
    m10: float = typer.Option(0.0, "--m10", help="Mean of the initial density (affine)"),
    b1: float = typer.Option(0.0, "--b1"),
    d1: float = typer.Option(0.0, "--d1"),
    b2: float = typer.Option(0.0, "--b2"),
    d2: float = typer.Option(0.0, "--d2"),
    g1: float = typer.Option(0.0, "--g1"),
    g2: float = typer.Option(0.0, "--g2"),
    s_f0: float = typer.Option(0.0, "--s", help="s(F0) statistic (sde)"),
):
    """W2 gap between two scalar linear systems in closed form."""
    inputs = {"kind": kind, "a1": a1, "c1": c1, "a2": a2, "c2": c2, "t": t, "m20": m20}
    try:
        if kind == "linear":
            w2 = w2_scalar_linear(ScalarLinearPair(a1, c1, a2, c2), m20, t)
        elif kind == "affine":
            pair = ScalarLinearPair(a1, c1, a2, c2, b1=b1, d1=d1, b2=b2, d2=d2)
            w2 = w2_scalar_affine(pair, m10, m20, t)
            inputs.update(m10=m10, b1=b1, d1=d1, b2=b2, d2=d2)
        elif kind == "sde":
            w2 = w2_scalar_sde(ScalarLinearPair(a1, c1, a2, c2, g1=g1, g2=g2), m20, s_f0, t)
            inputs.update(g1=g1, g2=g2, s=s_f0)
        elif kind == "discrete":
            if t != int(t):
                raise ValueError("--t must be an integer step count for discrete pairs")
            w2 = w2_scalar_linear_discrete(ScalarLinearPair(a1, c1, a2, c2, discrete=True), m20, int(t))
        else:
            raise ValueError(f"unknown --kind {kind!r} (expected linear, affine, sde or discrete)")
    except ValueError as e:
        _fail(e)
    _emit({**inputs, "w2": w2})


@calc.command(name="lti-bounds")
def calc_lti_bounds(
    a: str = typer.Option(..., "--a", help="JSON matrix A"),
    a_hat: str = typer.Option(..., "--a-hat", help="JSON matrix A_hat"),
    p0: str = typer.Option(..., "--p0", help="JSON initial covariance"),
    k_max: int = typer.Option(20, "--k-max"),
):
    """W2 between the two LTI Gaussian laws at steps 0..k_max with both upper bounds."""
    try:
        pair = LtiPair(_matrix(a, "a"), _matrix(a_hat, "a-hat"), _matrix(p0, "p0"))
        rows = [row.as_row() for row in lti_bound_series(pair, k_max)]
    except ValueError as e:
        _fail(e)
    _emit({"a": json.loads(a), "a_hat": json.loads(a_hat), "p0": json.loads(p0), "k_max": k_max, "rows": rows})


@calc.command(name="n-chernoff")
def calc_n_chernoff(
    eps: float = typer.Option(..., "--eps", help="Accuracy in (0, 1)"),
    delta: float = typer.Option(..., "--delta", help="Confidence parameter in (0, 1)"),
):
    """Draws behind a PRVC."""
    try:
        n = n_chernoff(eps, delta)
    except ValueError as e:
        _fail(e)
    _emit({"epsilon": eps, "delta": delta, "n": n})


@calc.command(name="n-worstcase")
def calc_n_worstcase(
    eps: float = typer.Option(..., "--eps"),
    delta: float = typer.Option(..., "--delta"),
):
    """Draws behind a PWVC."""
    try:
        n = n_worstcase(eps, delta)
    except ValueError as e:
        _fail(e)
    _emit({"epsilon": eps, "delta": delta, "n": n})


@calc.command(name="n-wass")
def calc_n_wass(
    eps: float = typer.Option(..., "--eps", help="Distance accuracy in (0, 1]"),
    delta: float = typer.Option(..., "--delta"),
    tci: float = typer.Option(1.0, "--tci", help="Transportation cost inequality constant"),
    covering: float = typer.Option(1.0, "--covering", help="Covering constant"),
):
    """Samples for an epsilon-accurate empirical W2 estimate."""
    try:
        params = SampleComplexityParams(eps, delta, tci, covering)
    except ValueError as e:
        _fail(e)
    _emit({"epsilon": eps, "delta": delta, "tci": tci, "covering": covering,
           "bound": n_wass_bound(params), "n": n_wass(params)})


@calc.command(name="prajna")
def calc_prajna(
    x0: Tuple[float, float] = typer.Option(..., "--x0", help="Initial interval"),
    x_t: Tuple[float, float] = typer.Option(..., "--xT", help="Final interval"),
    p: Tuple[float, float] = typer.Option(..., "--p", help="Parameter interval"),
    t: float = typer.Option(..., "--T", help="Final time"),
):
    """Reachability check for x' = -p x^3 on interval data."""
    try:
        result = prajna_check(x0, x_t, p, t)
    except ValueError as e:
        _fail(e)
    _emit({"x0": list(x0), "xT": list(x_t), "p": list(p), "T": t, **result.to_dict()})


if __name__ == "__main__":
    app()
