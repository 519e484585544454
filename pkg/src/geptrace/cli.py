"""geptrace CLI - Main command-line interface."""

from pathlib import Path
from typing import Dict, Optional

import numpy as np
import typer
import yaml
from pydantic import ValidationError
from rich.table import Table

from . import __version__
from .config import Settings, dump_settings, find_config, load_config, write_default_config
from .config.loader import DEFAULT_CONFIG_NAME
from .errors import (
    BadSpectrumSpec,
    ConfigError,
    Diverged,
    GeptraceError,
    NonFiniteValue,
    NotPositiveDefinite,
    NotSymmetric,
    ShapeMismatch,
)
from .exporters import export_with_format
from .gep import generate
from .gep.problem import GepProblem, solve_dense, top_k
from .optimize import AscentConfig
from .reporting import EXIT_FAILURE, EXIT_NOT_CONVERGED, EXIT_OK, CheckAggregator, build_run_report, write_json
from .suites import SuiteInputs, create_suites, resolve_suites, run_suites, run_suites_on_inputs
from .utils.logging import configure_logging, console, get_logger, set_log_level
from .utils.matrix_io import read_matrix, write_matrix

# Create Typer app
app = typer.Typer(
    name="geptrace",
    help="geptrace - top-k generalized eigenvalue problems through the unconstrained trace objective.\n\n"
         "Dense oracle, gradient ascent on h(W) = tr(W^T A W (2I - W^T B W)), and numerical "
         "verification of the supporting trace inequalities.",
    add_completion=False,
    no_args_is_help=True
)

logger = get_logger(__name__)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def _fail(message: str, code: int = EXIT_FAILURE):
    console.print(f"[red]✗ {message}[/red]", soft_wrap=True)
    raise typer.Exit(code)


def _setup(config_path: Optional[Path], log_level: Optional[str]) -> Settings:
    """Load settings and configure logging; config errors exit with status 1."""
    try:
        settings = load_config(config_path)
    except ConfigError as e:
        _fail(str(e))

    configure_logging(settings.logging, force=True)
    if log_level:
        if log_level.upper() not in LOG_LEVELS:
            _fail(f"invalid log level '{log_level}' (choose from {', '.join(LOG_LEVELS)})")
        set_log_level(log_level)
    return settings


def _read(path: Optional[Path]):
    return None if path is None else read_matrix(path)


def _load_problem(a_path: Path, b_path: Optional[Path]) -> GepProblem:
    """
    Read A and B (identity when b_path is omitted) and validate the pair.
    """
    a = read_matrix(a_path)
    b = read_matrix(b_path) if b_path is not None else None
    if b is None:
        b = np.eye(a.shape[0])
    try:
        return GepProblem(a, b)
    except (NotSymmetric, NotPositiveDefinite, ShapeMismatch, NonFiniteValue) as e:
        source = f"{a_path}" if b_path is None else f"{a_path}, {b_path}"
        _fail(f"{source}: {e}")


def _ascent_config(settings: Settings, overrides: Dict) -> AscentConfig:
    merged = settings.ascent.model_dump()
    merged.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return AscentConfig(**merged)
    except ValidationError as e:
        _fail(f"invalid ascent settings: {e.errors()[0]['msg']}")


def _parse_step(step: Optional[str]):
    if step is None or step == "auto":
        return step
    try:
        return float(step)
    except ValueError:
        _fail(f"--step must be a positive number or 'auto', got '{step}'")


@app.command()
def solve(
    a_path: Path = typer.Option(..., "--a", help="Matrix file for A (symmetric)"),
    b_path: Optional[Path] = typer.Option(None, "--b", help="Matrix file for B (symmetric positive definite; default identity)"),
    k: int = typer.Option(..., "--k", help="Subspace dimension"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the random starting point"),
    step: Optional[str] = typer.Option(None, "--step", help="Step size or 'auto' (auto is small; raise --max-iters with it)"),
    max_iters: Optional[int] = typer.Option(None, "--max-iters", help="Iteration limit (default 50*d*k)"),
    grad_tol: Optional[float] = typer.Option(None, "--grad-tol", help="Gradient-norm stopping tolerance"),
    schedule: Optional[str] = typer.Option(None, "--schedule", help="Step schedule: constant or inverse-sqrt"),
    output: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here instead of stdout"),
    config_path: Optional[Path] = typer.Option(None, "--config", help="Path to config file"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
):
    """
    Solve the top-k GEP by gradient ascent on h and compare with the dense oracle.

    Exit codes: 0 converged, 1 input or check failure, 2 not converged or diverged.

    The defaults (automatic step, 50*d*k iterations) are conservative and
    often stop before the gradient tolerance is met, even on small
    instances; pass an explicit --step (e.g. 0.01) and a larger --max-iters
    for a converged run.

    Examples:
        geptrace solve --a A.txt --b B.txt --k 3 --step 0.01 --max-iters 50000
        geptrace solve --a A.txt --k 2 --step 0.01 --max-iters 20000 --out report.json
    """
    settings = _setup(config_path, log_level)
    cfg = _ascent_config(
        settings,
        {
            "seed": seed,
            "step_size": _parse_step(step),
            "max_iters": max_iters,
            "grad_tol": grad_tol,
            "schedule": schedule,
        },
    )

    logger.debug(f"solve: k={k}, step={cfg.step_size}, schedule={cfg.schedule}, seed={cfg.seed}")
    try:
        problem = _load_problem(a_path, b_path)
        tol = settings.tolerances
        report = build_run_report(
            problem,
            k,
            cfg,
            a_source=str(a_path),
            b_source=str(b_path) if b_path else None,
            ineq_tol=tol.ineq_tol,
            eq_tol=tol.eq_tol,
            gap_tol=tol.gap_tol,
        )
    except Diverged as e:
        _fail(str(e), EXIT_NOT_CONVERGED)
    except GeptraceError as e:
        _fail(str(e))

    text = report.to_json(output)
    if output is None:
        typer.echo(text, nl=False)
    else:
        console.print(f"[green]✓ Report written to {output}[/green]")

    opt = report.optimizer
    if report.exit_status == EXIT_OK:
        console.print(
            f"[green]✓ Converged in {opt.iterations} iterations: h = {opt.terminal_h:.12g}, "
            f"oracle sum = {report.instance.spectrum.top_k_sum:.12g}[/green]"
        )
    elif report.exit_status == EXIT_NOT_CONVERGED:
        console.print(
            f"[yellow]⚠ Not converged after {opt.iterations} iterations "
            f"(gradient norm {opt.final_grad_norm:.3e}); best h = {opt.terminal_h:.12g}[/yellow]"
        )
    else:
        console.print("[red]✗ A check failed at the returned iterate[/red]")
    raise typer.Exit(report.exit_status)


def _summary_table(aggregator: CheckAggregator) -> Table:
    stats = aggregator.get_statistics()
    table = Table(title="Check summary")
    table.add_column("Suite", style="cyan")
    table.add_column("Checks", justify="right")
    table.add_column("Passed", justify="right", style="green")
    table.add_column("Failed", justify="right", style="red")
    for name, counts in stats["by_suite"].items():
        table.add_row(name, str(counts["total"]), str(counts["passed"]), str(counts["failed"]))
    table.add_row("total", str(stats["total"]), str(stats["passed"]), str(stats["failed"]), style="bold")
    return table


@app.command()
def check(
    suite: Optional[str] = typer.Option(None, "--suite", help="Suite name, comma-separated list, or 'all'"),
    random_trials: Optional[int] = typer.Option(None, "--random", help="Run N seeded random trials per suite"),
    seed: int = typer.Option(0, "--seed", help="Base seed; trial t uses seed + t"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Parallel trial workers"),
    a_path: Optional[Path] = typer.Option(None, "--a", help="Matrix file A"),
    b_path: Optional[Path] = typer.Option(None, "--b", help="Matrix file B (or second operand)"),
    w_path: Optional[Path] = typer.Option(None, "--w", help="Matrix file W / S / M"),
    k: Optional[int] = typer.Option(None, "--k", help="Subspace dimension for file checks"),
    output: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here instead of stdout"),
    csv_path: Optional[Path] = typer.Option(None, "--csv", help="Also export check rows to CSV (.tsv for tab-separated)"),
    witnesses: bool = typer.Option(False, "--witnesses", help="Include witness values in the JSON"),
    config_path: Optional[Path] = typer.Option(None, "--config", help="Path to config file"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
):
    """
    Verify the trace and eigenvalue inequalities on random or supplied matrices.

    Exit code 0 iff every check passes.

    Examples:
        geptrace check --random 100 --suite all --seed 1
        geptrace check --suite vonneumann --a X.txt --w Y.txt
        geptrace check --suite constrained --a A.txt --b B.txt --w W.txt --csv checks.csv
    """
    settings = _setup(config_path, log_level)
    selector = suite or settings.checks.suite
    tol = settings.tolerances

    try:
        names = resolve_suites(selector)
        suites = create_suites(names, tol.ineq_tol, tol.eq_tol, tol.gap_tol)
        file_mode = random_trials is None and any(p is not None for p in (a_path, b_path, w_path))

        aggregator = CheckAggregator(include_witnesses=witnesses)
        if file_mode:
            inputs = SuiteInputs(
                A=_read(a_path),
                B=_read(b_path),
                W=_read(w_path),
                k=k,
                sources={n: str(p) for n, p in (("A", a_path), ("B", b_path), ("W", w_path)) if p},
            )
            runs = run_suites_on_inputs(suites, inputs, seed, skip_missing=selector.strip() == "all")
            metadata = {"mode": "files", "seed": seed, "inputs": inputs.sources}
            if not runs:
                _fail("no selected suite can run on the supplied matrices")
        else:
            trials = random_trials if random_trials is not None else settings.checks.trials
            if trials < 1:
                _fail("--random must be at least 1")
            n_workers = workers if workers is not None else settings.checks.workers
            runs = run_suites(suites, trials, seed, max(1, n_workers))
            metadata = {"mode": "random", "seed": seed, "trials": trials}
    except GeptraceError as e:
        _fail(str(e))

    for s in suites:
        if any(run.suite == s.name for run in runs):
            aggregator.register_suite(s.name, s.description, 0 if file_mode else metadata["trials"])
    aggregator.add_runs(runs)

    metadata.update({"version": __version__, "suites": [s.name for s in suites]})
    text = aggregator.write_json(output, metadata)
    if output is None:
        typer.echo(text, nl=False)

    if csv_path is not None:
        fmt = "tsv" if csv_path.suffix.lower() == ".tsv" else "csv"
        export_with_format(aggregator.get_records(), csv_path, fmt)
        console.print(f"[green]✓ Exported {len(aggregator.get_records())} rows to {csv_path}[/green]")

    console.print(_summary_table(aggregator))
    if aggregator.all_passed():
        console.print("[green]✓ All checks passed[/green]")
        raise typer.Exit(EXIT_OK)
    for failure in aggregator.get_failures()[:10]:
        console.print(
            f"[red]✗ {failure['suite']} trial {failure['trial']}: {failure['name']} "
            f"(lhs {failure['lhs']!r}, rhs {failure['rhs']!r})[/red]"
        )
    raise typer.Exit(EXIT_FAILURE)


@app.command()
def gen(
    d: int = typer.Option(..., "--d", help="Dimension"),
    spectrum: str = typer.Option(..., "--spectrum", help="Descending list 'l1,...,ld' or 'gap:g'"),
    k: Optional[int] = typer.Option(None, "--k", help="Subspace dimension recorded in the report"),
    seed: int = typer.Option(0, "--seed", help="Generator seed"),
    b_cond: float = typer.Option(1.0, "--b-cond", help="Condition number of B (1 gives the identity)"),
    planted: bool = typer.Option(False, "--planted", help="Make the generalized spectrum equal the given one"),
    out_a: Path = typer.Option(Path("A.txt"), "--out-a", help="Output file for A"),
    out_b: Path = typer.Option(Path("B.txt"), "--out-b", help="Output file for B"),
    report_path: Optional[Path] = typer.Option(None, "--report", help="Write the instance report here instead of stdout"),
    config_path: Optional[Path] = typer.Option(None, "--config", help="Path to config file"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
):
    """
    Generate a seeded GEP instance A = Q diag(spectrum) Q^T, B = P diag(b) P^T.

    Without --planted the generalized spectrum of (A, B) differs from the
    requested one whenever B is not the identity; the report records the
    oracle spectrum.

    Examples:
        geptrace gen --d 3 --spectrum 3,2,1 --seed 7
        geptrace gen --d 10 --spectrum gap:0.5 --b-cond 10 --planted --k 3
    """
    settings = _setup(config_path, log_level)
    try:
        instance = generate.make_instance(d, spectrum, b_cond=b_cond, seed=seed, planted=planted)
        sol = solve_dense(instance.problem())
        if k is not None:
            oracle = top_k(sol, k, settings.tolerances.gap_tol)
    except BadSpectrumSpec as e:
        _fail(f"invalid spectrum: {e}")
    except GeptraceError as e:
        _fail(str(e))

    write_matrix(out_a, instance.A)
    write_matrix(out_b, instance.B)

    report = {
        "d": d,
        "seed": seed,
        "spectrum": [float(v) for v in instance.spectrum],
        "b_condition": float(b_cond),
        "planted": planted,
        "a_path": str(out_a),
        "b_path": str(out_b),
        "generalized_eigenvalues": [float(v) for v in sol.eigenvalues],
    }
    if k is not None:
        report.update({
            "k": k,
            "top_k_sum": sol.top_sum(k),
            "gap_k": None if k >= d else sol.gap_at(k),
            "unique_top_k": oracle.unique,
        })

    text = write_json(report, report_path)
    if report_path is None:
        typer.echo(text, nl=False)
    console.print(f"[green]✓ Wrote {out_a} and {out_b}[/green]")


@app.command()
def version():
    """Show geptrace version."""
    console.print(f"geptrace v{__version__}")


config_app = typer.Typer(help="Manage geptrace configuration files")
app.add_typer(config_app, name="config")


@config_app.command("init")
def config_init(
    output: Optional[Path] = typer.Option(None, "-o", "--output", help=f"Output path (default: ./{DEFAULT_CONFIG_NAME})"),
    force: bool = typer.Option(False, "-f", "--force", help="Overwrite existing config file"),
):
    """
    Create a configuration file with every setting at its default.

    Examples:
        geptrace config init
        geptrace config init -o my-config.yaml --force
    """
    path = output or Path(DEFAULT_CONFIG_NAME)
    try:
        write_default_config(path, force=force)
    except ConfigError as e:
        _fail(str(e))
    console.print(f"[green]✓ Created {path}[/green]")


@config_app.command("show")
def config_show(
    config_file: Optional[Path] = typer.Option(None, "-c", "--config", help="Config file path"),
    section: Optional[str] = typer.Option(None, "-s", "--section", help="Show specific section only"),
):
    """
    Display the effective configuration (defaults + file).

    Examples:
        geptrace config show
        geptrace config show --section ascent
    """
    try:
        settings = load_config(config_file)
        source = find_config(config_file)
    except ConfigError as e:
        _fail(str(e))

    console.print(f"[cyan]Config source: {source or 'defaults (no file found)'}[/cyan]")
    data: Dict = settings.model_dump()
    if section:
        if section not in data:
            _fail(f"Section '{section}' not found (available: {', '.join(data)})")
        data = {section: data[section]}
        typer.echo(yaml.safe_dump(data, default_flow_style=False, sort_keys=False, indent=2), nl=False)
        return
    typer.echo(dump_settings(settings), nl=False)


def main():
    """Main entry point for the geptrace CLI."""
    app()


if __name__ == "__main__":
    main()
