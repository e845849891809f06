#!/usr/bin/env python3
"""Command line entry point for torrep: build modules, compute fusion and Weyl tables, run checks."""
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import structlog
from rich.console import Console
from rich.table import Table

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config.settings import compute_defaults, settings
from src.exactla.polynomials import parse_polynomial_list
from src.harness.checks import REGISTRY, run_check
from src.harness.models import CheckReport, SuiteSummary
from src.harness.requests import BuildRequest, build_filtered, build_module
from src.harness.suite import run_suite
from src.liecore.algebra import build_algebra
from src.liecore.cartan import CartanData
from src.repengine.analysis import character
from src.storage.csv_writer import CSVWriter, character_frame, graded_frame
from src.storage.json_writer import JSONWriter, render_payload
from src.weylfusion.decomposition import aff_decomposition
from src.weylfusion.polytuple import PolyTuple
from src.weylfusion.weyl_module import weyl_module_truncated

console = Console()
err_console = Console(stderr=True)
logger = structlog.get_logger()

VERDICT_STYLE = {"pass": "green", "fail": "bold red", "inconclusive-window": "yellow"}


def configure_logging(log_level: str) -> None:
    """JSON logs on stderr, filtered by level; stdout carries only results."""
    structlog.configure(
        processors=[
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(getattr(logging, log_level.upper(), logging.WARNING)),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def fail(command: str, error: Exception) -> None:
    logger.error(f"{command}_failed", error=str(error), exc_info=True)
    err_console.print(f"[bold red]Error: {error}[/bold red]")
    sys.exit(1)


def emit(payload: Any) -> None:
    click.echo(render_payload(payload), nl=False)


def save(payload: Any, frame, stem: str) -> None:
    """Write results under the output directory in the configured format."""
    if settings.output_format in ("json", "both"):
        path = JSONWriter(output_dir=f"{settings.output_dir}/json").write(payload, f"{stem}.json")
        err_console.print(f"[green]✓[/green] JSON file: {path}")
    if settings.output_format in ("csv", "both") and frame is not None:
        path = CSVWriter(output_dir=f"{settings.output_dir}/csv").write_frame(frame, f"{stem}.csv")
        err_console.print(f"[green]✓[/green] CSV file: {path}")


def report_table(reports: List[CheckReport], title: str, criteria: Optional[List[int]] = None) -> Table:
    table = Table(title=title)
    if criteria is not None:
        table.add_column("#", style="cyan")
    table.add_column("Check", style="magenta")
    table.add_column("Verdict")
    table.add_column("Witness", style="dim")
    table.add_column("Seconds", justify="right")
    for position, report in enumerate(reports):
        row = [report.name, f"[{VERDICT_STYLE[report.verdict]}]{report.verdict}[/]", report.witness or "", f"{report.seconds}"]
        if criteria is not None:
            row.insert(0, str(criteria[position]))
        table.add_row(*row)
    return table


def dims_table(title: str, rows: Dict[str, int], key: str) -> Table:
    table = Table(title=title)
    table.add_column(key, style="cyan")
    table.add_column("dim", style="green", justify="right")
    for name, dim in rows.items():
        table.add_row(name, str(dim))
    return table


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
    default=settings.log_level,
    help="Logging level",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "csv", "both"]),
    default=settings.output_format,
    help="Format of files written with --save",
)
@click.option("--output-dir", default=settings.output_dir, help="Directory for files written with --save")
def cli(log_level: str, output_format: str, output_dir: str):
    """
    Representations of toroidal Lie algebras in finite windows.

    Results go to stdout as JSON; logs and diagnostics go to stderr.
    """
    settings.log_level = log_level
    settings.output_format = output_format
    settings.output_dir = output_dir
    configure_logging(log_level)


@cli.command()
@click.argument("document", type=str)
@click.option("--table", "as_table", is_flag=True, help="Print a rich table instead of JSON")
@click.option("--save", "save_output", is_flag=True, help="Also write the character to the output directory")
def build(document: str, as_table: bool, save_output: bool):
    """Build a module from a JSON document (or a path to one) and print its character."""
    try:
        text = document if document.lstrip().startswith("{") else Path(document).read_text(encoding="utf-8")
        request = BuildRequest.model_validate(json.loads(text))
        table = character(build_module(request))
        if as_table:
            console.print(dims_table(table.module, {" ".join(e.weight): e.dim for e in table.weights}, "weight"))
        else:
            emit(table)
        if save_output:
            save(table, character_frame(table), f"character_{request.kind}")
    except Exception as e:
        fail("build", e)


@cli.command()
@click.option("--type", "type_label", default="A1", help="Cartan label")
@click.option("--weights", required=True, help='Finite weights of the factors, e.g. "1;1" or "1,0;0,1"')
@click.option("--points", required=True, help='Fusion points, e.g. "0,1"')
@click.option("--degree-bound", type=int, default=compute_defaults.fusion_degree, help="Filtration degree bound R")
@click.option("--table", "as_table", is_flag=True, help="Print a rich table instead of JSON")
@click.option("--save", "save_output", is_flag=True, help="Also write the graded table")
def fusion(type_label: str, weights: str, points: str, degree_bound: int, as_table: bool, save_output: bool):
    """Graded dimensions of the fusion product of V_fin(weights) at the points."""
    try:
        request = BuildRequest(
            kind="fusion",
            type=type_label,
            weights=[tuple(int(c) for c in w.split(",")) for w in weights.split(";")],
            points=[p.strip() for p in points.split(",")],
            degree_bound=degree_bound,
        )
        filtered = build_filtered(request)
        table = filtered.table()
        if as_table:
            console.print(dims_table(table.module, {f"gr_{r}": d for r, d in enumerate(table.degrees)}, "degree"))
            console.print(f"total {table.total}, sum rule {'holds' if filtered.sum_rule_holds() else 'fails'}")
        else:
            emit(table)
        if save_output:
            save(table, graded_frame(table), "fusion")
    except Exception as e:
        fail("fusion", e)


@cli.command()
@click.option("--pi", "pi_text", required=True, help='Polynomial tuple, e.g. "[1,(1-u)^2]"')
@click.option("--type", "type_label", default="A1", help="Cartan label")
@click.option("--depth", type=int, default=compute_defaults.depth, help="Window D")
@click.option("--height", type=int, default=compute_defaults.height, help="Window H")
@click.option("--t2-degree", type=int, default=compute_defaults.t2_degree, help="Window K")
@click.option("--variant", type=click.Choice(["current", "full"]), default="current")
@click.option("--table", "as_table", is_flag=True, help="Print a rich table instead of JSON")
@click.option("--save", "save_output", is_flag=True, help="Also write the character")
def weyl(pi_text: str, type_label: str, depth: int, height: int, t2_degree: int, variant: str, as_table: bool, save_output: bool):
    """Graded dimensions and highest-weight decomposition of a window of W_tor(pi)."""
    try:
        algebra = build_algebra(CartanData.parse(type_label))
        pi = PolyTuple(algebra, parse_polynomial_list(pi_text))
        module = weyl_module_truncated(pi, depth, t2_degree, height, variant)
        dims = {",".join(map(str, eta)): d for eta, d in sorted(module.graded_dims().items())}
        inexact = sorted(",".join(map(str, eta)) for eta in module.keys if not module.spaces[eta].exact)
        decomposition = aff_decomposition(module)
        payload = {
            "module": module.descriptor(),
            "pi": pi.as_dict(),
            "window": {"depth": depth, "height": height, "t2_degree": t2_degree, "variant": variant},
            "graded_dims": dims,
            "inexact": inexact,
            "decomposition": decomposition.model_dump(mode="json"),
        }
        if as_table:
            console.print(dims_table(module.descriptor(), dims, "eta"))
            if inexact:
                console.print(f"[yellow]not certified: {', '.join(inexact)}[/yellow]")
        else:
            emit(payload)
        if save_output:
            save(payload, character_frame(character(module)), "weyl")
    except Exception as e:
        fail("weyl", e)


@cli.command()
@click.option("--name", type=click.Choice(sorted(REGISTRY)), help="Check to run")
@click.option("--all", "run_all", is_flag=True, help="Run every registered check")
@click.option("--params", "params_text", default=None, help="JSON object of parameter overrides")
@click.option("--trials", type=int, default=None, help="Shortcut for the trials parameter")
@click.option("--seed", type=int, default=None, help="Shortcut for the seed parameter")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of a table")
@click.option("--timings", is_flag=True, help="Keep wall times in the JSON output")
def check(name: Optional[str], run_all: bool, params_text: Optional[str], trials: Optional[int], seed: Optional[int], as_json: bool, timings: bool):
    """Run one named check, or all of them."""
    if not name and not run_all:
        raise click.UsageError("pass --name or --all")
    try:
        params: Dict[str, Any] = json.loads(params_text) if params_text else {}
        for key, value in (("trials", trials), ("seed", seed)):
            if value is not None:
                params[key] = value
        if run_all:
            reports = [run_check(n) for n in sorted(REGISTRY)]
        else:
            reports = [run_check(name, params)]
        if as_json:
            documents = [r.model_dump(mode="json", exclude=None if timings else {"seconds"}) for r in reports]
            emit({"reports": documents})
        else:
            console.print(report_table(reports, "Checks"))
    except Exception as e:
        fail("check", e)
    if any(r.verdict == "fail" for r in reports):
        sys.exit(1)


@cli.command()
@click.option("--json", "as_json", is_flag=True, help="Print the machine-readable summary")
@click.option("--table", "as_table", is_flag=True, help="Print a rich table (default without --json)")
@click.option("--timings", is_flag=True, help="Keep wall times in the JSON output")
@click.option("--workers", type=int, default=1, help="Run independent checks in a thread pool")
@click.option("--save", "save_output", is_flag=True, help="Also write the summary")
def suite(as_json: bool, as_table: bool, timings: bool, workers: int, save_output: bool):
    """Run the acceptance battery, one check per criterion."""
    try:
        summary: SuiteSummary = run_suite(workers)
        payload = summary.payload(timings)
        if as_json:
            emit(payload)
        if as_table or not as_json:
            target = err_console if as_json else console
            target.print(
                report_table([e.report for e in summary.entries], "Acceptance suite", [e.criterion for e in summary.entries])
            )
            target.print(f"passed {summary.passed}, failed {summary.failed} of {len(summary.entries)}")
        if save_output:
            save(payload, None, "suite")
    except Exception as e:
        fail("suite", e)
    if not summary.ok:
        sys.exit(1)


if __name__ == "__main__":
    cli()
