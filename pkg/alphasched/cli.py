"""
CLI interface for alphasched - approximation pipeline for single machine
scheduling with release dates and precedence constraints.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

import click

from . import __version__
from .config import SolverConfig, create_config
from .config import config as alphasched_config
from .core.errors import SchedulingError
from .core.instance import generate_random, load_instance, serialize
from .report.bench import bench_report, records_to_csv, run_bench
from .report.gantt import render_gantt
from .report.models import ExactReport
from .report.pipeline import ALPHA_MODES, Solver, lp_report

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
BENCH_VIOLATION_EXIT = 4

# Global variable to store the current configuration
current_config: Optional[SolverConfig] = None


class CommandFailed(click.ClickException):
    """ClickException that exits with the code of the underlying error."""

    def __init__(self, message: str, exit_code: int = 1):
        super().__init__(message)
        self.exit_code = exit_code


def _fail(context: str, error: Exception) -> CommandFailed:
    if isinstance(error, SchedulingError):
        detail, exit_code = error.detail, error.exit_code
    elif isinstance(error, ValueError):
        detail, exit_code = str(error), 2
    else:
        detail, exit_code = str(error), 1
    click.echo(f"❌ {context}: {detail}", err=True)
    return CommandFailed(detail, exit_code)


def _emit(text: str, output: Optional[str]) -> None:
    """Write a report to ``output`` or stdout."""
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def get_config(tol_sep: Optional[float] = None) -> SolverConfig:
    config_instance = current_config or alphasched_config
    if tol_sep is not None:
        config_instance = config_instance.model_copy(update={"tol_sep": tol_sep})
    return config_instance


def get_solver(tol_sep: Optional[float] = None) -> Solver:
    """Get a Solver with the current configuration."""
    return Solver(get_config(tol_sep))


@click.group()
@click.version_option(version=__version__, prog_name="sched")
@click.option('--config', 'config_file', help='Path to configuration file')
@click.option('--log-level', default=None,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              help='Logging level (defaults to the configured log_level)')
def cli(config_file: Optional[str] = None, log_level: Optional[str] = None):
    """alphasched - LP based alpha-point scheduling CLI"""
    global current_config
    if config_file:
        current_config = create_config(config_file)
    else:
        current_config = alphasched_config
    logging.basicConfig(
        level=(log_level or current_config.log_level).upper(),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


@cli.command()
@click.argument('instance_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--tol-sep', type=float, default=None, help='Separation tolerance for the cutting plane loop')
@click.option('--alpha', 'alpha_mode', type=click.Choice(ALPHA_MODES), default="best",
              help='best: derandomized, random: seeded draw, fixed: --alpha-value')
@click.option('--alpha-value', type=float, default=None, help='Alpha in (0, 1] for --alpha fixed')
@click.option('--seed', type=int, default=0, help='Seed for --alpha random')
@click.option('--exact', 'with_exact', is_flag=True, default=False, help='Also compute the exact optimum')
@click.option('--timings', is_flag=True, default=False, help='Include wall-clock stage timings')
@click.option('--svg', 'svg_file', default=None, help='Write a Gantt chart of the final schedule')
@click.option('--format', 'fmt', type=click.Choice(["json", "csv"]), default="json", help='Report format')
@click.option('--output', default=None, help='Write the report to a file instead of stdout')
def solve(instance_file: str, tol_sep: Optional[float], alpha_mode: str, alpha_value: Optional[float],
          seed: int, with_exact: bool, timings: bool, svg_file: Optional[str], fmt: str, output: Optional[str]):
    """Run the full approximation pipeline on an instance file."""
    try:
        solver = get_solver(tol_sep)
        inst = load_instance(instance_file)
        outcome = solver.solve(inst, alpha_mode=alpha_mode, seed=seed, alpha_value=alpha_value,
                               with_exact=with_exact)
        if fmt == "json":
            text = solver.report(outcome, timings=timings).model_dump_json(indent=2) + "\n"
        else:
            seed_column = seed if alpha_mode == "random" else None
            text = records_to_csv([solver.bench_record(outcome, seed=seed_column, timings=timings)])
        _emit(text, output)
        if svg_file:
            render_gantt(outcome.alpha.schedule, outcome.instance, svg_file,
                         title=f"{outcome.instance.name} (alpha {outcome.alpha.alpha:.4g})")
    except Exception as e:
        raise _fail("Error solving instance", e)


@cli.command()
@click.argument('instance_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--tol-sep', type=float, default=None, help='Separation tolerance for the cutting plane loop')
@click.option('--output', default=None, help='Write the result to a file instead of stdout')
def lb(instance_file: str, tol_sep: Optional[float], output: Optional[str]):
    """Compute the LP lower bound only."""
    try:
        solution = get_solver(tol_sep).lower_bound(load_instance(instance_file))
        _emit(lp_report(solution).model_dump_json(indent=2) + "\n", output)
    except Exception as e:
        raise _fail("Error computing lower bound", e)


@cli.command()
@click.argument('instance_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--n-limit', type=int, default=None, help='Largest instance the exhaustive search accepts')
@click.option('--output', default=None, help='Write the result to a file instead of stdout')
def exact(instance_file: str, n_limit: Optional[int], output: Optional[str]):
    """Compute the optimum by exhaustive search (small instances only)."""
    try:
        result = get_solver().exact(load_instance(instance_file), n_limit=n_limit)
        report = ExactReport(cost=result.cost, order=list(result.order), nodes_explored=result.nodes_explored)
        _emit(report.model_dump_json(indent=2) + "\n", output)
    except Exception as e:
        raise _fail("Error computing exact optimum", e)


@cli.command()
@click.option('--n', 'n', type=int, required=True, help='Number of jobs')
@click.option('--seed', type=int, required=True, help='Generator seed')
@click.option('--p-max', type=int, default=None, help='Largest processing time')
@click.option('--r-max', type=int, default=None, help='Largest release date')
@click.option('--w-max', type=int, default=None, help='Largest weight')
@click.option('--edge-prob', type=float, default=None, help='Probability of each precedence pair')
@click.option('--zero-length-prob', type=float, default=None, help='Probability of a zero-length job')
@click.option('--output', default=None, help='Write the instance to a file instead of stdout')
def gen(n: int, seed: int, p_max: Optional[int], r_max: Optional[int], w_max: Optional[int],
        edge_prob: Optional[float], zero_length_prob: Optional[float], output: Optional[str]):
    """Generate a random instance."""
    config_instance = get_config()

    def pick(value, default):
        return default if value is None else value

    try:
        inst = generate_random(
            n,
            p_max=pick(p_max, config_instance.p_max),
            r_max=pick(r_max, config_instance.r_max),
            w_max=pick(w_max, config_instance.w_max),
            edge_prob=pick(edge_prob, config_instance.edge_prob),
            seed=seed,
            zero_length_prob=pick(zero_length_prob, config_instance.zero_length_prob),
        )
        _emit(serialize(inst), output)
    except Exception as e:
        raise _fail("Error generating instance", e)


@cli.command()
@click.option('--count', type=int, required=True, help='Number of instances')
@click.option('--n', 'n', type=int, required=True, help='Jobs per instance')
@click.option('--seed', type=int, required=True, help='Seed of the first instance')
@click.option('--edge-prob', type=float, default=None, help='Probability of each precedence pair')
@click.option('--jobs', type=int, default=1, help='Worker processes')
@click.option('--no-exact', is_flag=True, default=False, help='Skip the exact optimum')
@click.option('--timings', is_flag=True, default=False, help='Include wall-clock stage timings')
@click.option('--format', 'fmt', type=click.Choice(["csv", "json"]), default="csv", help='Record format')
@click.option('--output', default=None, help='Write the records to a file instead of stdout')
@click.option('--summary', 'summary_file', default=None, help='Write the JSON summary to a file')
def bench(count: int, n: int, seed: int, edge_prob: Optional[float], jobs: int, no_exact: bool,
          timings: bool, fmt: str, output: Optional[str], summary_file: Optional[str]):
    """Benchmark the pipeline on a sweep of seeded random instances."""
    config_instance = get_config()
    edge_prob = config_instance.edge_prob if edge_prob is None else edge_prob
    try:
        records = run_bench(count, n, seed=seed, edge_prob=edge_prob, jobs=jobs,
                            exact=config_instance.bench_exact and not no_exact,
                            timings=timings, config_instance=config_instance)
        report = bench_report(records, n=n, seed=seed, edge_prob=edge_prob)
    except Exception as e:
        raise _fail("Error running benchmark", e)

    if fmt == "csv":
        _emit(records_to_csv(records), output)
    else:
        _emit(report.model_dump_json(indent=2) + "\n", output)
    if summary_file:
        Path(summary_file).write_text(report.summary.model_dump_json(indent=2) + "\n", encoding="utf-8")

    if report.summary.violations:
        for message in report.summary.violations:
            click.echo(f"❌ Guarantee violated: {message}", err=True)
        raise CommandFailed(f"{len(report.summary.violations)} guarantee violations", BENCH_VIOLATION_EXIT)


@cli.command()
def config():
    """Show current alphasched configuration."""
    config_instance = current_config or alphasched_config
    click.echo("Current alphasched Configuration:")
    click.echo(f"  Separation tolerance: {config_instance.tol_sep}")
    click.echo(f"  LP tolerance: {config_instance.lp_tolerance}")
    click.echo(f"  Pivot tolerance: {config_instance.pivot_tolerance}")
    click.echo(f"  Degenerate streak: {config_instance.degenerate_streak}")
    click.echo(f"  Round limit factor: {config_instance.round_limit_factor}")
    click.echo(f"  Exact n limit: {config_instance.exact_n_limit}")
    click.echo(f"  Separation n limit: {config_instance.separation_n_limit}")
    click.echo(f"  Generator: p_max={config_instance.p_max} r_max={config_instance.r_max} "
               f"w_max={config_instance.w_max}")
    click.echo(f"  Edge probability: {config_instance.edge_prob}")
    click.echo(f"  Zero-length probability: {config_instance.zero_length_prob}")
    click.echo(f"  Bench exact: {config_instance.bench_exact}")
    click.echo(f"  Log level: {config_instance.log_level}")


if __name__ == '__main__':
    cli()
