"""
Experiment harness: solve a sweep of seeded random instances and tabulate
bounds, costs and ratios.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import List, Optional

import pandas as pd

from ..config import SolverConfig, config
from ..core.instance import generate_random
from .models import CSV_COLUMNS, BenchRecord, BenchReport, BenchSummary
from .pipeline import Solver

logger = logging.getLogger(__name__)


def bench_one(seed: int, n: int, edge_prob: float, exact: bool, timings: bool,
              config_instance: SolverConfig) -> BenchRecord:
    """Generate the instance for ``seed`` and run the pipeline on it."""
    inst = generate_random(
        n,
        p_max=config_instance.p_max,
        r_max=config_instance.r_max,
        w_max=config_instance.w_max,
        edge_prob=edge_prob,
        seed=seed,
        zero_length_prob=config_instance.zero_length_prob,
    )
    solver = Solver(config_instance)
    outcome = solver.solve(inst, with_exact=exact and n <= config_instance.exact_n_limit)
    return solver.bench_record(outcome, seed=seed, timings=timings)


def run_bench(
    count: int,
    n: int,
    seed: int = 0,
    edge_prob: Optional[float] = None,
    jobs: int = 1,
    exact: Optional[bool] = None,
    timings: bool = False,
    config_instance: Optional[SolverConfig] = None,
) -> List[BenchRecord]:
    """
    One record per instance seed ``seed, seed + 1, ..., seed + count - 1``.

    With ``jobs > 1`` instances are solved in worker processes; records are
    returned in seed order either way.
    """
    config_instance = config_instance or config
    if count < 1:
        raise ValueError("count must be at least 1")
    if edge_prob is None:
        edge_prob = config_instance.edge_prob
    if exact is None:
        exact = config_instance.bench_exact

    work = partial(bench_one, n=n, edge_prob=edge_prob, exact=exact, timings=timings,
                   config_instance=config_instance)
    seeds = range(seed, seed + count)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(work, seeds))
    else:
        records = [work(s) for s in seeds]
    logger.info("Benchmarked %d instances with n=%d", len(records), n)
    return records


def records_frame(records: List[BenchRecord]) -> pd.DataFrame:
    return pd.DataFrame([record.model_dump() for record in records], columns=CSV_COLUMNS)


def records_to_csv(records: List[BenchRecord]) -> str:
    return records_frame(records).to_csv(index=False, lineterminator="\n")


def _stat(series: pd.Series, how: str) -> Optional[float]:
    series = series.dropna()
    if series.empty:
        return None
    return float(getattr(series, how)())


def summarize(records: List[BenchRecord], n: int, seed: int, edge_prob: float) -> BenchSummary:
    """Max and mean ratios plus every guarantee a record breaks."""
    frame = records_frame(records)
    violations = [message for record in records for message in record.violations()]
    for message in violations:
        logger.warning("Guarantee violated: %s", message)
    return BenchSummary(
        count=len(records),
        n=n,
        seed=seed,
        edge_prob=edge_prob,
        max_ratio_alg_lp=_stat(frame["ratio_alg_lp"], "max"),
        mean_ratio_alg_lp=_stat(frame["ratio_alg_lp"], "mean"),
        max_ratio_alg_opt=_stat(frame["ratio_alg_opt"], "max"),
        mean_ratio_alg_opt=_stat(frame["ratio_alg_opt"], "mean"),
        min_ratio_lp_opt=_stat(frame["ratio_lp_opt"], "min"),
        mean_ratio_lp_opt=_stat(frame["ratio_lp_opt"], "mean"),
        violations=violations,
    )


def bench_report(records: List[BenchRecord], n: int, seed: int, edge_prob: float) -> BenchReport:
    return BenchReport(summary=summarize(records, n, seed, edge_prob), records=records)
