"""
Reports, experiment harness and figures for alphasched.
"""

from .bench import bench_report, records_to_csv, run_bench
from .models import BenchRecord, BenchReport, SolveReport
from .pipeline import Solver, SolveOutcome

__all__ = [
    "BenchRecord",
    "BenchReport",
    "SolveOutcome",
    "SolveReport",
    "Solver",
    "bench_report",
    "records_to_csv",
    "run_bench",
]
