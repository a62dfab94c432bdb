"""
Solver pipeline for alphasched.

LP relaxation -> LP order -> double speed preemptive list schedule ->
alpha-point conversion, plus the baselines and the exact oracle.
"""

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional

from ..config import SolverConfig, config
from ..core.alpha_points import (
    AlphaProfile,
    AlphaResult,
    build_profile,
    derandomized_best,
    fixed_alpha,
    randomized_alpha,
)
from ..core.exact_oracle import ExactResult, brute_force_optimum
from ..core.instance import Instance, normalize_release_dates
from ..core.lp_relaxation import LpSolution, lp_list_order, solve_lp_relaxation
from ..core.scheduling import (
    Schedule,
    completion_times,
    nonpreemptive_list_schedule,
    objective,
    preemptive_list_schedule,
)
from .models import (
    AlphaReport,
    BaselineReport,
    BenchRecord,
    ExactReport,
    InstanceSummary,
    LpReport,
    Ratios,
    ScheduleReport,
    SolveReport,
    ratio,
)

logger = logging.getLogger(__name__)

ALPHA_MODES = ("best", "random", "fixed")
DOUBLE_SPEED = 2.0


@dataclass
class SolveOutcome:
    """Every intermediate product of one pipeline run."""
    instance: Instance
    lp: LpSolution
    lp_order: List[int]
    pmtn: Schedule
    profile: AlphaProfile
    alpha: AlphaResult
    alpha_mode: str
    baselines: Dict[str, float]
    exact: Optional[ExactResult] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def pmtn_cost(self) -> float:
        return objective(self.pmtn, self.instance)


@contextmanager
def _stopwatch(timings: Dict[str, float], stage: str) -> Iterator[None]:
    start = time.perf_counter()
    yield
    timings[stage] = (time.perf_counter() - start) * 1000.0


def lp_report(solution: LpSolution) -> LpReport:
    return LpReport(
        objective=solution.objective,
        c_star={j: solution.c_star[j] for j in sorted(solution.c_star)},
        cuts=len(solution.cuts),
        rounds=solution.iterations,
        lp_solves=solution.lp_solves,
    )


def _schedule_report(sched: Schedule, inst: Instance) -> ScheduleReport:
    return ScheduleReport(
        speed=sched.speed,
        segments={j: [tuple(seg) for seg in sched.segments[j]] for j in sorted(sched.segments)},
        completions=completion_times(sched),
        cost=objective(sched, inst),
    )


class Solver:
    """Runs the approximation pipeline with a given configuration."""

    def __init__(self, config_instance: Optional[SolverConfig] = None):
        # Use provided config or default global config
        self.config = config_instance or config

    def lower_bound(self, inst: Instance) -> LpSolution:
        """LP relaxation of the normalized instance."""
        return solve_lp_relaxation(
            normalize_release_dates(inst),
            tol_sep=self.config.tol_sep,
            round_limit_factor=self.config.round_limit_factor,
            **self.config.simplex_options(),
        )

    def exact(self, inst: Instance, n_limit: Optional[int] = None) -> ExactResult:
        return brute_force_optimum(normalize_release_dates(inst), n_limit or self.config.exact_n_limit)

    def solve(
        self,
        inst: Instance,
        alpha_mode: str = "best",
        seed: Optional[int] = None,
        alpha_value: Optional[float] = None,
        with_exact: bool = False,
    ) -> SolveOutcome:
        """
        Run the full pipeline.

        Args:
            inst: validated instance (normalized here)
            alpha_mode: "best" (derandomized), "random" (seeded draw) or "fixed"
            seed: generator seed for ``alpha_mode="random"``
            alpha_value: alpha for ``alpha_mode="fixed"``
            with_exact: also run the exact oracle
        """
        if alpha_mode not in ALPHA_MODES:
            raise ValueError(f"alpha_mode must be one of {ALPHA_MODES}, got {alpha_mode!r}")
        if alpha_mode == "fixed" and alpha_value is None:
            raise ValueError("alpha_mode 'fixed' needs alpha_value")

        inst = normalize_release_dates(inst)
        timings: Dict[str, float] = {}

        with _stopwatch(timings, "lp"):
            lp = solve_lp_relaxation(
                inst,
                tol_sep=self.config.tol_sep,
                round_limit_factor=self.config.round_limit_factor,
                **self.config.simplex_options(),
            )
            order = lp_list_order(lp, inst)
        logger.info("LP bound %.10g after %d rounds", lp.objective, lp.iterations)

        with _stopwatch(timings, "pmtn"):
            pmtn = preemptive_list_schedule(inst, order, speed=DOUBLE_SPEED)
        logger.info("Double speed preemptive cost %.10g", objective(pmtn, inst))

        with _stopwatch(timings, "alpha"):
            profile = build_profile(inst, pmtn)
            if alpha_mode == "best":
                alpha = derandomized_best(inst, profile)
            elif alpha_mode == "random":
                alpha = randomized_alpha(inst, profile, seed if seed is not None else 0)
            else:
                alpha = fixed_alpha(inst, profile, alpha_value)
        logger.info("Alpha %.6g (%s) cost %.10g", alpha.alpha, alpha_mode, alpha.cost)

        baselines = {
            "lp_order_nonpreemptive": objective(nonpreemptive_list_schedule(inst, order), inst),
            "lp_order_preemptive": objective(preemptive_list_schedule(inst, order, speed=1.0), inst),
        }

        exact = None
        if with_exact:
            with _stopwatch(timings, "exact"):
                exact = brute_force_optimum(inst, self.config.exact_n_limit)
            logger.info("Exact optimum %.10g", exact.cost)

        return SolveOutcome(
            instance=inst,
            lp=lp,
            lp_order=order,
            pmtn=pmtn,
            profile=profile,
            alpha=alpha,
            alpha_mode=alpha_mode,
            baselines=baselines,
            exact=exact,
            timings=timings,
        )

    def report(self, outcome: SolveOutcome, timings: bool = False) -> SolveReport:
        inst = outcome.instance
        alpha = outcome.alpha
        exact_cost = outcome.exact.cost if outcome.exact else None
        return SolveReport(
            instance=InstanceSummary(name=inst.name, n=inst.n, edges=len(inst.prec)),
            lp=lp_report(outcome.lp),
            pmtn=_schedule_report(outcome.pmtn, inst),
            alpha=AlphaReport(
                mode=outcome.alpha_mode,
                best_alpha=alpha.alpha,
                order=list(alpha.order),
                segments={j: [tuple(seg) for seg in alpha.schedule.segments[j]] for j in sorted(alpha.schedule.segments)},
                completions=completion_times(alpha.schedule),
                cost=alpha.cost,
                expected_cost=alpha.expected_cost,
                breakpoints=list(alpha.breakpoints),
                candidates=alpha.candidates,
            ),
            baselines=BaselineReport(**outcome.baselines),
            exact=ExactReport(
                cost=outcome.exact.cost,
                order=list(outcome.exact.order),
                nodes_explored=outcome.exact.nodes_explored,
            ) if outcome.exact else None,
            ratios=Ratios(
                alg_lp=ratio(alpha.cost, outcome.lp.objective),
                pmtn_lp=ratio(outcome.pmtn_cost, outcome.lp.objective),
                alg_opt=ratio(alpha.cost, exact_cost),
                lp_opt=ratio(outcome.lp.objective, exact_cost),
            ),
            timings=dict(outcome.timings) if timings else None,
        )

    def bench_record(self, outcome: SolveOutcome, seed: int, timings: bool = False) -> BenchRecord:
        exact_cost = outcome.exact.cost if outcome.exact else None
        stage = outcome.timings.get if timings else (lambda _key: None)
        return BenchRecord(
            seed=seed,
            n=outcome.instance.n,
            edges=len(outcome.instance.prec),
            lp_bound=outcome.lp.objective,
            pmtn_double_speed_cost=outcome.pmtn_cost,
            alg_cost=outcome.alpha.cost,
            expected_cost=outcome.alpha.expected_cost,
            exact_opt=exact_cost,
            ratio_alg_lp=ratio(outcome.alpha.cost, outcome.lp.objective),
            ratio_alg_opt=ratio(outcome.alpha.cost, exact_cost),
            ratio_lp_opt=ratio(outcome.lp.objective, exact_cost),
            ms_lp=stage("lp"),
            ms_pmtn=stage("pmtn"),
            ms_alpha=stage("alpha"),
            ms_exact=stage("exact"),
        )
