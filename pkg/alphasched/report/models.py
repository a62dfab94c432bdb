"""
Report schema for alphasched.

Reports are pydantic models so that the JSON written by the CLI validates
and round-trips through the same classes.
"""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from ..core.alpha_points import APPROXIMATION_RATIO, LP_GAP_FACTOR

RATIO_TOLERANCE = 1e-6

# Fixed CSV column order for bench rows.
CSV_COLUMNS = [
    "seed",
    "n",
    "edges",
    "lp_bound",
    "pmtn_double_speed_cost",
    "alg_cost",
    "expected_cost",
    "exact_opt",
    "ratio_alg_lp",
    "ratio_alg_opt",
    "ratio_lp_opt",
    "ms_lp",
    "ms_pmtn",
    "ms_alpha",
    "ms_exact",
]


def ratio(numerator: Optional[float], denominator: Optional[float]) -> Optional[float]:
    """``numerator / denominator``, or None when either is missing or the denominator vanishes."""
    if numerator is None or denominator is None or denominator <= 1e-12:
        return None
    return numerator / denominator


class InstanceSummary(BaseModel):
    name: str
    n: int
    edges: int


class LpReport(BaseModel):
    objective: float
    c_star: Dict[int, float]
    cuts: int
    rounds: int
    lp_solves: int


class ScheduleReport(BaseModel):
    speed: float
    segments: Dict[int, List[Tuple[float, float]]]
    completions: Dict[int, float]
    cost: float


class AlphaReport(BaseModel):
    mode: str
    best_alpha: float
    order: List[int]
    segments: Dict[int, List[Tuple[float, float]]]
    completions: Dict[int, float]
    cost: float
    expected_cost: float
    breakpoints: List[float]
    candidates: int


class BaselineReport(BaseModel):
    """Older list scheduling rules in LP order, for comparison."""
    lp_order_nonpreemptive: float
    lp_order_preemptive: float


class ExactReport(BaseModel):
    cost: float
    order: List[int]
    nodes_explored: int


class Ratios(BaseModel):
    alg_lp: Optional[float] = None
    pmtn_lp: Optional[float] = None
    alg_opt: Optional[float] = None
    lp_opt: Optional[float] = None


class SolveReport(BaseModel):
    instance: InstanceSummary
    lp: LpReport
    pmtn: ScheduleReport
    alpha: AlphaReport
    baselines: BaselineReport
    exact: Optional[ExactReport] = None
    ratios: Ratios
    timings: Optional[Dict[str, float]] = None


class BenchRecord(BaseModel):
    """One bench row: bounds, costs and ratios of a single random instance."""
    seed: Optional[int] = None
    n: int
    edges: int
    lp_bound: float
    pmtn_double_speed_cost: float
    alg_cost: float
    expected_cost: float
    exact_opt: Optional[float] = None
    ratio_alg_lp: Optional[float] = None
    ratio_alg_opt: Optional[float] = None
    ratio_lp_opt: Optional[float] = None
    ms_lp: Optional[float] = None
    ms_pmtn: Optional[float] = None
    ms_alpha: Optional[float] = None
    ms_exact: Optional[float] = None

    def violations(self) -> List[str]:
        """Guarantees this row breaks, as messages. Empty when all hold."""
        bound = APPROXIMATION_RATIO + RATIO_TOLERANCE
        problems = []
        if self.alg_cost > bound * self.lp_bound + 1e-9:
            problems.append(f"seed {self.seed}: alg/lp above {bound:.7f}")
        if self.pmtn_double_speed_cost > self.lp_bound * (1 + RATIO_TOLERANCE) + 1e-9:
            problems.append(f"seed {self.seed}: double speed cost above LP bound")
        if self.exact_opt is not None:
            if self.alg_cost > bound * self.exact_opt + 1e-9:
                problems.append(f"seed {self.seed}: alg/opt above {bound:.7f}")
            if self.lp_bound < (LP_GAP_FACTOR - RATIO_TOLERANCE) * self.exact_opt - 1e-9:
                problems.append(f"seed {self.seed}: lp/opt below {LP_GAP_FACTOR - RATIO_TOLERANCE:.7f}")
            if self.lp_bound > (1 + RATIO_TOLERANCE) * self.exact_opt + 1e-9:
                problems.append(f"seed {self.seed}: LP bound exceeds the optimum")
        return problems


class BenchSummary(BaseModel):
    count: int
    n: int
    seed: Optional[int] = None
    edge_prob: float
    max_ratio_alg_lp: Optional[float] = None
    mean_ratio_alg_lp: Optional[float] = None
    max_ratio_alg_opt: Optional[float] = None
    mean_ratio_alg_opt: Optional[float] = None
    min_ratio_lp_opt: Optional[float] = None
    mean_ratio_lp_opt: Optional[float] = None
    violations: List[str] = []


class BenchReport(BaseModel):
    summary: BenchSummary
    records: List[BenchRecord]
