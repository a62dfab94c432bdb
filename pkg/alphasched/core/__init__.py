"""
Core modules for alphasched.
"""

from .errors import (
    CycleError,
    InfeasibleLp,
    InstanceError,
    IterationLimit,
    NumericalError,
    OrderViolatesPrecedence,
    ParseError,
    PrecedenceViolation,
    SchedulingError,
    SolverError,
    TooLarge,
    UnboundedLp,
    UnsupportedSchedule,
)
from .instance import Instance, Job, generate_random, load_instance, normalize_release_dates, parse, serialize
from .lp_relaxation import Cut, LpSolution, lp_list_order, separate, solve_lp_relaxation
from .scheduling import Schedule, nonpreemptive_list_schedule, objective, preemptive_list_schedule
from .alpha_points import AlphaProfile, AlphaResult, APPROXIMATION_RATIO, build_profile, derandomized_best
from .exact_oracle import ExactResult, brute_force_optimum, brute_force_separation

__all__ = [
    "APPROXIMATION_RATIO",
    "AlphaProfile",
    "AlphaResult",
    "Cut",
    "CycleError",
    "ExactResult",
    "InfeasibleLp",
    "Instance",
    "InstanceError",
    "IterationLimit",
    "Job",
    "LpSolution",
    "NumericalError",
    "OrderViolatesPrecedence",
    "ParseError",
    "PrecedenceViolation",
    "Schedule",
    "SchedulingError",
    "SolverError",
    "TooLarge",
    "UnboundedLp",
    "UnsupportedSchedule",
    "brute_force_optimum",
    "brute_force_separation",
    "build_profile",
    "derandomized_best",
    "generate_random",
    "load_instance",
    "lp_list_order",
    "nonpreemptive_list_schedule",
    "normalize_release_dates",
    "objective",
    "parse",
    "preemptive_list_schedule",
    "separate",
    "serialize",
    "solve_lp_relaxation",
]
