"""
Alpha-point conversion of a preemptive list schedule into a nonpreemptive one.

For 0 < alpha <= 1 the alpha-point of job j is the first instant at which an
alpha fraction of j has been processed in the source schedule. Jobs are list
scheduled (nonpreemptively, on a regular machine) in order of their
alpha-points. Alpha is either drawn from the density

    f(alpha) = e^(alpha/2) / (2 (sqrt(e) - 1))

or chosen by evaluating every combinatorially distinct order. The expected
cost under f is computed exactly, interval by interval.
"""

import bisect
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import PrecedenceViolation, UnsupportedSchedule
from .instance import Instance
from .lp_relaxation import assert_extends_precedence
from .scheduling import Schedule, ScheduleKind, nonpreemptive_list_schedule, objective

logger = logging.getLogger(__name__)

SQRT_E_MINUS_1 = math.expm1(0.5)
SQRT_E = 1.0 + SQRT_E_MINUS_1
APPROXIMATION_RATIO = SQRT_E / SQRT_E_MINUS_1
LP_GAP_FACTOR = SQRT_E_MINUS_1 / SQRT_E
FRACTION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class AlphaProfile:
    """
    Processed fraction of every job over time in a preemptive list schedule.

    ``boundaries[j]`` lists ``(time, fraction)`` at every segment start and
    end of j; within a segment the fraction grows with slope ``speed / p_j``.
    """
    instance: Instance
    schedule: Schedule
    boundaries: Dict[int, Tuple[Tuple[float, float], ...]]

    @property
    def speed(self) -> float:
        return self.schedule.speed

    def completion(self, j: int) -> float:
        return self.schedule.completion_time(j)


@dataclass(frozen=True)
class AlphaResult:
    """Nonpreemptive list schedule in alpha-point order for one alpha."""
    alpha: float
    order: Tuple[int, ...]
    schedule: Schedule
    cost: float
    breakpoints: Tuple[float, ...] = field(default_factory=tuple)
    expected_cost: Optional[float] = None
    candidates: int = 1


def build_profile(inst: Instance, sched: Schedule) -> AlphaProfile:
    """
    Raises:
        UnsupportedSchedule: ``sched`` was not produced by preemptive list scheduling.
    """
    if sched.kind != ScheduleKind.PREEMPTIVE_LIST:
        raise UnsupportedSchedule(
            f"Alpha-points need a preemptive list schedule, got a {sched.kind.value} schedule")
    if sched.speed != 2.0:
        logger.info("Source schedule runs at speed %g; the ratio guarantee assumes speed 2", sched.speed)

    boundaries = {}
    for j in sorted(sched.segments):
        p = inst.p(j)
        points = []
        work = 0.0
        for a, b in sched.segments[j]:
            if p > 0:
                points.append((a, work / p))
                work += (b - a) * sched.speed
                points.append((b, min(work / p, 1.0)))
            else:
                points.append((a, 1.0))
        if p > 0:
            points[-1] = (points[-1][0], 1.0)
        boundaries[j] = tuple(points)
    return AlphaProfile(instance=inst, schedule=sched, boundaries=boundaries)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")


def alpha_point(profile: AlphaProfile, j: int, alpha: float) -> float:
    """First instant at which an ``alpha`` fraction of job j is done."""
    _check_alpha(alpha)
    points = profile.boundaries[j]
    if profile.instance.p(j) <= 0:
        return points[-1][0]
    for (a, frac_a), (b, frac_b) in zip(points[::2], points[1::2]):
        if alpha <= frac_b + FRACTION_TOLERANCE:
            if alpha >= frac_b:
                return b
            return a + (alpha - frac_a) * profile.instance.p(j) / profile.speed
    return points[-1][0]


def eta_fractions(profile: AlphaProfile, k: int) -> Dict[int, float]:
    """Fraction of every job processed in the source schedule by time C'_k."""
    horizon = profile.completion(k)
    inst = profile.instance
    eta = {}
    for j, intervals in profile.schedule.segments.items():
        if j == k:
            eta[j] = 1.0
        elif inst.p(j) <= 0:
            eta[j] = 1.0 if profile.completion(j) <= horizon else 0.0
        else:
            done = sum(max(0.0, min(b, horizon) - a) for a, b in intervals) * profile.speed
            eta[j] = min(done / inst.p(j), 1.0)
    return {j: eta[j] for j in sorted(eta)}


def _sort_key(profile: AlphaProfile, alpha: float):
    position = {j: i for i, j in enumerate(profile.schedule.order)}
    inst = profile.instance

    def key(j: int):
        return (alpha_point(profile, j, alpha), profile.completion(j), inst.p(j) <= 0, position[j], j)
    return key


def alpha_order(profile: AlphaProfile, alpha: float) -> List[int]:
    """
    Jobs by increasing alpha-point; ties by source completion time, then
    positive-length before zero-length jobs, then source list position, then id.
    """
    return sorted(profile.schedule.segments, key=_sort_key(profile, alpha))


def alpha_schedule(inst: Instance, profile: AlphaProfile, alpha: float) -> AlphaResult:
    order = alpha_order(profile, alpha)
    assert_extends_precedence(order, inst, PrecedenceViolation)
    sched = nonpreemptive_list_schedule(inst, order)
    return AlphaResult(alpha=alpha, order=tuple(order), schedule=sched, cost=objective(sched, inst))


def completion_bound(profile: AlphaProfile, k: int, alpha: float) -> float:
    """
    Upper bound on k's completion time in the alpha schedule:
    ``C'_k + sum over {j : eta_j >= alpha} of (1 + (alpha - eta_j) / s) p_j``
    for a source schedule of speed s.
    """
    _check_alpha(alpha)
    inst = profile.instance
    eta = eta_fractions(profile, k)
    total = profile.completion(k)
    for j, eta_j in eta.items():
        if eta_j >= alpha - FRACTION_TOLERANCE:
            total += (1.0 + (alpha - eta_j) / profile.speed) * inst.p(j)
    return total


def processed_lower_bound(profile: AlphaProfile, k: int) -> float:
    """``sum_j eta_j p_j / s``; never exceeds C'_k."""
    inst = profile.instance
    return sum(eta_j * inst.p(j) for j, eta_j in eta_fractions(profile, k).items()) / profile.speed


def expected_completion_bound(profile: AlphaProfile, k: int) -> float:
    """``C'_k + sum_j eta_j p_j / (s (sqrt(e) - 1))``, bounding E[C_k^alpha] under the density."""
    return profile.completion(k) + processed_lower_bound(profile, k) / SQRT_E_MINUS_1


# -- the alpha distribution ------------------------------------------------------

def alpha_density(alpha: float) -> float:
    return math.exp(alpha / 2.0) / (2.0 * SQRT_E_MINUS_1)


def alpha_cdf(alpha: float) -> float:
    """F(alpha) = (e^(alpha/2) - 1) / (sqrt(e) - 1) on [0, 1]."""
    if alpha <= 0.0:
        return 0.0
    if alpha >= 1.0:
        return 1.0
    return math.expm1(alpha / 2.0) / SQRT_E_MINUS_1


def sample_alpha(u: float) -> float:
    """
    Inverse CDF transform of a uniform draw ``u`` in [0, 1].

    ``u = 0`` maps to the smallest positive float since alpha = 0 is excluded.
    """
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must lie in [0, 1], got {u}")
    if u == 1.0:
        return 1.0
    alpha = 2.0 * math.log1p(u * SQRT_E_MINUS_1)
    if alpha <= 0.0:
        logger.debug("Clamping alpha draw u=%r to the smallest positive float", u)
        return math.nextafter(0.0, 1.0)
    return min(alpha, 1.0)


def sample_alphas(rng: np.random.Generator, size: int) -> np.ndarray:
    """Vectorised :func:`sample_alpha` for Monte Carlo runs."""
    u = rng.random(size)
    alphas = 2.0 * np.log1p(u * SQRT_E_MINUS_1)
    return np.clip(alphas, np.nextafter(0.0, 1.0), 1.0)


# -- derandomisation ---------------------------------------------------------------

def breakpoints(profile: AlphaProfile) -> List[float]:
    """
    Fractions in (0, 1) at which the alpha order can change, sorted and distinct.

    These are the processed fractions at interior segment boundaries, plus the
    fraction of a running job at every zero-length job's event instant inside
    one of its segments.
    """
    inst = profile.instance
    events = [profile.completion(k) for k in profile.boundaries if inst.p(k) <= 0]
    fractions = []
    for j, points in profile.boundaries.items():
        if inst.p(j) <= 0:
            continue
        # segment ends except the last one
        fractions.extend(frac for _, frac in points[1:-1:2])
        for (a, frac_a), (b, _) in zip(points[::2], points[1::2]):
            fractions.extend(frac_a + (t - a) * profile.speed / inst.p(j) for t in events if a < t < b)
    result: List[float] = []
    for frac in sorted(fractions):
        if not FRACTION_TOLERANCE < frac < 1.0 - FRACTION_TOLERANCE:
            continue
        if not result or frac - result[-1] > FRACTION_TOLERANCE:
            result.append(frac)
    return result


def interval_midpoints(points: Sequence[float]) -> List[float]:
    edges = [0.0] + list(points) + [1.0]
    return [(lo + hi) / 2.0 for lo, hi in zip(edges, edges[1:])]


def interval_results(inst: Instance, profile: AlphaProfile) -> List[Tuple[float, float, AlphaResult]]:
    """``(lo, hi, result at the midpoint)`` for every interval between consecutive breakpoints."""
    points = breakpoints(profile)
    edges = [0.0] + points + [1.0]
    return [(lo, hi, alpha_schedule(inst, profile, mid))
            for lo, hi, mid in zip(edges, edges[1:], interval_midpoints(points))]


def _expectation(intervals: Sequence[Tuple[float, float, AlphaResult]]) -> float:
    return sum(res.cost * (alpha_cdf(hi) - alpha_cdf(lo)) for lo, hi, res in intervals)


def expected_cost(inst: Instance, profile: AlphaProfile) -> float:
    """Exact expected cost when alpha is drawn from the density."""
    return _expectation(interval_results(inst, profile))


def expected_completion_times(inst: Instance, profile: AlphaProfile) -> Dict[int, float]:
    """Exact E[C_j^alpha] for every job."""
    expected = {j: 0.0 for j in inst.ids}
    for lo, hi, res in interval_results(inst, profile):
        mass = alpha_cdf(hi) - alpha_cdf(lo)
        for j in inst.ids:
            expected[j] += mass * res.schedule.completion_time(j)
    return expected


def cost_at(intervals: Sequence[Tuple[float, float, AlphaResult]], alpha: float) -> float:
    """Cost for ``alpha`` looked up in precomputed :func:`interval_results`."""
    highs = [hi for _, hi, _ in intervals]
    return intervals[min(bisect.bisect_left(highs, alpha), len(intervals) - 1)][2].cost


def _with_distribution(result: AlphaResult, profile: AlphaProfile,
                       intervals: Sequence[Tuple[float, float, AlphaResult]], candidates: int = 1) -> AlphaResult:
    return replace(result, breakpoints=tuple(breakpoints(profile)),
                   expected_cost=_expectation(intervals), candidates=candidates)


def derandomized_best(inst: Instance, profile: AlphaProfile) -> AlphaResult:
    """
    Best alpha over every breakpoint, every interval midpoint and alpha = 1.

    Ties in cost go to the smaller alpha. The result also carries the
    breakpoints and the exact expected cost under the density.
    """
    points = breakpoints(profile)
    intervals = interval_results(inst, profile)
    results = [res for _, _, res in intervals]
    results.extend(alpha_schedule(inst, profile, alpha) for alpha in points + [1.0])

    best = min(results, key=lambda res: (res.cost, res.alpha))
    logger.debug("Evaluated %d alpha candidates over %d breakpoints; best alpha %.6g cost %.10g",
                 len(results), len(points), best.alpha, best.cost)
    return _with_distribution(best, profile, intervals, candidates=len(results))


def randomized_alpha(inst: Instance, profile: AlphaProfile, seed: int) -> AlphaResult:
    """One draw of alpha from the density with a seeded generator."""
    rng = np.random.default_rng(seed)
    alpha = sample_alpha(float(rng.random()))
    return _with_distribution(alpha_schedule(inst, profile, alpha), profile, interval_results(inst, profile))


def fixed_alpha(inst: Instance, profile: AlphaProfile, alpha: float) -> AlphaResult:
    """List schedule for one caller-chosen alpha."""
    return _with_distribution(alpha_schedule(inst, profile, alpha), profile, interval_results(inst, profile))
