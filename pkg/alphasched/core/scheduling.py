"""
Single machine schedules and list scheduling.

A :class:`Schedule` stores, per job, the half-open intervals during which the
machine processes it. A job of length zero is recorded as the instantaneous
event ``(t, t)``. The machine works at ``speed`` units of processing per time
unit, so a job occupies ``p_j / speed`` time in total.
"""

import bisect
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InstanceError, OrderViolatesPrecedence
from .instance import Instance

logger = logging.getLogger(__name__)

TIME_TOLERANCE = 1e-9

Interval = Tuple[float, float]


class ScheduleKind(str, Enum):
    NONPREEMPTIVE_LIST = "nonpreemptive_list"
    PREEMPTIVE_LIST = "preemptive_list"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Schedule:
    """Per-job processing intervals on one machine running at ``speed``."""
    speed: float
    segments: Dict[int, Tuple[Interval, ...]]
    kind: ScheduleKind = ScheduleKind.CUSTOM
    order: Tuple[int, ...] = field(default_factory=tuple)

    def completion_time(self, j: int) -> float:
        return self.segments[j][-1][1]

    def start_time(self, j: int) -> float:
        return self.segments[j][0][0]

    def preemptions(self) -> int:
        return sum(len(intervals) - 1 for intervals in self.segments.values())

    def timeline(self) -> List[Tuple[float, float, int]]:
        """All intervals of positive length as (start, end, job), sorted by start."""
        return sorted(
            (a, b, j) for j, intervals in self.segments.items() for a, b in intervals if b > a
        )


class ViolationKind(str, Enum):
    MISSING_JOB = "MissingJob"
    BAD_INTERVAL = "BadInterval"
    MACHINE_OVERLAP = "MachineOverlap"
    PROCESSING_TIME = "ProcessingTime"
    RELEASE_DATE = "ReleaseDate"
    PRECEDENCE = "Precedence"
    PREEMPTION_NOT_ALLOWED = "PreemptionNotAllowed"
    SPEED = "Speed"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    jobs: Tuple[int, ...]
    time: float
    detail: str = ""


@dataclass(frozen=True)
class BusyBlock:
    """Maximal busy interval ending at a job's completion, restricted to list prefix jobs."""
    start: float
    end: float
    jobs: Tuple[int, ...]


def _positions(inst: Instance, order: Sequence[int]) -> Dict[int, int]:
    position = {j: i for i, j in enumerate(order)}
    if len(order) != inst.n or sorted(position) != inst.ids:
        raise InstanceError(f"Order {list(order)} is not a permutation of the {inst.n} jobs")
    for j, k in sorted(inst.prec):
        if position[j] > position[k]:
            raise OrderViolatesPrecedence(f"Order places job {k} before its predecessor {j}")
    return position


def nonpreemptive_list_schedule(inst: Instance, order: Sequence[int]) -> Schedule:
    """
    Process jobs in ``order``, each as early as its release date allows.

    Raises:
        OrderViolatesPrecedence: the order does not extend the precedence pairs.
    """
    _positions(inst, order)
    t = 0.0
    segments: Dict[int, Tuple[Interval, ...]] = {}
    for j in order:
        start = max(t, inst.r(j))
        t = start + inst.p(j)
        segments[j] = ((start, t),)
    return Schedule(speed=1.0, segments=segments, kind=ScheduleKind.NONPREEMPTIVE_LIST, order=tuple(order))


def preemptive_list_schedule(inst: Instance, order: Sequence[int], speed: float = 1.0) -> Schedule:
    """
    At every instant run the first released, incomplete job of ``order``.

    Event driven: the running job changes only at release dates and
    completion times. Zero-length jobs at the head of the available list
    complete at the current instant.
    """
    if speed <= 0:
        raise InstanceError(f"Machine speed must be positive, got {speed}")
    position = _positions(inst, order)

    remaining = {j: inst.p(j) / speed for j in order}
    releases = sorted({inst.r(j) for j in order})
    pending = sorted(order, key=lambda j: (inst.r(j), position[j]))
    released: List[int] = []  # list positions of released, incomplete jobs (sorted)
    segments: Dict[int, List[List[float]]] = {j: [] for j in order}
    cursor = 0
    t = 0.0
    done = 0

    while done < inst.n:
        while cursor < len(pending) and inst.r(pending[cursor]) <= t:
            bisect.insort(released, position[pending[cursor]])
            cursor += 1
        if not released:
            t = max(t, inst.r(pending[cursor]))
            continue

        j = order[released[0]]
        if remaining[j] <= 0.0:
            segments[j].append([t, t])
            released.pop(0)
            done += 1
            continue

        i = bisect.bisect_right(releases, t)
        next_release = releases[i] if i < len(releases) else float("inf")
        finish = t + remaining[j]
        end = min(finish, next_release)

        intervals = segments[j]
        if intervals and intervals[-1][1] == t and intervals[-1][1] > intervals[-1][0]:
            intervals[-1][1] = end
        else:
            intervals.append([t, end])

        if finish <= next_release:
            remaining[j] = 0.0
            released.pop(0)
            done += 1
        else:
            remaining[j] -= end - t
        t = end

    frozen = {j: tuple((a, b) for a, b in segments[j]) for j in sorted(segments)}
    sched = Schedule(speed=float(speed), segments=frozen, kind=ScheduleKind.PREEMPTIVE_LIST, order=tuple(order))
    logger.debug("Preemptive list schedule at speed %g: %d preemptions", speed, sched.preemptions())
    return sched


def completion_times(sched: Schedule) -> Dict[int, float]:
    return {j: sched.completion_time(j) for j in sorted(sched.segments)}


def objective(sched: Schedule, inst: Instance) -> float:
    """Total weighted completion time."""
    return sum(inst.w(j) * sched.completion_time(j) for j in sorted(sched.segments))


def mean_busy_times(sched: Schedule) -> Dict[int, float]:
    """
    Average instant at which each job is processed.

    For a job of positive length this is ``sum (b^2 - a^2) / 2`` over its
    intervals divided by the total interval length; a zero-length job's mean
    busy time is its event instant.
    """
    result = {}
    for j in sorted(sched.segments):
        intervals = sched.segments[j]
        length = sum(b - a for a, b in intervals)
        if length > 0:
            result[j] = sum((b * b - a * a) / 2.0 for a, b in intervals) / length
        else:
            result[j] = intervals[-1][1]
    return result


def check_feasible(sched: Schedule, inst: Instance, allow_preemption: bool = True,
                   tol: float = TIME_TOLERANCE) -> List[Violation]:
    """Every schedule invariant that fails, as data. An empty list means feasible."""
    violations: List[Violation] = []
    if sched.speed <= 0:
        violations.append(Violation(ViolationKind.SPEED, (), 0.0, f"speed {sched.speed}"))
        return violations

    for j in inst.ids:
        intervals = sched.segments.get(j)
        if not intervals:
            violations.append(Violation(ViolationKind.MISSING_JOB, (j,), 0.0, "no intervals"))
            continue
        for (a, b), nxt in zip(intervals, list(intervals[1:]) + [None]):
            if b < a or (b == a and inst.p(j) > 0):
                violations.append(Violation(ViolationKind.BAD_INTERVAL, (j,), a, f"[{a}, {b})"))
            if nxt is not None and nxt[0] < b - tol:
                violations.append(Violation(ViolationKind.BAD_INTERVAL, (j,), nxt[0], "intervals unsorted or overlapping"))
        length = sum(b - a for a, b in intervals)
        if abs(length - inst.p(j) / sched.speed) > tol * max(1.0, inst.p(j)):
            violations.append(Violation(
                ViolationKind.PROCESSING_TIME, (j,), intervals[0][0],
                f"processed {length:.9g}, needs {inst.p(j) / sched.speed:.9g}"))
        if intervals[0][0] < inst.r(j) - tol:
            violations.append(Violation(
                ViolationKind.RELEASE_DATE, (j,), intervals[0][0], f"starts before release date {inst.r(j)}"))
        if not allow_preemption and len(intervals) > 1:
            violations.append(Violation(
                ViolationKind.PREEMPTION_NOT_ALLOWED, (j,), intervals[1][0], f"{len(intervals)} intervals"))

    timeline = sched.timeline()
    for (a1, b1, j1), (a2, b2, j2) in zip(timeline, timeline[1:]):
        if a2 < b1 - tol:
            violations.append(Violation(ViolationKind.MACHINE_OVERLAP, (j1, j2), a2, f"[{a1}, {b1}) and [{a2}, {b2})"))

    for j, k in sorted(inst.prec):
        if j in sched.segments and k in sched.segments and sched.segments[j] and sched.segments[k]:
            if sched.completion_time(j) > sched.start_time(k) + tol:
                violations.append(Violation(
                    ViolationKind.PRECEDENCE, (j, k), sched.start_time(k),
                    f"job {k} starts before job {j} completes"))
    return violations


def is_feasible(sched: Schedule, inst: Instance, allow_preemption: bool = True) -> bool:
    return not check_feasible(sched, inst, allow_preemption)


def busy_block(sched: Schedule, order: Sequence[int], j: int, tol: float = TIME_TOLERANCE) -> BusyBlock:
    """
    The maximal interval ending at C_j during which the machine is busy and
    only processes jobs not later than ``j`` in ``order``, together with the
    jobs of that list prefix completing inside it.
    """
    position = {k: i for i, k in enumerate(order)}
    end = sched.completion_time(j)
    start = end
    for a, b, k in reversed(sched.timeline()):
        if b > end + tol:
            continue
        if b < start - tol or position[k] > position[j]:
            break
        start = min(start, a)
    jobs = tuple(sorted(
        k for k in sched.segments
        if position[k] <= position[j] and start - tol <= sched.completion_time(k) <= end + tol
    ))
    return BusyBlock(start=start, end=end, jobs=jobs)


def first_idle_violation(sched: Schedule, inst: Instance, tol: float = TIME_TOLERANCE) -> Optional[float]:
    """
    First instant at which the machine idles although a released job is still
    incomplete, or None if the schedule never does.
    """
    gaps = []
    t = 0.0
    for a, b, _ in sched.timeline():
        if a > t + tol:
            gaps.append((t, a))
        t = max(t, b)
    for lo, hi in gaps:
        for j in inst.ids:
            if inst.r(j) < hi - tol and sched.completion_time(j) > lo + tol and inst.p(j) > 0:
                return max(lo, inst.r(j))
    return None
