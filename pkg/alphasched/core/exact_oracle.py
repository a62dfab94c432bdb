"""
Exhaustive ground truth for small instances.

Some optimal nonpreemptive schedule is the list schedule of its own
completion order, so enumerating precedence-feasible orders is exact.
"""

import logging
from dataclasses import dataclass
from typing import List, Mapping, Optional, Tuple

from .errors import TooLarge
from .instance import Instance

logger = logging.getLogger(__name__)

EXACT_N_LIMIT = 10
SEPARATION_N_LIMIT = 12
_EPS = 1e-9


@dataclass(frozen=True)
class ExactResult:
    cost: float
    order: Tuple[int, ...]
    nodes_explored: int


def brute_force_optimum(inst: Instance, n_limit: int = EXACT_N_LIMIT) -> ExactResult:
    """
    Minimum total weighted completion time by depth-first branch and bound.

    Children are tried in increasing id order and the incumbent is replaced
    only on strict improvement, so the lexicographically smallest optimal
    order is returned. A node is pruned when its accumulated cost plus the
    cost of starting every remaining job immediately reaches the incumbent.

    Raises:
        TooLarge: the instance has more than ``n_limit`` jobs.
    """
    if inst.n > n_limit:
        raise TooLarge(f"Exact search supports at most {n_limit} jobs, instance has {inst.n}")

    ids = inst.ids
    p = {j: inst.p(j) for j in ids}
    r = {j: inst.r(j) for j in ids}
    w = {j: inst.w(j) for j in ids}
    preds = {k: set(inst.graph.predecessors(k)) for k in ids}

    best_cost = float("inf")
    best_order: List[int] = []
    nodes = 0
    order: List[int] = []
    scheduled = set()

    def lower_bound(t: float) -> float:
        return sum(w[j] * (max(t, r[j]) + p[j]) for j in ids if j not in scheduled)

    def search(t: float, cost: float) -> None:
        nonlocal best_cost, best_order, nodes
        nodes += 1
        if len(order) == len(ids):
            if cost < best_cost - _EPS:
                best_cost = cost
                best_order = list(order)
            return
        if cost + lower_bound(t) >= best_cost - _EPS:
            return
        for j in ids:
            if j in scheduled or not preds[j] <= scheduled:
                continue
            finish = max(t, r[j]) + p[j]
            order.append(j)
            scheduled.add(j)
            search(finish, cost + w[j] * finish)
            scheduled.discard(j)
            order.pop()

    search(0.0, 0.0)
    logger.debug("Exact search explored %d nodes, optimum %.10g", nodes, best_cost)
    return ExactResult(cost=best_cost, order=tuple(best_order), nodes_explored=nodes)


def brute_force_separation(
    c: Mapping[int, float],
    inst: Instance,
    n_limit: int = SEPARATION_N_LIMIT,
) -> Optional[Tuple[float, Tuple[int, ...]]]:
    """
    Most violated set constraint over all nonempty job sets, using the
    smallest release date of each set.

    Returns:
        ``(violation, jobs)`` or None when no set is violated.

    Raises:
        TooLarge: the instance has more than ``n_limit`` jobs.
    """
    if inst.n > n_limit:
        raise TooLarge(f"Exhaustive separation supports at most {n_limit} jobs, instance has {inst.n}")

    ids = inst.ids
    best = 0.0
    witness: Optional[Tuple[int, ...]] = None
    for mask in range(1, 1 << len(ids)):
        members = [j for bit, j in enumerate(ids) if mask >> bit & 1]
        p_s = sum(inst.p(j) for j in members)
        r_min = min(inst.r(j) for j in members)
        violation = r_min * p_s + p_s * p_s / 2.0 - sum(inst.p(j) * c[j] for j in members)
        if violation > best:
            best = violation
            witness = tuple(members)
    if witness is None:
        return None
    return best, witness
