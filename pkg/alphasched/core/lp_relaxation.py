"""
Completion-time LP relaxation solved by cutting planes.

Variables are completion times C_j. The relaxation is

    min  sum w_j C_j
    s.t. C_j <= C_k                                     for every pair j -> k
         sum_{j in S} p_j C_j >= r * p(S) + p(S)^2 / 2   for every set S

where r is the smallest release date in S. The set family is exponential;
:func:`separate` finds the most violated member for every release value by a
prefix scan in order of the candidate C vector.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Set, Tuple

from .errors import IterationLimit, PrecedenceViolation
from .instance import Instance, topological_order
from .simplex import Constraint, Sense, simplex_solve

logger = logging.getLogger(__name__)

SEPARATION_TOLERANCE = 1e-7


@dataclass(frozen=True)
class Cut:
    """Constraint ``sum_{j in jobs} p_j C_j >= r p(S) + p(S)^2 / 2``."""
    r: float
    jobs: Tuple[int, ...]

    def rhs(self, inst: Instance) -> float:
        p_s = sum(inst.p(j) for j in self.jobs)
        return self.r * p_s + p_s * p_s / 2.0

    def lhs(self, c: Mapping[int, float], inst: Instance) -> float:
        return sum(inst.p(j) * c[j] for j in self.jobs)

    def violation(self, c: Mapping[int, float], inst: Instance) -> float:
        return self.rhs(inst) - self.lhs(c, inst)

    def as_constraint(self, inst: Instance) -> Constraint:
        return Constraint({j: inst.p(j) for j in self.jobs if inst.p(j) > 0}, Sense.GE, self.rhs(inst))


@dataclass(frozen=True)
class LpSolution:
    """Optimal LP completion times plus the cuts that certify them."""
    c_star: Dict[int, float]
    objective: float
    cuts: Tuple[Cut, ...] = field(default_factory=tuple)
    iterations: int = 0
    lp_solves: int = 0


def prefix_violations(c: Mapping[int, float], inst: Instance, r: float) -> Tuple[List[int], List[float]]:
    """
    Eligible jobs (r_j >= r) in order of increasing c_j (ties by id), and the
    violation of every prefix of that order for release value ``r``.
    """
    eligible = sorted((j for j in inst.ids if inst.r(j) >= r), key=lambda j: (c[j], j))
    violations = []
    p_s = 0.0
    lhs = 0.0
    for j in eligible:
        p_s += inst.p(j)
        lhs += inst.p(j) * c[j]
        violations.append(r * p_s + p_s * p_s / 2.0 - lhs)
    return eligible, violations


def separate(c: Mapping[int, float], inst: Instance, tol_sep: float = SEPARATION_TOLERANCE) -> List[Cut]:
    """
    Most violated set constraint per distinct release value.

    Only prefixes that contain a job released exactly at ``r`` are candidates,
    so every returned cut uses its own smallest release date. A prefix whose
    smallest release date is larger is found, more violated, when scanning
    that larger value.
    """
    cuts = []
    for r in sorted({inst.r(j) for j in inst.ids}):
        eligible, violations = prefix_violations(c, inst, r)
        best_len = 0
        best = tol_sep
        has_anchor = False
        for length, (j, v) in enumerate(zip(eligible, violations), start=1):
            has_anchor = has_anchor or inst.r(j) == r
            if has_anchor and v > best:
                best = v
                best_len = length
        if best_len:
            cuts.append(Cut(r=r, jobs=tuple(sorted(eligible[:best_len]))))
    return cuts


def solve_lp_relaxation(
    inst: Instance,
    tol_sep: float = SEPARATION_TOLERANCE,
    round_limit_factor: int = 10,
    **simplex_options,
) -> LpSolution:
    """
    Cutting-plane loop over the completion-time relaxation.

    Starts from the bounds C_j >= r_j + p_j/2 and one row per stored
    precedence pair, re-solves from scratch after adding all cuts returned by
    :func:`separate`, and stops when the oracle returns none.

    Raises:
        IterationLimit: more than ``round_limit_factor * n^2`` cut rounds.
    """
    ids = inst.ids
    bounds = [inst.r(j) + inst.p(j) / 2.0 for j in ids]
    objective = [inst.w(j) for j in ids]
    rows = [Constraint({k: 1.0, j: -1.0}, Sense.GE, 0.0) for j, k in sorted(inst.prec)]

    cuts: List[Cut] = []
    known: Set[Cut] = set()
    max_rounds = round_limit_factor * inst.n * inst.n
    lp_solves = 0
    pivots = 0

    for round_no in range(1, max_rounds + 1):
        result = simplex_solve(rows, bounds, objective, **simplex_options)
        lp_solves += 1
        pivots += result.iterations
        c = {j: float(result.x[j]) for j in ids}

        new_cuts = [cut for cut in separate(c, inst, tol_sep) if cut not in known]
        logger.debug("Round %d: objective %.10g, %d new cuts", round_no, result.value, len(new_cuts))
        if not new_cuts:
            if separate(c, inst, tol_sep):
                logger.warning("Oracle repeats cuts already in the LP; stopping at tolerance")
            objective_value = sum(inst.w(j) * c[j] for j in ids)
            logger.info("LP relaxation solved: %d rounds, %d cuts, %d pivots, objective %.10g",
                        round_no, len(cuts), pivots, objective_value)
            return LpSolution(
                c_star=c,
                objective=objective_value,
                cuts=tuple(cuts),
                iterations=round_no,
                lp_solves=lp_solves,
            )
        for cut in new_cuts:
            known.add(cut)
            cuts.append(cut)
            rows.append(cut.as_constraint(inst))

    raise IterationLimit(f"Cutting planes did not converge within {max_rounds} rounds")


def lp_list_order(sol: LpSolution, inst: Instance, tol: float = 1e-6) -> List[int]:
    """
    Jobs by increasing C*_j, ties by topological rank, then id.

    C* values of successors that fall below a predecessor by at most ``tol``
    are lifted to the predecessor's value first, so equal or nearly equal
    values on a precedence pair never invert the pair.

    Raises:
        PrecedenceViolation: C*_k < C*_j - tol for some pair j -> k.
    """
    topo = topological_order(inst)
    rank = {j: i for i, j in enumerate(topo)}
    lifted = dict(sol.c_star)
    for k in topo:
        for j in inst.graph.predecessors(k):
            if lifted[k] < lifted[j]:
                if lifted[j] - lifted[k] > tol:
                    raise PrecedenceViolation(
                        f"LP completion time of job {k} ({lifted[k]:.9g}) precedes its "
                        f"predecessor {j} ({lifted[j]:.9g})")
                lifted[k] = lifted[j]
    order = sorted(inst.ids, key=lambda j: (lifted[j], rank[j], j))
    assert_extends_precedence(order, inst)
    return order


def assert_extends_precedence(order: Sequence[int], inst: Instance,
                              error: type = PrecedenceViolation) -> None:
    position = {j: i for i, j in enumerate(order)}
    if sorted(position) != inst.ids or len(order) != inst.n:
        raise error(f"Order {list(order)} is not a permutation of the jobs")
    for j, k in sorted(inst.prec):
        if position[j] > position[k]:
            raise error(f"Order places job {k} before its predecessor {j}")

