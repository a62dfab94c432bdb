"""
Dense two-phase primal simplex for small minimisation LPs.

The LP has the form::

    min  c x
    s.t. a_i x >= b_i  or  a_i x <= b_i   for every row i
         x >= lower

Pivoting is Dantzig's rule; after a streak of degenerate pivots the solver
falls back to Bland's rule until the next non-degenerate step.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Mapping, Optional, Sequence

import numpy as np

from .errors import InfeasibleLp, IterationLimit, NumericalError, UnboundedLp

logger = logging.getLogger(__name__)

LP_TOLERANCE = 1e-8
PIVOT_TOLERANCE = 1e-11
DEGENERATE_STREAK = 50


class Sense(str, Enum):
    GE = ">="
    LE = "<="


@dataclass(frozen=True)
class Constraint:
    """Sparse row ``sum(coefficients[j] * x[j]) sense rhs``."""
    coefficients: Mapping[int, float]
    sense: Sense
    rhs: float


@dataclass(frozen=True)
class LpResult:
    x: np.ndarray
    value: float
    iterations: int


class _Tableau:
    """Tableau in canonical form w.r.t. ``basis``; last column is the rhs."""

    def __init__(self, rows: np.ndarray, basis: List[int], pivot_tol: float):
        self.T = rows
        self.basis = basis
        self.pivot_tol = pivot_tol
        self.d = np.zeros(rows.shape[1])

    def price(self, cost: np.ndarray) -> None:
        """Reduced costs for ``cost`` (length = number of columns without rhs)."""
        d = np.append(cost, 0.0)
        for i, b in enumerate(self.basis):
            d -= cost[b] * self.T[i]
        self.d = d

    def pivot(self, row: int, col: int) -> None:
        pivot = self.T[row, col]
        if abs(pivot) < self.pivot_tol:
            raise NumericalError(f"Pivot magnitude {abs(pivot):.3e} below {self.pivot_tol:.0e}")
        self.T[row] /= pivot
        column = self.T[:, col].copy()
        column[row] = 0.0
        self.T -= np.outer(column, self.T[row])
        self.d -= self.d[col] * self.T[row]
        self.basis[row] = col

    def drop_row(self, row: int) -> None:
        self.T = np.delete(self.T, row, axis=0)
        del self.basis[row]


def _iterate(tab: _Tableau, allowed: int, opt_tol: float, degenerate_streak: int,
             budget: int, phase: str) -> int:
    """Run simplex pivots on columns ``< allowed`` until optimal. Returns pivot count."""
    streak = 0
    iterations = 0
    while True:
        reduced = tab.d[:allowed]
        candidates = np.flatnonzero(reduced < -opt_tol)
        if candidates.size == 0:
            return iterations
        bland = streak >= degenerate_streak
        col = int(candidates[0]) if bland else int(candidates[np.argmin(reduced[candidates])])

        column = tab.T[:, col]
        rows = np.flatnonzero(column > tab.pivot_tol)
        if rows.size == 0:
            raise UnboundedLp(f"LP is unbounded along column {col} ({phase})")
        ratios = tab.T[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
        if bland:
            row = int(min(ties, key=lambda i: tab.basis[i]))
        else:
            row = int(ties[np.argmax(column[ties])])

        streak = streak + 1 if best <= 1e-12 else 0
        tab.pivot(row, col)
        iterations += 1
        if iterations > budget:
            raise IterationLimit(f"Simplex exceeded {budget} pivots ({phase})")


def simplex_solve(
    rows: Sequence[Constraint],
    bounds: Sequence[float],
    objective: Sequence[float],
    tol: float = LP_TOLERANCE,
    pivot_tol: float = PIVOT_TOLERANCE,
    degenerate_streak: int = DEGENERATE_STREAK,
    max_iterations: Optional[int] = None,
) -> LpResult:
    """
    Solve ``min objective @ x`` subject to ``rows`` and ``x >= bounds``.

    Args:
        rows: inequality rows over variable indices 0..len(objective)-1
        bounds: finite lower bound per variable
        objective: cost vector
        tol: relative optimality and feasibility tolerance
        pivot_tol: smallest acceptable pivot magnitude
        degenerate_streak: degenerate pivots before switching to Bland's rule
        max_iterations: pivot budget per phase (default scales with LP size)

    Returns:
        LpResult with a basic optimal solution.

    Raises:
        InfeasibleLp, UnboundedLp, NumericalError, IterationLimit
    """
    c = np.asarray(objective, dtype=float)
    lower = np.asarray(bounds, dtype=float)
    n = c.size
    m = len(rows)
    if lower.size != n:
        raise ValueError("bounds and objective must have the same length")

    A = np.zeros((m, n))
    rhs = np.zeros(m)
    slack_sign = np.zeros(m)
    for i, row in enumerate(rows):
        for j, a in row.coefficients.items():
            A[i, j] += a
        rhs[i] = row.rhs
        slack_sign[i] = -1.0 if row.sense == Sense.GE else 1.0

    # substitute x = lower + y so that y >= 0
    b = rhs - A @ lower
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0
    slack_sign[flip] *= -1.0

    needs_artificial = np.flatnonzero(slack_sign < 0)
    k = needs_artificial.size
    width = n + m + k
    T = np.zeros((m, width + 1))
    T[:, :n] = A
    T[np.arange(m), n + np.arange(m)] = slack_sign
    T[needs_artificial, n + m + np.arange(k)] = 1.0
    T[:, -1] = b
    basis = [n + i for i in range(m)]
    for a, i in enumerate(needs_artificial):
        basis[i] = n + m + a
    A_eq = T[:, :n + m].copy()
    b_eq = b.copy()

    scale = max(1.0, float(np.abs(c).max(initial=0.0)))
    budget = max_iterations or max(1000, 50 * (m + width))
    tab = _Tableau(T, basis, pivot_tol)
    iterations = 0

    if k:
        phase_one = np.zeros(width)
        phase_one[n + m:] = 1.0
        tab.price(phase_one)
        iterations += _iterate(tab, width, tol, degenerate_streak, budget, "phase 1")
        infeasibility = -tab.d[-1]
        if infeasibility > tol * max(1.0, float(np.abs(b).max(initial=0.0))):
            raise InfeasibleLp(f"LP infeasible (phase one residual {infeasibility:.3e})")

        kept = list(range(m))
        for row in reversed(range(len(tab.basis))):
            if tab.basis[row] < n + m:
                continue
            entries = np.abs(tab.T[row, :n + m])
            col = int(np.argmax(entries))
            if entries[col] > pivot_tol:
                tab.pivot(row, col)
            else:
                tab.drop_row(row)
                del kept[row]
        A_eq = A_eq[kept]
        b_eq = b_eq[kept]
        tab.T = np.delete(tab.T, np.s_[n + m:width], axis=1)
        logger.debug("Phase one finished after %d pivots, %d redundant rows", iterations, m - len(kept))

    cost = np.concatenate([c, np.zeros(m)])
    tab.price(cost)
    iterations += _iterate(tab, n + m, tol * scale, degenerate_streak, budget, "phase 2")

    y = np.zeros(n + m)
    y[tab.basis] = tab.T[:, -1]
    if tab.basis:
        try:
            y[tab.basis] = np.linalg.solve(A_eq[:, tab.basis], b_eq)
        except np.linalg.LinAlgError:
            logger.warning("Basis matrix singular; keeping tableau values")
    y[np.abs(y) < 1e-12] = 0.0
    if y.min(initial=0.0) < -1e-7 * max(1.0, float(np.abs(b).max(initial=0.0))):
        raise NumericalError(f"Basic solution has a negative entry ({y.min():.3e})")
    y = np.maximum(y, 0.0)
    x = lower + y[:n]

    for i, row in enumerate(rows):
        lhs = sum(a * x[j] for j, a in row.coefficients.items())
        slack = lhs - row.rhs if row.sense == Sense.GE else row.rhs - lhs
        if slack < -1e-6 * max(1.0, abs(row.rhs)):
            raise NumericalError(f"Row {i} violated by {-slack:.3e} after solve")

    value = float(c @ x)
    logger.debug("Simplex solved %d rows x %d columns in %d pivots, value %.10g", m, n, iterations, value)
    return LpResult(x=x, value=value, iterations=iterations)
