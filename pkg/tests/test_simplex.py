#!/usr/bin/env python3
"""
Test suite for the dense two-phase simplex.
"""

import numpy as np
import pytest
from scipy.optimize import linprog

from alphasched.core.errors import InfeasibleLp, SolverError, UnboundedLp
from alphasched.core.simplex import Constraint, Sense, simplex_solve


class TestSimplexSolve:
    """Test cases for small hand-solvable LPs."""

    def test_single_bound(self):
        """min x s.t. x >= 3"""
        result = simplex_solve([], [3.0], [1.0])
        assert result.x[0] == pytest.approx(3.0)
        assert result.value == pytest.approx(3.0)

    def test_two_variable_lp(self):
        """min x + 2y s.t. 2x + y >= 4.5, x >= 1, y >= 0.5"""
        rows = [Constraint({0: 2.0, 1: 1.0}, Sense.GE, 4.5)]
        result = simplex_solve(rows, [1.0, 0.5], [1.0, 2.0])
        assert result.x == pytest.approx([2.0, 0.5])
        assert result.value == pytest.approx(3.0)

    def test_upper_row_active(self):
        """min -x s.t. x <= 5, x >= 0"""
        result = simplex_solve([Constraint({0: 1.0}, Sense.LE, 5.0)], [0.0], [-1.0])
        assert result.x[0] == pytest.approx(5.0)

    def test_mixed_rows(self):
        """min x0 + 2 x1 s.t. x0 + x1 >= 3, x0 <= 2"""
        rows = [
            Constraint({0: 1.0, 1: 1.0}, Sense.GE, 3.0),
            Constraint({0: 1.0}, Sense.LE, 2.0),
        ]
        result = simplex_solve(rows, [0.0, 0.0], [1.0, 2.0])
        assert result.x == pytest.approx([2.0, 1.0])
        assert result.value == pytest.approx(4.0)

    def test_duplicate_rows(self):
        """Redundant rows leave the optimum unchanged."""
        row = Constraint({0: 1.0, 1: 1.0}, Sense.GE, 2.0)
        result = simplex_solve([row, row, row], [0.0, 0.0], [1.0, 3.0])
        assert result.value == pytest.approx(2.0)

    def test_infeasible(self):
        """Test that contradictory rows raise InfeasibleLp."""
        rows = [
            Constraint({0: 1.0, 1: 1.0}, Sense.LE, 1.0),
            Constraint({0: 1.0, 1: 1.0}, Sense.GE, 3.0),
        ]
        with pytest.raises(InfeasibleLp) as exc_info:
            simplex_solve(rows, [0.0, 0.0], [1.0, 1.0])
        assert exc_info.value.exit_code == 3

    def test_unbounded(self):
        """Test that an unbounded direction raises UnboundedLp."""
        rows = [Constraint({0: 1.0, 1: -1.0}, Sense.GE, 0.0)]
        with pytest.raises(UnboundedLp):
            simplex_solve(rows, [0.0, 0.0], [-1.0, 0.0])

    def test_solver_errors_share_base(self):
        """Test that LP errors derive from SolverError."""
        assert issubclass(InfeasibleLp, SolverError)
        assert issubclass(UnboundedLp, SolverError)

    def test_length_mismatch(self):
        """Test that mismatched bounds and costs are rejected."""
        with pytest.raises(ValueError):
            simplex_solve([], [0.0], [1.0, 1.0])


class TestAgainstLinprog:
    """Cross-check random covering LPs against scipy's HiGHS."""

    @pytest.mark.parametrize("seed", range(25))
    def test_random_covering_lp(self, seed):
        """Test random covering LPs against linprog."""
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        m = int(rng.integers(1, 9))
        A = rng.integers(0, 5, size=(m, n)).astype(float)
        A[:, 0] += 1.0  # every row coverable
        b = rng.uniform(1.0, 20.0, size=m)
        c = rng.uniform(0.1, 5.0, size=n)
        lower = rng.uniform(0.0, 3.0, size=n)

        rows = [Constraint({j: A[i, j] for j in range(n) if A[i, j]}, Sense.GE, b[i]) for i in range(m)]
        ours = simplex_solve(rows, lower, c)
        reference = linprog(c, A_ub=-A, b_ub=-b, bounds=[(lo, None) for lo in lower], method="highs")

        assert reference.status == 0
        assert ours.value == pytest.approx(reference.fun, rel=1e-6, abs=1e-6)
        assert np.all(A @ ours.x >= b - 1e-6)
        assert np.all(ours.x >= lower - 1e-9)


if __name__ == "__main__":
    pytest.main([__file__])
