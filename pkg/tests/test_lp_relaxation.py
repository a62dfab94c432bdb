#!/usr/bin/env python3
"""
Test suite for the completion-time LP relaxation and its separation oracle.
"""

import pytest

from alphasched.core.errors import IterationLimit, PrecedenceViolation
from alphasched.core.exact_oracle import brute_force_optimum, brute_force_separation
from alphasched.core.instance import generate_random, make_instance
from alphasched.core.lp_relaxation import (
    Cut,
    LpSolution,
    lp_list_order,
    prefix_violations,
    separate,
    solve_lp_relaxation,
)


class TestSeparation:
    """Test cases for the prefix-scan separation oracle."""

    def test_two_jobs_at_origin(self):
        """Test the single cut for two jobs at the origin."""
        inst = make_instance([2, 1])
        cuts = separate({0: 0.0, 1: 0.0}, inst)
        assert cuts == [Cut(r=0.0, jobs=(0, 1))]
        assert cuts[0].violation({0: 0.0, 1: 0.0}, inst) == pytest.approx(4.5)

    def test_tight_singleton(self):
        """Test that a tight singleton yields no cut."""
        assert separate({0: 1.0}, make_instance([2])) == []

    def test_zero_length_jobs_never_cut(self):
        """Test that zero-length jobs alone yield no cut."""
        inst = make_instance([0, 0, 0], r=[0, 1, 2])
        assert separate({0: 0.0, 1: 0.0, 2: 0.0}, inst) == []

    def test_prefix_violations(self):
        """Test violations of every prefix in eligible order."""
        inst = make_instance([2, 1], r=[0, 3])
        eligible, violations = prefix_violations({0: 5.0, 1: 1.0}, inst, 0.0)
        assert eligible == [1, 0]
        assert violations == pytest.approx([0.5 - 1.0, 4.5 - 11.0])

    def test_cut_uses_its_smallest_release_date(self):
        """Test that each cut carries its jobs' smallest release date."""
        inst = make_instance([1, 1, 3], r=[0, 2, 2])
        c = {0: 0.5, 1: 0.0, 2: 0.0}
        for cut in separate(c, inst):
            assert cut.r == min(inst.r(j) for j in cut.jobs)

    def test_zero_length_jobs_dropped_from_rows(self):
        """Test that zero-length jobs have no coefficient in a row."""
        inst = make_instance([2, 0])
        row = Cut(r=0.0, jobs=(0, 1)).as_constraint(inst)
        assert dict(row.coefficients) == {0: 2.0}
        assert row.rhs == pytest.approx(2.0)


class TestSolveLpRelaxation:
    """Test cases for the cutting-plane loop."""

    def test_single_job(self):
        """Test the LP of a lone job."""
        sol = solve_lp_relaxation(make_instance([2], w=[3]))
        assert sol.c_star[0] == pytest.approx(1.0)
        assert sol.objective == pytest.approx(3.0)

    def test_two_jobs(self):
        """Test the LP of the two-job fixture and its cut."""
        sol = solve_lp_relaxation(make_instance([2, 1], w=[1, 2]))
        assert sol.c_star[0] == pytest.approx(2.0)
        assert sol.c_star[1] == pytest.approx(0.5)
        assert sol.objective == pytest.approx(3.0)
        assert Cut(r=0.0, jobs=(0, 1)) in sol.cuts
        assert sol.lp_solves == sol.iterations >= 2

    def test_chain(self):
        """Test that precedence orders the LP completion times."""
        sol = solve_lp_relaxation(make_instance([2, 1], w=[0, 1], prec=[(0, 1)]))
        assert sol.c_star[0] <= sol.c_star[1] + 1e-9
        assert sol.c_star[1] == pytest.approx(1.5)

    def test_all_zero_length(self):
        """Test that zero-length jobs sit at their release dates."""
        sol = solve_lp_relaxation(make_instance([0, 0], r=[1, 3], w=[2, 1]))
        assert sol.objective == pytest.approx(5.0)
        assert sol.cuts == ()

    def test_round_limit(self):
        """Test that a zero round limit raises IterationLimit."""
        with pytest.raises(IterationLimit):
            solve_lp_relaxation(make_instance([2, 1]), round_limit_factor=0)

    @pytest.mark.parametrize("seed", range(15))
    def test_no_violated_subset_remains(self, seed):
        """Test that no set constraint is left violated."""
        inst = generate_random(7, edge_prob=0.3, seed=seed)
        sol = solve_lp_relaxation(inst)
        found = brute_force_separation(sol.c_star, inst)
        assert found is None or found[0] <= 1e-6

    @pytest.mark.parametrize("seed", range(15))
    def test_lower_bound_is_valid(self, seed):
        """Test the LP value against the optimum and its own constraints."""
        inst = generate_random(6, edge_prob=0.2, seed=100 + seed)
        sol = solve_lp_relaxation(inst)
        assert sol.objective <= brute_force_optimum(inst).cost + 1e-6
        for j, k in inst.prec:
            assert sol.c_star[j] <= sol.c_star[k] + 1e-7
        for j in inst.ids:
            assert sol.c_star[j] >= inst.r(j) + inst.p(j) / 2.0 - 1e-9


class TestLpListOrder:
    """Test cases for ordering jobs by LP completion time."""

    def test_increasing_c_star(self):
        """Test ordering by LP completion time."""
        inst = make_instance([2, 1])
        sol = LpSolution(c_star={0: 2.0, 1: 0.5}, objective=3.0)
        assert lp_list_order(sol, inst) == [1, 0]

    def test_tie_follows_precedence(self):
        """Test that ties follow the precedence pair."""
        sol = LpSolution(c_star={0: 1.0, 1: 1.0}, objective=2.0)
        assert lp_list_order(sol, make_instance([1, 1], prec=[(0, 1)])) == [0, 1]
        assert lp_list_order(sol, make_instance([1, 1], prec=[(1, 0)])) == [1, 0]

    def test_near_tie_is_lifted(self):
        """Test that a near tie against precedence is lifted."""
        sol = LpSolution(c_star={0: 1.0, 1: 1.0 - 1e-9}, objective=2.0)
        assert lp_list_order(sol, make_instance([1, 1], prec=[(0, 1)])) == [0, 1]

    def test_argsort_without_precedence(self):
        """Test a plain argsort without precedence."""
        inst = make_instance([1, 1, 1, 1])
        sol = LpSolution(c_star={0: 4.0, 1: 1.0, 2: 3.0, 3: 2.0}, objective=10.0)
        assert lp_list_order(sol, inst) == [1, 3, 2, 0]

    def test_inverted_pair_rejected(self):
        """Test that a clearly inverted pair raises PrecedenceViolation."""
        sol = LpSolution(c_star={0: 2.0, 1: 1.0}, objective=3.0)
        with pytest.raises(PrecedenceViolation):
            lp_list_order(sol, make_instance([1, 1], prec=[(0, 1)]))


if __name__ == "__main__":
    pytest.main([__file__])
