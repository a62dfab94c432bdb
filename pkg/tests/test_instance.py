#!/usr/bin/env python3
"""
Test suite for the instance data model, text format and generator.
"""

import pytest
import tempfile
from pathlib import Path

from alphasched.core.errors import CycleError, InstanceError, ParseError
from alphasched.core.instance import (
    Instance,
    Job,
    generate_random,
    is_normalized,
    load_instance,
    make_instance,
    normalize_release_dates,
    parse,
    save_instance,
    serialize,
    topological_order,
    validate,
)

FIXTURES = Path(__file__).parent / "fixtures"


class TestValidate:
    """Test cases for instance validation."""

    def test_valid_single_job(self):
        """A single unconstrained job is returned unchanged."""
        inst = Instance(jobs=(Job(0, 2.0, 0.0, 3.0),))
        assert validate(inst) is inst

    def test_two_cycle_rejected(self):
        """A 2-cycle raises CycleError naming the path."""
        with pytest.raises(CycleError) as exc_info:
            make_instance([1, 1], prec=[(0, 1), (1, 0)])
        assert "cycle" in exc_info.value.detail

    def test_negative_processing_time(self):
        """Negative fields raise an InstanceError, which is also a ValueError."""
        with pytest.raises(ValueError):
            make_instance([-1])
        with pytest.raises(InstanceError):
            make_instance([1], r=[-2])

    def test_non_finite_field(self):
        """Test that NaN and infinite fields are rejected."""
        with pytest.raises(InstanceError):
            make_instance([1], w=[float("nan")])
        with pytest.raises(InstanceError):
            make_instance([float("inf")])

    def test_empty_instance(self):
        """Test that an instance without jobs is rejected."""
        with pytest.raises(InstanceError):
            validate(Instance(jobs=()))

    def test_bad_ids(self):
        """Ids must be exactly 0..n-1 without duplicates."""
        with pytest.raises(InstanceError):
            validate(Instance(jobs=(Job(0, 1.0), Job(2, 1.0))))
        with pytest.raises(InstanceError):
            validate(Instance(jobs=(Job(0, 1.0), Job(0, 1.0))))

    def test_unknown_precedence_job(self):
        """Test that a precedence pair naming an unknown job is rejected."""
        with pytest.raises(InstanceError):
            make_instance([1, 1], prec=[(0, 5)])

    def test_error_exit_code(self):
        """Instance errors map to exit code 2."""
        with pytest.raises(InstanceError) as exc_info:
            make_instance([-1])
        assert exc_info.value.exit_code == 2


class TestPrecedence:
    """Test cases for DAG helpers and release date normalization."""

    def test_topological_order_smallest_id_first(self):
        """Test that ready jobs are taken smallest id first."""
        inst = make_instance([1, 1, 1], prec=[(2, 0)])
        assert topological_order(inst) == [1, 2, 0]

    def test_topological_order_without_precedence(self):
        """Test that ids come in order without precedence."""
        assert topological_order(make_instance([1, 1, 1])) == [0, 1, 2]

    def test_topological_order_chain(self):
        """Test that a chain is its own topological order."""
        assert topological_order(make_instance([1, 1, 1], prec=[(0, 1), (1, 2)])) == [0, 1, 2]

    def test_normalize_direct(self):
        """The successor inherits the predecessor's release date, not r + p."""
        inst = normalize_release_dates(make_instance([1, 1], r=[5, 2], prec=[(0, 1)]))
        assert inst.r(1) == 5.0

    def test_normalize_transitive(self):
        """Test that release dates propagate along a chain."""
        inst = normalize_release_dates(make_instance([1, 1, 1], r=[3, 0, 1], prec=[(0, 1), (1, 2)]))
        assert [inst.r(j) for j in inst.ids] == [3.0, 3.0, 3.0]
        assert is_normalized(inst)

    def test_normalize_without_precedence_is_identity(self):
        """Test that normalization leaves unconstrained jobs alone."""
        inst = make_instance([1, 2], r=[4, 1])
        assert normalize_release_dates(inst) == inst

    @pytest.mark.parametrize("seed", range(10))
    def test_normalize_is_idempotent(self, seed):
        """Test that normalizing twice changes nothing."""
        generated = generate_random(8, edge_prob=0.3, seed=seed)
        assert normalize_release_dates(generated) == generated
        raw = make_instance([1, 2, 1, 3], r=[seed, 0, 2 * seed, 1], prec=[(0, 1), (1, 2), (0, 3)])
        once = normalize_release_dates(raw)
        assert normalize_release_dates(once) == once
        assert is_normalized(once)

    def test_descendants_and_closure(self):
        """Test descendants, reachability and the transitive closure."""
        inst = make_instance([1, 1, 1], prec=[(0, 1), (1, 2)])
        assert inst.descendants(0) == {1, 2}
        assert inst.precedes(0, 2)
        assert not inst.precedes(2, 0)
        assert inst.closure_pairs() == [(0, 1), (0, 2), (1, 2)]
        assert inst.predecessors(2) == [1]
        assert inst.successors(0) == [1]


class TestTextFormat:
    """Test cases for parsing and serializing instance documents."""

    def test_minimal_document(self):
        """Test parsing a one-job document."""
        inst = parse("jobs 1\njob 0 2 0 3\n")
        assert inst.n == 1
        assert inst.p(0) == 2.0 and inst.r(0) == 0.0 and inst.w(0) == 3.0

    def test_comments_and_blank_lines(self):
        """Test that comments and blank lines are skipped."""
        text = "# two jobs\n\njobs 2  # header\njob 0 2 0 1\njob 1 1 0 2\nprec 0 1\n"
        inst = parse(text)
        assert inst.n == 2
        assert inst.prec == frozenset({(0, 1)})

    def test_unknown_precedence_id(self):
        """Test the position reported for an unknown precedence id."""
        with pytest.raises(ParseError) as exc_info:
            parse("jobs 2\njob 0 1 0 1\njob 1 1 0 1\nprec 0 7\n")
        assert exc_info.value.line == 4
        assert exc_info.value.column == 8

    def test_bad_number_position(self):
        """Diagnostics carry source, line and column of the offending token."""
        with pytest.raises(ParseError) as exc_info:
            parse("jobs 2\njob 0 1 0 1\njob 1 x 0 1\n", source="bad.inst")
        error = exc_info.value
        assert (error.line, error.column) == (3, 7)
        assert str(error).startswith("bad.inst:3:7:")

    def test_unknown_keyword(self):
        """Test that an unknown keyword is reported on its line."""
        with pytest.raises(ParseError) as exc_info:
            parse("jobs 1\nfoo 1\n")
        assert exc_info.value.line == 2

    def test_missing_header(self):
        """Test that a document without a jobs header is rejected."""
        with pytest.raises(ParseError):
            parse("job 0 1 0 1\n")

    def test_missing_job_line(self):
        """Test that a missing job line is rejected."""
        with pytest.raises(ParseError):
            parse("jobs 2\njob 0 1 0 1\n")

    def test_cycle_in_document(self):
        """Test that a cyclic document raises CycleError."""
        with pytest.raises(CycleError):
            parse("jobs 2\njob 0 1 0 1\njob 1 1 0 1\nprec 0 1\nprec 1 0\n")

    def test_serialize_canonical(self):
        """Test the canonical text of an instance."""
        inst = make_instance([2, 0.5], r=[0, 1], w=[1, 2], prec=[(0, 1)])
        assert serialize(inst) == "jobs 2\njob 0 2 0 1\njob 1 0.5 1 2\nprec 0 1\n"

    def test_parse_serialize_identity(self):
        """Test that parsing the canonical text gives back the instance."""
        inst = make_instance([2, 0.25, 0], r=[0, 1.5, 3], w=[1, 0, 7], prec=[(0, 2), (1, 2)])
        assert parse(serialize(inst)) == inst

    def test_golden_fixture(self):
        """The sample fixture is stored in canonical form."""
        path = FIXTURES / "sample.inst"
        inst = load_instance(path)
        assert inst.name == "sample"
        assert serialize(inst) == path.read_text(encoding="utf-8")

    def test_save_and_load(self):
        """Test saving and loading, with the name taken from the file stem."""
        inst = make_instance([3, 1], r=[0, 2], w=[1, 1])
        with tempfile.TemporaryDirectory() as temp_dir:
            path = save_instance(inst, Path(temp_dir) / "pair.inst")
            loaded = load_instance(path)
        assert loaded.name == "pair"
        assert loaded.jobs == inst.jobs


class TestGenerator:
    """Test cases for random instance generation."""

    def test_single_job(self):
        """Test generating a single job."""
        inst = generate_random(1, seed=3)
        assert inst.n == 1
        assert inst.prec == frozenset()

    def test_same_seed_same_instance(self):
        """Test that a seed fixes the instance."""
        assert serialize(generate_random(6, seed=11)) == serialize(generate_random(6, seed=11))

    def test_different_seeds_differ(self):
        """Test that different seeds give different instances."""
        assert serialize(generate_random(8, seed=1)) != serialize(generate_random(8, seed=2))

    def test_normalized_along_every_edge(self):
        """Test that generated instances are normalized with forward edges."""
        inst = generate_random(8, edge_prob=0.3, seed=42)
        assert is_normalized(inst)
        assert all(j < k for j, k in inst.prec)

    def test_ranges(self):
        """Test that generated fields stay in their ranges."""
        inst = generate_random(30, p_max=5, r_max=7, w_max=3, edge_prob=0.0, seed=5)
        for job in inst.jobs:
            assert 0 <= job.p <= 5 and float(job.p).is_integer()
            assert 0 <= job.w <= 3
        # no edges, so release dates are the raw draws
        assert all(0 <= job.r <= 7 for job in inst.jobs)

    def test_zero_length_jobs(self):
        """Test that every job is zero-length at probability 1."""
        inst = generate_random(20, zero_length_prob=1.0, seed=0)
        assert all(job.p == 0 for job in inst.jobs)

    def test_invalid_arguments(self):
        """Test that bad generator arguments are rejected."""
        with pytest.raises(InstanceError):
            generate_random(0)
        with pytest.raises(InstanceError):
            generate_random(3, edge_prob=1.5)


if __name__ == "__main__":
    pytest.main([__file__])
