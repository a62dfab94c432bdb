"""
Instance data model for single machine scheduling with release dates and
precedence constraints.

An instance is a tuple of jobs (processing time, release date, weight) plus
the covering pairs of a precedence DAG. Instances are immutable; every
operation here returns a new value.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx
import numpy as np

from .errors import CycleError, InstanceError, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Job:
    """A single job: processing time ``p``, release date ``r``, weight ``w``."""
    id: int
    p: float
    r: float = 0.0
    w: float = 1.0


@dataclass(frozen=True)
class Instance:
    """Jobs plus precedence pairs ``(j, k)`` meaning j precedes k."""
    jobs: Tuple[Job, ...]
    prec: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)
    name: str = ""

    @property
    def n(self) -> int:
        return len(self.jobs)

    @cached_property
    def _by_id(self) -> Dict[int, Job]:
        return {job.id: job for job in self.jobs}

    def job(self, j: int) -> Job:
        return self._by_id[j]

    @property
    def ids(self) -> List[int]:
        return sorted(self._by_id)

    def p(self, j: int) -> float:
        return self._by_id[j].p

    def r(self, j: int) -> float:
        return self._by_id[j].r

    def w(self, j: int) -> float:
        return self._by_id[j].w

    @cached_property
    def graph(self) -> nx.DiGraph:
        """Precedence DAG over job ids (only the stored covering pairs)."""
        g = nx.DiGraph()
        g.add_nodes_from(job.id for job in self.jobs)
        g.add_edges_from(self.prec)
        return g

    def predecessors(self, k: int) -> List[int]:
        return sorted(self.graph.predecessors(k))

    def successors(self, j: int) -> List[int]:
        return sorted(self.graph.successors(j))

    def descendants(self, j: int) -> Set[int]:
        """All jobs that j precedes, transitively. Computed on demand."""
        return nx.descendants(self.graph, j)

    def precedes(self, j: int, k: int) -> bool:
        return k in self.descendants(j)

    def closure_pairs(self) -> List[Tuple[int, int]]:
        return sorted((j, k) for j in self.ids for k in self.descendants(j))


def validate(raw: Instance) -> Instance:
    """
    Check every instance invariant except release date monotonicity.

    Returns:
        The instance unchanged.

    Raises:
        InstanceError: negative, NaN or infinite field, duplicate id, id
            outside 0..n-1, or a precedence pair naming an unknown job.
        CycleError: the precedence pairs contain a directed cycle.
    """
    if raw.n == 0:
        raise InstanceError("Instance has no jobs")

    seen: Set[int] = set()
    for job in raw.jobs:
        if job.id in seen:
            raise InstanceError(f"Duplicate job id {job.id}")
        seen.add(job.id)
        for name in ("p", "r", "w"):
            value = getattr(job, name)
            if not math.isfinite(value):
                raise InstanceError(f"Job {job.id}: {name} must be finite, got {value}")
            if value < 0:
                raise InstanceError(f"Job {job.id}: {name} must be non-negative, got {value}")
    if seen != set(range(raw.n)):
        raise InstanceError(f"Job ids must be exactly 0..{raw.n - 1}")

    for j, k in raw.prec:
        if j not in seen or k not in seen:
            raise InstanceError(f"Precedence pair ({j}, {k}) names an unknown job")

    try:
        cycle = nx.find_cycle(raw.graph)
    except nx.NetworkXNoCycle:
        return raw
    path = " -> ".join(str(u) for u, _ in cycle) + f" -> {cycle[0][0]}"
    raise CycleError(f"Precedence constraints contain a cycle: {path}")


def topological_order(inst: Instance) -> List[int]:
    """Kahn's method taking the smallest available id first."""
    try:
        return list(nx.lexicographical_topological_sort(inst.graph))
    except nx.NetworkXUnfeasible as e:
        raise CycleError("Precedence constraints contain a cycle") from e


def normalize_release_dates(inst: Instance) -> Instance:
    """
    Raise release dates so that j precedes k implies r_j <= r_k.

    Only the maximum release date of the predecessors is propagated, never
    r_j + p_j.
    """
    release = {job.id: job.r for job in inst.jobs}
    for k in topological_order(inst):
        for j in inst.graph.predecessors(k):
            if release[j] > release[k]:
                release[k] = release[j]
    jobs = tuple(replace(job, r=release[job.id]) for job in inst.jobs)
    return replace(inst, jobs=jobs)


def is_normalized(inst: Instance) -> bool:
    return all(inst.r(j) <= inst.r(k) for j, k in inst.prec)


def make_instance(
    p: Sequence[float],
    r: Optional[Sequence[float]] = None,
    w: Optional[Sequence[float]] = None,
    prec: Iterable[Tuple[int, int]] = (),
    name: str = "",
) -> Instance:
    """Build and validate an instance from parallel sequences."""
    n = len(p)
    r = r if r is not None else [0.0] * n
    w = w if w is not None else [1.0] * n
    if len(r) != n or len(w) != n:
        raise InstanceError("p, r and w must have the same length")
    jobs = tuple(Job(j, float(p[j]), float(r[j]), float(w[j])) for j in range(n))
    return validate(Instance(jobs=jobs, prec=frozenset((int(j), int(k)) for j, k in prec), name=name))


# -- text format -------------------------------------------------------------

def _format_number(x: float) -> str:
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def _parse_int(token: str, line_no: int, column: int, source: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got '{token}'", line_no, column, source) from None


def _parse_number(token: str, line_no: int, column: int, source: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"expected a number, got '{token}'", line_no, column, source) from None
    if not math.isfinite(value):
        raise ParseError(f"number must be finite, got '{token}'", line_no, column, source)
    if value < 0:
        raise ParseError(f"number must be non-negative, got '{token}'", line_no, column, source)
    return value


def _tokens(line: str) -> List[Tuple[str, int]]:
    """Split a line into (token, 1-based column) pairs."""
    result = []
    column = 0
    for token in line.split():
        column = line.index(token, column)
        result.append((token, column + 1))
        column += len(token)
    return result


def parse(text: str, source: str = "<string>") -> Instance:
    """
    Parse an instance document.

    Format::

        # comment
        jobs <n>
        job <id> <p> <r> <w>
        prec <j> <k>

    Raises:
        ParseError: with line and column of the offending token.
    """
    n: Optional[int] = None
    n_line = 0
    jobs: Dict[int, Job] = {}
    prec: Set[Tuple[int, int]] = set()
    prec_lines: List[Tuple[int, int, int, int, int]] = []

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        tokens = _tokens(line)
        if not tokens:
            continue
        keyword, kw_col = tokens[0]
        args = tokens[1:]

        if keyword == "jobs":
            if n is not None:
                raise ParseError("duplicate 'jobs' header", line_no, kw_col, source)
            if len(args) != 1:
                raise ParseError("'jobs' takes exactly one argument", line_no, kw_col, source)
            n = _parse_int(args[0][0], line_no, args[0][1], source)
            if n < 1:
                raise ParseError("job count must be positive", line_no, args[0][1], source)
            n_line = line_no
        elif keyword == "job":
            if n is None:
                raise ParseError("'job' before 'jobs' header", line_no, kw_col, source)
            if len(args) != 4:
                raise ParseError("'job' takes <id> <p> <r> <w>", line_no, kw_col, source)
            j = _parse_int(args[0][0], line_no, args[0][1], source)
            if not 0 <= j < n:
                raise ParseError(f"job id {j} outside 0..{n - 1}", line_no, args[0][1], source)
            if j in jobs:
                raise ParseError(f"duplicate job id {j}", line_no, args[0][1], source)
            p, r, w = (_parse_number(tok, line_no, col, source) for tok, col in args[1:])
            jobs[j] = Job(j, p, r, w)
        elif keyword == "prec":
            if n is None:
                raise ParseError("'prec' before 'jobs' header", line_no, kw_col, source)
            if len(args) != 2:
                raise ParseError("'prec' takes <j> <k>", line_no, kw_col, source)
            j = _parse_int(args[0][0], line_no, args[0][1], source)
            k = _parse_int(args[1][0], line_no, args[1][1], source)
            prec.add((j, k))
            prec_lines.append((j, k, line_no, args[0][1], args[1][1]))
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line_no, kw_col, source)

    if n is None:
        raise ParseError("missing 'jobs' header", 1, 1, source)
    if len(jobs) != n:
        missing = sorted(set(range(n)) - set(jobs))
        raise ParseError(f"missing job lines for ids {missing}", n_line, 1, source)
    for j, k, line_no, col_j, col_k in prec_lines:
        if j not in jobs:
            raise ParseError(f"precedence names unknown job {j}", line_no, col_j, source)
        if k not in jobs:
            raise ParseError(f"precedence names unknown job {k}", line_no, col_k, source)

    inst = Instance(
        jobs=tuple(jobs[j] for j in range(n)),
        prec=frozenset(prec),
        name=Path(source).stem if source != "<string>" else "",
    )
    return validate(inst)


def serialize(inst: Instance) -> str:
    """Jobs in id order, then precedence pairs sorted lexicographically."""
    lines = [f"jobs {inst.n}"]
    for job in sorted(inst.jobs, key=lambda job: job.id):
        lines.append(f"job {job.id} {_format_number(job.p)} {_format_number(job.r)} {_format_number(job.w)}")
    for j, k in sorted(inst.prec):
        lines.append(f"prec {j} {k}")
    return "\n".join(lines) + "\n"


def load_instance(path: Union[str, Path]) -> Instance:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), source=str(path))


def save_instance(inst: Instance, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(serialize(inst), encoding="utf-8")
    return path


# -- random instances ----------------------------------------------------------

def generate_random(
    n: int,
    p_max: int = 10,
    r_max: int = 20,
    w_max: int = 10,
    edge_prob: float = 0.2,
    seed: int = 0,
    zero_length_prob: float = 0.05,
) -> Instance:
    """
    Random integer instance, normalized.

    Processing times are drawn from 1..p_max and set to 0 with probability
    ``zero_length_prob``; release dates from 0..r_max; weights from 0..w_max.
    Each pair (j, k) with j < k becomes a precedence pair with probability
    ``edge_prob``. The same arguments always yield the same instance.
    """
    if n < 1:
        raise InstanceError("n must be at least 1")
    for name, prob in (("edge_prob", edge_prob), ("zero_length_prob", zero_length_prob)):
        if not 0.0 <= prob <= 1.0:
            raise InstanceError(f"{name} must lie in [0, 1], got {prob}")
    if min(p_max, r_max, w_max) < 0:
        raise InstanceError("p_max, r_max and w_max must be non-negative")

    rng = np.random.default_rng(seed)
    zero = rng.random(n) < zero_length_prob
    p = rng.integers(1, p_max + 1, size=n) if p_max >= 1 else np.zeros(n, dtype=int)
    p = np.where(zero, 0, p)
    r = rng.integers(0, r_max + 1, size=n)
    w = rng.integers(0, w_max + 1, size=n)

    upper = np.triu_indices(n, k=1)
    coins = rng.random(len(upper[0])) < edge_prob
    prec = frozenset((int(j), int(k)) for j, k, c in zip(upper[0], upper[1], coins) if c)

    jobs = tuple(Job(j, float(p[j]), float(r[j]), float(w[j])) for j in range(n))
    inst = validate(Instance(jobs=jobs, prec=prec, name=f"random-n{n}-s{seed}"))
    logger.debug("Generated %s with %d precedence pairs", inst.name, len(prec))
    return normalize_release_dates(inst)
