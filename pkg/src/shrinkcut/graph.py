"""Weighted MaxCut instances: parsing, cut evaluation, exact enumeration, QUBO mapping."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

BRUTE_FORCE_CAP = 24


class ParseError(ValueError):
    """Malformed instance text; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph on vertices 0..vertex_count-1.

    Edges are stored canonically: u < v, sorted by (u, v), at most one entry
    per pair (parallel edges are merged by summing their weights at
    construction). Instances are immutable and safe to share across threads.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        prev = None
        for u, v, _ in self.edges:
            if not (0 <= u < v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) is not canonical for {self.vertex_count} vertices")
            if prev is not None and (u, v) <= prev:
                raise ValueError("edges must be sorted with unique pairs; use from_edges()")
            prev = (u, v)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int, float]]) -> "WeightedGraph":
        """Build a graph, canonicalizing pairs and summing duplicate entries."""
        merged: dict[tuple[int, int], float] = {}
        for u, v, w in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"vertex id out of range in edge ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0.0) + float(w)
        items = tuple((u, v, merged[(u, v)]) for u, v in sorted(merged))
        return cls(vertex_count, items)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        """Symmetric (n, n) weight matrix; absent pairs are 0."""
        m = np.zeros((self.vertex_count, self.vertex_count))
        for u, v, w in self.edges:
            m[u, v] = w
            m[v, u] = w
        m.setflags(write=False)
        return m

    @cached_property
    def nonzero_edges(self) -> tuple[tuple[int, int, float], ...]:
        """Edges with weight != 0 (dense closures carry explicit zero pairs)."""
        return tuple(e for e in self.edges if e[2] != 0.0)

    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))

    def is_complete(self) -> bool:
        return self.edge_count == self.vertex_count * (self.vertex_count - 1) // 2


@dataclass(frozen=True)
class QuboProblem:
    """max sum_{i<=j} q_ij x_i x_j over binary x; coefficients keyed (i, j) with i <= j."""

    n: int
    coefficients: tuple[tuple[tuple[int, int], float], ...]

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple[int, int, float]]) -> "QuboProblem":
        merged: dict[tuple[int, int], float] = {}
        for i, j, q in entries:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"index out of range in entry ({i}, {j})")
            key = (i, j) if i <= j else (j, i)
            merged[key] = merged.get(key, 0.0) + float(q)
        return cls(n, tuple(sorted(merged.items())))

    def objective(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=bool)
        if x.shape != (self.n,):
            raise ValueError("assignment length mismatch")
        return float(sum(q * (x[i] and x[j]) for (i, j), q in self.coefficients))


@dataclass(eq=False)
class ExactCutSummary:
    """Result of exhaustive cut enumeration.

    argmax is the optimal assignment with the lowest binary encoding (vertex i
    is bit i); optimum_count counts distinct optimal bipartitions, where a set
    and its complement are the same bipartition.
    """

    max_value: float
    min_value: float
    argmax: np.ndarray
    optimum_count: int


def parse_instance(text: str) -> WeightedGraph:
    """Parse an instance: header line "n m", then m lines "i j w" (1-based ids).

    Lines starting with '#' and blank lines are ignored. Duplicate pairs are
    summed. Raises ParseError with the offending line number.
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int, float]] = []
    edge_lines = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError(line_no, f"expected header 'n m', got {line!r}")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(line_no, f"non-integer header field in {line!r}") from None
            if n < 0 or m < 0:
                raise ParseError(line_no, "negative count in header")
            header = (n, m)
            continue
        if len(parts) != 3:
            raise ParseError(line_no, f"expected edge 'i j w', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise ParseError(line_no, f"malformed edge line {line!r}") from None
        n = header[0]
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(line_no, f"vertex id out of range [1, {n}] in {line!r}")
        if i == j:
            raise ParseError(line_no, f"self-loop at vertex {i}")
        edges.append((i - 1, j - 1, w))
        edge_lines += 1
    if header is None:
        raise ParseError(1, "empty instance: missing header line")
    n, m = header
    if edge_lines != m:
        raise ParseError(1, f"header declares {m} edges but {edge_lines} edge lines found")
    return WeightedGraph.from_edges(n, edges)


def format_instance(g: WeightedGraph) -> str:
    """Inverse of parse_instance: 1-based ids, weights round-trip exactly."""
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(
        f"{u + 1} {v + 1} {int(w) if w == int(w) else repr(w)}" for u, v, w in g.edges
    )
    return "\n".join(lines) + "\n"


def cut_value(g: WeightedGraph, assignment: np.ndarray) -> float:
    """Total weight of edges crossing the bipartition given by a boolean side vector."""
    a = np.asarray(assignment, dtype=bool)
    if a.shape != (g.vertex_count,):
        raise ValueError(f"assignment has length {a.size}, expected {g.vertex_count}")
    return float(sum(w for u, v, w in g.edges if a[u] != a[v]))


def cut_value_batch(g: WeightedGraph, assignments: np.ndarray) -> np.ndarray:
    """Cut values for a (k, n) boolean matrix of assignments, one row each."""
    a = np.asarray(assignments, dtype=bool)
    if a.ndim != 2 or a.shape[1] != g.vertex_count:
        raise ValueError(f"expected shape (k, {g.vertex_count})")
    vals = np.zeros(a.shape[0])
    for u, v, w in g.edges:
        vals += w * (a[:, u] ^ a[:, v])
    return vals


def cut_values_for_indices(g: WeightedGraph, indices: np.ndarray) -> np.ndarray:
    """Cut values for assignments encoded as integers (vertex i = bit i)."""
    idx = np.asarray(indices, dtype=np.int64)
    vals = np.zeros(idx.shape)
    for u, v, w in g.edges:
        vals += w * (((idx >> u) ^ (idx >> v)) & 1)
    return vals


def index_to_assignment(index: int, n: int) -> np.ndarray:
    return ((index >> np.arange(n)) & 1).astype(bool)


def brute_force(g: WeightedGraph, max_vertices: int = BRUTE_FORCE_CAP) -> ExactCutSummary:
    """Exact min/max cut by enumerating all 2^(n-1) bipartitions.

    Complement symmetry halves the search: only assignments with the top
    vertex on the False side are visited, which also makes the reported
    argmax the optimum with the lowest binary encoding. The empty bipartition
    is included, so max_value >= 0 >= min_value always holds.
    """
    n = g.vertex_count
    if n > max_vertices:
        raise ValueError(f"{n} vertices exceeds the enumeration cap of {max_vertices}")
    if n == 0:
        return ExactCutSummary(0.0, 0.0, np.zeros(0, dtype=bool), 1)
    half = 1 << (n - 1)
    chunk = 1 << 20
    best = -np.inf
    worst = np.inf
    arg = 0
    for start in range(0, half, chunk):
        idx = np.arange(start, min(start + chunk, half), dtype=np.int64)
        vals = cut_values_for_indices(g, idx)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best = float(vals[i])
            arg = int(idx[i])
        worst = min(worst, float(np.min(vals)))
    count = 0
    for start in range(0, half, chunk):
        idx = np.arange(start, min(start + chunk, half), dtype=np.int64)
        count += int(np.sum(cut_values_for_indices(g, idx) == best))
    return ExactCutSummary(best, worst, index_to_assignment(arg, n), count)


def format_summary(s: ExactCutSummary) -> str:
    """Flat key/value text record for an enumeration result."""
    bits = "".join("1" if b else "0" for b in s.argmax)
    return (
        f"max_value {s.max_value:.12g}\n"
        f"min_value {s.min_value:.12g}\n"
        f"optimum_count {s.optimum_count}\n"
        f"argmax {bits}\n"
    )


def qubo_to_maxcut(q: QuboProblem) -> tuple[WeightedGraph, float]:
    """Map a QUBO to an equivalent MaxCut instance on n+1 vertices.

    Vertex 0 is the reference vertex. For every binary x, the bipartition
    W = {i+1 : x_i = 1} satisfies cut value = objective + offset. Pair weights
    are -q_ij/2 and reference weights q_ii + sum_j q_ij / 2, which makes the
    offset zero; the equivalence is what tests pin down, not the constants.
    """
    n = q.n
    coeff = dict(q.coefficients)
    edges: list[tuple[int, int, float]] = []
    for (i, j), qq in coeff.items():
        if i != j and qq != 0.0:
            edges.append((i + 1, j + 1, -qq / 2.0))
    for i in range(n):
        w = coeff.get((i, i), 0.0)
        for (a, b), qq in coeff.items():
            if a != b and (a == i or b == i):
                w += qq / 2.0
        if w != 0.0:
            edges.append((0, i + 1, w))
    return WeightedGraph.from_edges(n + 1, edges), 0.0


def dense_closure(g: WeightedGraph) -> WeightedGraph:
    """Complete graph on the same vertices; missing pairs get weight 0."""
    existing = {(u, v): w for u, v, w in g.edges}
    n = g.vertex_count
    edges = [(u, v, existing.get((u, v), 0.0)) for u in range(n) for v in range(u + 1, n)]
    return WeightedGraph.from_edges(n, edges)
