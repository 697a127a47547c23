"""Correlation-driven graph contraction and solution reconstruction.

A contraction identifies two current super-vertices, either on equal sides
(sign +1) or on opposite sides (sign -1) of the cut. Weights of parallel
edges combine as w_kept,t + sign * w_removed,t on the dense weight matrix, so
pairs that share no edge stay contractible. Every cut of the contracted graph
lifts back to a cut of the original graph whose value exceeds the contracted
one by a constant offset; the offset grows, at each sign -1 contraction, by
the removed super-vertex's total incident weight at contraction time (those
edges are forcibly cut or uncut regardless of the remaining assignment).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph
from .relaxation import FractionalSolution, iter_pairs


def correlation_sign(b: float) -> int:
    """+1 for equal sides, -1 for opposite sides; zero correlations pair up."""
    return -1 if b < 0 else 1


@dataclass(frozen=True)
class CorrelationSet:
    """Pairwise tendencies in [-1, 1]: +1 same side, -1 opposite sides."""

    entries: tuple[tuple[tuple[int, int], float], ...]

    def __post_init__(self):
        for (u, v), b in self.entries:
            if u >= v:
                raise ValueError(f"pair ({u}, {v}) must be ordered u < v")
            if abs(b) > 1.0 + 1e-9:
                raise ValueError(f"correlation {b} for ({u}, {v}) outside [-1, 1]")

    @classmethod
    def from_dict(cls, entries: dict[tuple[int, int], float]) -> "CorrelationSet":
        return cls(tuple(sorted(entries.items())))

    def ordered_pairs(self) -> list[tuple[tuple[int, int], float]]:
        """Pairs by decreasing |correlation|, ties in lexicographic pair order."""
        return sorted(self.entries, key=lambda kv: (-abs(kv[1]), kv[0]))


def correlations_from_relaxation(sol: FractionalSolution) -> CorrelationSet:
    """b_uv = 1 - 2 x_uv for every pair of the relaxed instance."""
    vals = np.clip(sol.x, 0.0, 1.0)
    return CorrelationSet(
        tuple(((u, v), float(1.0 - 2.0 * x)) for (u, v), x in zip(iter_pairs(sol.n), vals))
    )


def zero_correlations(n: int) -> CorrelationSet:
    """All-zero correlations: contracts lexicographic pairs with sign +1."""
    return CorrelationSet(tuple(((u, v), 0.0) for u, v in iter_pairs(n)))


class SignedUnionFind:
    """Union-find where each vertex carries a +-1 sign relative to its root."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.sign = [1] * n

    def find(self, x: int) -> tuple[int, int]:
        """Root of x and the product of signs along the path (path-compressed)."""
        path = []
        node = x
        total = 1
        while self.parent[node] != node:
            path.append(node)
            total *= self.sign[node]
            node = self.parent[node]
        suffix = total
        for nd in path:
            old = self.sign[nd]
            self.parent[nd] = node
            self.sign[nd] = suffix
            suffix *= old  # signs are +-1, so this divides out the hop just passed
        return node, total

    def union_into(self, removed_root: int, kept_root: int, sign: int) -> None:
        self.parent[removed_root] = kept_root
        self.sign[removed_root] = sign


@dataclass(frozen=True)
class ShrinkRecord:
    """One contraction: removed merged into kept with the given sign.

    pair_weight is the weight between the two super-vertices at contraction
    time; offset_delta is the constant this contraction added to the
    reconstruction offset (0 for sign +1).
    """

    kept: int
    removed: int
    sign: int
    pair_weight: float
    offset_delta: float


class ShrinkState:
    """Mutable contraction state over one original graph (single-owner).

    Conservation law, the contract every operation preserves: for every
    assignment a of the reduced graph,

        cut_value(original, reconstruct(a)) == cut_value(reduced, a) + offset.
    """

    def __init__(self, graph: WeightedGraph):
        self.original = graph
        n = graph.vertex_count
        self._w = np.array(graph.weight_matrix, copy=True)
        self._active = np.ones(n, dtype=bool)
        self._uf = SignedUnionFind(n)
        self.records: list[ShrinkRecord] = []
        self.offset = 0.0

    @property
    def reduced_size(self) -> int:
        return int(np.count_nonzero(self._active))

    def active_vertices(self) -> np.ndarray:
        """Current super-vertex representatives, ascending; their order defines
        the reduced graph's vertex numbering."""
        return np.flatnonzero(self._active)

    @property
    def reduced(self) -> WeightedGraph:
        """The contracted instance; zero-weight pairs are dropped."""
        active = self.active_vertices()
        pos = {int(a): i for i, a in enumerate(active)}
        edges = []
        for i, a in enumerate(active):
            for b in active[i + 1 :]:
                w = self._w[a, b]
                if w != 0.0:
                    edges.append((pos[int(a)], pos[int(b)], float(w)))
        return WeightedGraph.from_edges(len(active), edges)

    def find(self, vertex: int) -> tuple[int, int]:
        """Super-vertex representative of an original vertex, with relative sign."""
        return self._uf.find(vertex)

    def current_weight(self, u: int, v: int) -> float:
        """Dense-representation weight between two current super-vertices."""
        for x in (u, v):
            if not (0 <= x < self._active.size) or not self._active[x]:
                raise ValueError(f"vertex {x} is not a current super-vertex")
        return float(self._w[u, v])

    def contract(self, removed: int, kept: int, sign: int) -> None:
        """Merge super-vertex `removed` into `kept` (equal sides for sign +1,
        opposite for -1), adjusting weights and the offset."""
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        if removed == kept:
            raise ValueError("cannot contract a super-vertex with itself")
        for v in (removed, kept):
            if not (0 <= v < self._active.size) or not self._active[v]:
                raise ValueError(f"vertex {v} is not a current super-vertex")
        pair_weight = float(self._w[removed, kept])
        delta = float(self._w[removed, self._active].sum()) if sign == -1 else 0.0
        others = self._active.copy()
        others[removed] = False
        others[kept] = False
        self._w[kept, others] += sign * self._w[removed, others]
        self._w[others, kept] = self._w[kept, others]
        self._w[removed, :] = 0.0
        self._w[:, removed] = 0.0
        self._active[removed] = False
        self._uf.union_into(removed, kept, sign)
        self.offset += delta
        self.records.append(ShrinkRecord(kept, removed, sign, pair_weight, delta))

    def reconstruct(self, reduced_assignment: np.ndarray) -> np.ndarray:
        """Lift a reduced-graph assignment to the original graph.

        Each original vertex takes the side of its super-vertex, flipped when
        its accumulated relative sign is -1.
        """
        a = np.asarray(reduced_assignment, dtype=bool)
        active = self.active_vertices()
        if a.shape != (active.size,):
            raise ValueError(f"assignment has length {a.size}, expected {active.size}")
        pos = {int(r): i for i, r in enumerate(active)}
        out = np.zeros(self.original.vertex_count, dtype=bool)
        for vertex in range(self.original.vertex_count):
            root, sign = self._uf.find(vertex)
            out[vertex] = bool(a[pos[root]]) ^ (sign < 0)
        return out


def shrink_to_target(g: WeightedGraph, correlations: CorrelationSet, target: int) -> ShrinkState:
    """Contract pairs in decreasing |correlation| until target vertices remain.

    Pairs whose endpoints already share a super-vertex are skipped, so only a
    forest of identifications is imposed. The pair ordering is computed once
    from the original correlations and projected through the current
    super-vertices; the pair sign composes with the endpoints' relative signs.
    """
    n = g.vertex_count
    if not 1 <= target <= n:
        raise ValueError(f"target size {target} outside [1, {n}]")
    state = ShrinkState(g)
    remaining = n - target
    for (u, v), b in correlations.ordered_pairs():
        if remaining == 0:
            break
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"correlation pair ({u}, {v}) outside the graph")
        root_u, sign_u = state.find(u)
        root_v, sign_v = state.find(v)
        if root_u == root_v:
            continue
        state.contract(root_u, root_v, correlation_sign(b) * sign_u * sign_v)
        remaining -= 1
    if remaining:
        raise ValueError(
            f"correlations exhausted with {remaining} contractions still needed; "
            "provide correlations for more pairs (e.g. on the dense closure)"
        )
    return state


def format_trace(state: ShrinkState) -> str:
    """One line per contraction: "kept removed sign pair_weight"."""
    lines = [
        f"{r.kept} {r.removed} {r.sign} "
        f"{int(r.pair_weight) if r.pair_weight == int(r.pair_weight) else repr(r.pair_weight)}"
        for r in state.records
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str) -> list[tuple[int, int, int, float]]:
    steps = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"trace line {line_no}: expected 'kept removed sign weight'")
        steps.append((int(parts[0]), int(parts[1]), int(parts[2]), float(parts[3])))
    return steps


def replay_trace(g: WeightedGraph, steps: list[tuple[int, int, int, float]]) -> ShrinkState:
    """Re-run a recorded contraction sequence, auditing the recorded weights."""
    state = ShrinkState(g)
    for kept, removed, sign, weight in steps:
        current = state.current_weight(removed, kept)
        if abs(current - weight) > 1e-9:
            raise ValueError(
                f"trace mismatch at ({kept}, {removed}): recorded weight {weight}, current {current}"
            )
        state.contract(removed, kept, sign)
    return state
