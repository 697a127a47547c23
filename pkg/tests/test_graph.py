import itertools

import numpy as np
import pytest

from shrinkcut import (
    ParseError,
    QuboProblem,
    WeightedGraph,
    brute_force,
    cut_value,
    cut_value_batch,
    dense_closure,
    format_instance,
    format_summary,
    parse_instance,
    qubo_to_maxcut,
)
from shrinkcut.graph import index_to_assignment
from shrinkcut.instances import random_weighted_graph


def enumerate_cuts(g):
    """Independent oracle: every assignment by direct definition."""
    values = {}
    for bits in itertools.product([False, True], repeat=g.vertex_count):
        a = np.array(bits)
        values[bits] = sum(w for u, v, w in g.edges if a[u] != a[v])
    return values


def test_parse_single_edge():
    g = parse_instance("2 1\n1 2 5")
    assert g.vertex_count == 2
    assert g.edges == ((0, 1, 5.0),)


def test_parse_unit_triangle():
    g = parse_instance("3 3\n1 2 1\n2 3 1\n1 3 1")
    assert g.vertex_count == 3
    assert g.edges == ((0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0))


def test_parse_merges_duplicates_additively():
    g = parse_instance("2 2\n1 2 3\n1 2 4")
    assert g.edges == ((0, 1, 7.0),)


def test_parse_comments_and_blank_lines():
    text = "# spin glass\n\n3 2\n# edge block\n1 2 -1.5\n\n2 3 2\n"
    g = parse_instance(text)
    assert g.edge_count == 2
    assert g.edges[0] == (0, 1, -1.5)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_instance("2 1\n1 2 oops")
    assert err.value.line_no == 2
    with pytest.raises(ParseError) as err:
        parse_instance("2 1\n1 3 1.0")
    assert err.value.line_no == 2
    with pytest.raises(ParseError) as err:
        parse_instance("3 3\n1 2 1\n2 3 1")
    assert "3 edges" in str(err.value)
    with pytest.raises(ParseError):
        parse_instance("2 1\n1 1 4")
    with pytest.raises(ParseError):
        parse_instance("")


def test_format_parse_round_trip():
    rng = np.random.default_rng(0)
    g = random_weighted_graph(7, 0.5, rng)
    assert parse_instance(format_instance(g)) == g


def test_cut_value_trivial_cases():
    k2 = WeightedGraph.from_edges(2, [(0, 1, 5.0)])
    assert cut_value(k2, [True, False]) == 5.0
    assert cut_value(k2, [False, False]) == 0.0
    triangle = parse_instance("3 3\n1 2 1\n2 3 1\n1 3 1")
    assert cut_value(triangle, [True, False, False]) == 2.0


def test_cut_value_length_mismatch():
    g = WeightedGraph.from_edges(2, [(0, 1, 1.0)])
    with pytest.raises(ValueError):
        cut_value(g, [True])


def test_cut_complement_symmetry():
    rng = np.random.default_rng(1)
    for _ in range(10):
        g = random_weighted_graph(6, 0.6, rng)
        a = rng.integers(0, 2, size=6).astype(bool)
        assert cut_value(g, a) == pytest.approx(cut_value(g, ~a), abs=1e-12)


def test_cut_value_batch_matches_scalar():
    rng = np.random.default_rng(2)
    g = random_weighted_graph(5, 0.7, rng)
    mat = rng.integers(0, 2, size=(8, 5)).astype(bool)
    batch = cut_value_batch(g, mat)
    for row, val in zip(mat, batch):
        assert val == pytest.approx(cut_value(g, row), abs=1e-12)


def test_brute_force_unit_triangle():
    g = parse_instance("3 3\n1 2 1\n2 3 1\n1 3 1")
    s = brute_force(g)
    assert s.max_value == 2.0
    assert s.min_value == 0.0
    # three distinct optimal bipartitions (one vertex against the others)
    assert s.optimum_count == 3
    # lowest-encoding optimum is {vertex 0}
    assert list(s.argmax) == [True, False, False]


def test_brute_force_mixed_ring():
    # 4-ring with weights +1,+1,+1,-1: hand enumeration gives max 2
    g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, -1.0)])
    oracle = enumerate_cuts(g)
    assert max(oracle.values()) == 2.0
    s = brute_force(g)
    assert s.max_value == 2.0
    assert s.min_value == min(oracle.values())


def test_brute_force_negative_k2():
    g = WeightedGraph.from_edges(2, [(0, 1, -3.0)])
    s = brute_force(g)
    assert s.max_value == 0.0
    assert s.min_value == -3.0
    assert list(s.argmax) == [False, False]


def test_brute_force_dominates_every_assignment():
    rng = np.random.default_rng(3)
    for _ in range(5):
        g = random_weighted_graph(7, 0.5, rng)
        s = brute_force(g)
        oracle = enumerate_cuts(g)
        assert s.max_value == pytest.approx(max(oracle.values()), abs=1e-12)
        assert s.min_value == pytest.approx(min(oracle.values()), abs=1e-12)
        assert cut_value(g, s.argmax) == pytest.approx(s.max_value, abs=1e-12)


def test_brute_force_cap():
    g = WeightedGraph.from_edges(5, [(0, 1, 1.0)])
    with pytest.raises(ValueError):
        brute_force(g, max_vertices=4)


def test_format_summary_record():
    g = WeightedGraph.from_edges(2, [(0, 1, 5.0)])
    text = format_summary(brute_force(g))
    assert "max_value 5\n" in text
    assert "argmax 10\n" in text


def test_qubo_zero_problem():
    q = QuboProblem.from_entries(3, [])
    g, offset = qubo_to_maxcut(q)
    assert g.vertex_count == 4
    assert g.edge_count == 0
    assert offset == 0.0


def test_qubo_single_variable():
    q = QuboProblem.from_entries(1, [(0, 0, 1.0)])
    g, offset = qubo_to_maxcut(q)
    assert cut_value(g, [False, True]) - cut_value(g, [False, False]) == pytest.approx(1.0)


def test_qubo_equivalence_exhaustive():
    rng = np.random.default_rng(4)
    for _ in range(8):
        n = int(rng.integers(1, 7))
        entries = [
            (i, j, float(rng.normal()))
            for i in range(n)
            for j in range(i, n)
            if rng.random() < 0.7
        ]
        q = QuboProblem.from_entries(n, entries)
        g, offset = qubo_to_maxcut(q)
        for bits in itertools.product([False, True], repeat=n):
            x = np.array(bits)
            a = np.concatenate([[False], x])
            assert cut_value(g, a) == pytest.approx(q.objective(x) + offset, abs=1e-9)


def test_dense_closure_small_cases():
    k2 = WeightedGraph.from_edges(2, [(0, 1, 3.0)])
    assert dense_closure(k2) == k2
    isolated = WeightedGraph.from_edges(3, [])
    closed = dense_closure(isolated)
    assert closed.edge_count == 3
    assert all(w == 0.0 for _, _, w in closed.edges)
    path = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
    closed = dense_closure(path)
    assert closed.weight_matrix[0, 2] == 0.0
    assert closed.is_complete()


def test_dense_closure_preserves_cut_values():
    rng = np.random.default_rng(5)
    g = random_weighted_graph(6, 0.4, rng)
    closed = dense_closure(g)
    for _ in range(10):
        a = rng.integers(0, 2, size=6).astype(bool)
        assert cut_value(closed, a) == pytest.approx(cut_value(g, a), abs=1e-12)


def test_index_assignment_round_trip():
    for idx in range(16):
        a = index_to_assignment(idx, 4)
        assert sum(int(b) << i for i, b in enumerate(a)) == idx


def test_from_edges_validation():
    with pytest.raises(ValueError):
        WeightedGraph.from_edges(2, [(0, 0, 1.0)])
    with pytest.raises(ValueError):
        WeightedGraph.from_edges(2, [(0, 2, 1.0)])
