import math
import random

import pytest

from minent.coloring import coloring_entropy, exact_coloring, greedy_coloring
from minent.core import BudgetError, Graph, ValidationError, interval_graph
from minent.graphent import (enumerate_maximal_independent_sets, graph_entropy,
                             greedy_vs_entropy, splitting_gap)
from minent.io import random_bipartite_graph, random_intervals

C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
C5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


def complete(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def test_enumerate_mis():
    assert enumerate_maximal_independent_sets(complete(3)) == [(0,), (1,), (2,)]
    assert enumerate_maximal_independent_sets(Graph(3, [(0, 1), (1, 2)])) == [(0, 2), (1,)]
    c5_sets = enumerate_maximal_independent_sets(C5)
    assert len(c5_sets) == 5
    assert all(len(s) == 2 for s in c5_sets)


def test_enumerate_mis_budget():
    with pytest.raises(BudgetError):
        enumerate_maximal_independent_sets(complete(8), limit=3)


def test_graph_entropy_complete():
    for n in (2, 5, 9):
        h, w = graph_entropy(complete(n))
        assert h == pytest.approx(math.log2(n), abs=1e-6)
        assert all(p == pytest.approx(1 / n, abs=1e-5) for p in w.p)


def test_graph_entropy_edgeless():
    h, w = graph_entropy(Graph(6, []))
    assert h == pytest.approx(0.0, abs=1e-9)
    assert all(p == pytest.approx(1.0, abs=1e-9) for p in w.p)


def test_graph_entropy_c4():
    h, w = graph_entropy(C4)
    assert h == pytest.approx(1.0, abs=1e-5)
    assert all(p == pytest.approx(0.5, abs=1e-4) for p in w.p)


def test_witness_feasibility():
    for g in (C4, C5, complete(4), random_bipartite_graph(8, seed=3)):
        h, w = graph_entropy(g)
        assert math.fsum(w.q) == pytest.approx(1.0, abs=1e-9)
        assert all(q >= -1e-12 for q in w.q)
        for s, q in zip(w.sets, w.q):
            if q > 1e-12:
                assert g.is_independent_set(s)
        # marginals are the stated convex combination
        for v in range(g.n):
            pv = math.fsum(q for s, q in zip(w.sets, w.q) if v in s)
            assert pv == pytest.approx(w.p[v], abs=1e-9)
        assert w.value == pytest.approx(
            -math.fsum(math.log2(p) for p in w.p) / g.n, abs=1e-9)


def test_graph_entropy_validation():
    with pytest.raises(ValidationError):
        graph_entropy(C4, tol=0)
    with pytest.raises(ValidationError):
        graph_entropy(Graph(0, []))


def test_splitting_gap_perfect():
    assert abs(splitting_gap(C4)) <= 2e-6
    for n in (2, 4, 7):
        assert abs(splitting_gap(complete(n))) <= 2e-6


def test_splitting_gap_c5_strictly_positive():
    gap = splitting_gap(C5)
    assert gap >= -2e-6
    assert gap > 0.1  # C5 is imperfect; the identity fails by a wide margin


def test_splitting_gap_random_perfect_families():
    fixtures = []
    for seed in range(6):
        rng = random.Random(seed)
        fixtures.append(random_bipartite_graph(rng.randrange(3, 13), seed=seed))
        fixtures.append(interval_graph(random_intervals(rng.randrange(2, 9), seed=seed)))
    for g in fixtures:
        assert abs(splitting_gap(g)) <= 2e-6
        assert abs(splitting_gap(g.complement())) <= 2e-6


def test_lower_bound_chain():
    for seed in range(12):
        rng = random.Random(seed)
        g = random_bipartite_graph(rng.randrange(2, 11), seed=100 + seed)
        h, _ = graph_entropy(g)
        chrom = coloring_entropy(g, exact_coloring(g))
        greedy = coloring_entropy(g, greedy_coloring(g))
        assert h <= chrom + 1e-6
        assert chrom <= greedy + 1e-9


def test_greedy_vs_entropy_reports():
    rep = greedy_vs_entropy(Graph(5, []))
    assert rep.g_bits == 0.0 and rep.H_bits == pytest.approx(0.0, abs=1e-9)
    assert rep.bound_holds

    rep = greedy_vs_entropy(complete(6))
    assert rep.g_bits == pytest.approx(math.log2(6), abs=1e-9)
    assert rep.H_bits == pytest.approx(math.log2(6), abs=1e-6)
    assert rep.bound_rhs - rep.g_bits >= 4.0 - 1e-6  # margin at least the constant
    assert rep.bound_holds and rep.chain_ok


def test_greedy_vs_entropy_perfect_family():
    for seed in range(10):
        rng = random.Random(seed)
        g = random_bipartite_graph(rng.randrange(2, 11), seed=200 + seed)
        rep = greedy_vs_entropy(g)
        assert rep.bound_holds
        assert rep.chain_ok
