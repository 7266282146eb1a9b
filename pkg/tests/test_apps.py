import math

import pytest

from minent.apps import (GenotypePanel, JointTable, code_rate,
                         compatible_haplotypes, confusability_graph, explains,
                         haplotype_instance)
from minent.coloring import Coloring, greedy_coloring
from minent.core import BudgetError, ValidationError
from minent.setcover import cover_entropy, exact_cover, greedy_cover, likelihood

CHANNEL3X2 = JointTable(["a", "b", "c"], ["0", "1"],
                   [[0.25, 0.25], [0.25, 0.0], [0.0, 0.25]])


def test_compatible_haplotypes():
    assert compatible_haplotypes("0?") == ["00", "01"]
    assert compatible_haplotypes("10") == ["10"]
    assert compatible_haplotypes("??") == ["00", "01", "10", "11"]


def test_compatible_haplotypes_errors():
    with pytest.raises(ValidationError):
        compatible_haplotypes("0x1")
    with pytest.raises(BudgetError):
        compatible_haplotypes("?" * 25)


def test_genotype_panel_validation():
    with pytest.raises(ValidationError):
        GenotypePanel([])
    with pytest.raises(ValidationError):
        GenotypePanel(["01", "0"])
    with pytest.raises(ValidationError):
        GenotypePanel(["02"])


def test_haplotype_instance_worked_panel():
    panel = GenotypePanel(["0?", "?1"])
    system, labels = haplotype_instance(panel)
    assert labels == ["00", "01", "11"]
    assert system.sets == ((0,), (0, 1), (1,))
    cover, _ = greedy_cover(system)
    assert cover.assignment == (1, 1)  # both genotypes phased to haplotype 01
    assert cover_entropy(system, cover) == 0.0


def test_haplotype_instance_no_wildcards():
    panel = GenotypePanel(["01", "01", "11"])
    system, labels = haplotype_instance(panel)
    assert labels == ["01", "11"]
    cover, _ = greedy_cover(system)
    # duplicates stay distinct universe elements
    assert system.universe_size == 3
    assert cover.induced_counts == (2, 1)


def test_haplotype_sets_roundtrip():
    panel = GenotypePanel(["0??", "?10", "1?1"])
    system, labels = haplotype_instance(panel)
    for h, members in zip(labels, system.sets):
        for i, g in enumerate(panel.genotypes):
            assert (i in members) == explains(h, g)


def test_phasing_likelihood_bound():
    panel = GenotypePanel(["0?", "?1", "1?", "11"])
    system, _ = haplotype_instance(panel)
    n = system.universe_size
    greedy, _ = greedy_cover(system)
    best = exact_cover(system)
    assert likelihood(system, greedy) >= likelihood(system, best) - n * math.log2(math.e) - 1e-9


def test_joint_table_validation():
    with pytest.raises(ValidationError):
        JointTable(["a"], ["0"], [[0.5]])
    with pytest.raises(ValidationError):
        JointTable(["a"], ["0", "1"], [[1.2, -0.2]])


def test_confusability_graph_worked_table():
    g = confusability_graph(CHANNEL3X2)
    assert set(g.edges) == {(0, 1), (0, 2)}  # {a,b} and {a,c}, never {b,c}
    assert g.weights == pytest.approx((0.5, 0.25, 0.25))


def test_confusability_graph_all_positive_is_complete():
    t = JointTable(["a", "b", "c"], ["0", "1"], [[1 / 6] * 2] * 3)
    assert confusability_graph(t).m == 3


def test_confusability_graph_diagonal_is_edgeless():
    t = JointTable(["a", "b"], ["0", "1"], [[0.5, 0.0], [0.0, 0.5]])
    g = confusability_graph(t)
    assert g.m == 0
    assert code_rate(g, Coloring([1, 1])) == 0.0


def test_confusability_zero_marginal_rejected():
    with pytest.raises(ValidationError):
        confusability_graph(JointTable(["a", "b"], ["0"], [[1.0], [0.0]]))


def test_confusability_invariant_under_positive_rescaling():
    scaled = [[4 * p for p in row] for row in CHANNEL3X2.probs]
    total = sum(p for row in scaled for p in row)
    t2 = JointTable(CHANNEL3X2.x_labels, CHANNEL3X2.y_labels,
                    [[p / total for p in row] for row in scaled])
    assert confusability_graph(t2).edges == confusability_graph(CHANNEL3X2).edges


def test_code_rate_examples():
    uniform = JointTable(["a", "b", "c"], ["0", "1"],
                         [[1 / 6, 1 / 6], [1 / 3, 0.0], [0.0, 1 / 3]])
    g = confusability_graph(uniform)
    rate = code_rate(g, Coloring([2, 1, 1]))  # {b,c} share a codeword
    assert rate == pytest.approx(0.9183, abs=1e-3)
    # rainbow coloring rate is exactly H(P(X))
    rainbow = code_rate(g, Coloring([1, 2, 3]))
    hx = -math.fsum(p * math.log2(p) for p in g.weights)
    assert rainbow == pytest.approx(hx, abs=1e-12)


def test_code_rate_needs_weights():
    from minent.core import Graph
    with pytest.raises(ValidationError):
        code_rate(Graph(2, []), Coloring([1, 1]))


def test_greedy_coloring_on_confusability_graph():
    g = confusability_graph(CHANNEL3X2)
    col = greedy_coloring(g)
    assert code_rate(g, col) <= 1.0 + 1e-9
