"""Application-layer instance builders: haplotype phasing as minimum entropy
set cover, and side-information coding via confusability graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import BudgetError, Graph, SetSystem, ValidationError
from .coloring import Coloring, coloring_entropy

DEFAULT_WILDCARD_CAP = 20


@dataclass(frozen=True)
class GenotypePanel:
    """Equal-length genotype strings over the alphabet {0, 1, ?}."""

    genotypes: tuple[str, ...]

    def __init__(self, genotypes):
        genotypes = tuple(genotypes)
        if not genotypes:
            raise ValidationError("empty genotype panel")
        length = len(genotypes[0])
        for s in genotypes:
            if len(s) != length:
                raise ValidationError("genotypes must have uniform length")
            if any(ch not in "01?" for ch in s):
                raise ValidationError(f"invalid genotype character in {s!r}")
        object.__setattr__(self, "genotypes", genotypes)


@dataclass(frozen=True)
class JointTable:
    """Joint probability table P(X=x, Y=y) with labeled rows and columns."""

    x_labels: tuple[str, ...]
    y_labels: tuple[str, ...]
    probs: tuple[tuple[float, ...], ...]

    def __init__(self, x_labels, y_labels, probs):
        x_labels = tuple(x_labels)
        y_labels = tuple(y_labels)
        probs = tuple(tuple(float(p) for p in row) for row in probs)
        if len(probs) != len(x_labels) or any(len(r) != len(y_labels) for r in probs):
            raise ValidationError("probability matrix shape mismatch")
        if any(p < 0 for row in probs for p in row):
            raise ValidationError("negative probability entry")
        total = math.fsum(p for row in probs for p in row)
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"table entries sum to {total}, not 1")
        object.__setattr__(self, "x_labels", x_labels)
        object.__setattr__(self, "y_labels", y_labels)
        object.__setattr__(self, "probs", probs)

    def marginal_x(self) -> tuple[float, ...]:
        return tuple(math.fsum(row) for row in self.probs)


def compatible_haplotypes(genotype: str, max_wildcards: int = DEFAULT_WILDCARD_CAP) -> list[str]:
    """All binary strings matching the genotype on every non-? position, in
    lexicographic order."""
    if any(ch not in "01?" for ch in genotype):
        raise ValidationError(f"invalid genotype character in {genotype!r}")
    holes = [i for i, ch in enumerate(genotype) if ch == "?"]
    if len(holes) > max_wildcards:
        raise BudgetError(
            f"genotype has {len(holes)} wildcards, above the cap of {max_wildcards}")
    out = []
    for bits in range(1 << len(holes)):
        chars = list(genotype)
        for j, pos in enumerate(holes):
            chars[pos] = "1" if bits >> (len(holes) - 1 - j) & 1 else "0"
        out.append("".join(chars))
    return out


def explains(haplotype: str, genotype: str) -> bool:
    return len(haplotype) == len(genotype) and all(
        g == "?" or h == g for h, g in zip(haplotype, genotype))


def haplotype_instance(panel: GenotypePanel, cap: int = 10 ** 5,
                       max_wildcards: int = DEFAULT_WILDCARD_CAP) -> tuple[SetSystem, list[str]]:
    """Build the set-cover instance of haplotype phasing: the universe is the
    genotypes (duplicates kept distinct) and each distinct compatible
    haplotype contributes the set of genotypes it explains. Greedy set cover
    on the result is the maximum-likelihood-style phasing."""
    haplotypes: set[str] = set()
    for g in panel.genotypes:
        haplotypes.update(compatible_haplotypes(g, max_wildcards))
        if len(haplotypes) > cap:
            raise BudgetError(
                f"more than {cap} distinct haplotypes; lower the per-genotype "
                "wildcard count or raise the cap")
    labels = sorted(haplotypes)
    sets = [[i for i, g in enumerate(panel.genotypes) if explains(h, g)]
            for h in labels]
    return SetSystem(len(panel.genotypes), sets), labels


def confusability_graph(t: JointTable) -> Graph:
    """Vertices are the X values, weighted by their marginals; x and x' are
    adjacent when some y has P(x,y) > 0 and P(x',y) > 0. Depends only on the
    zero pattern of the table."""
    marg = t.marginal_x()
    for x, p in zip(t.x_labels, marg):
        if p <= 0:
            raise ValidationError(f"symbol {x!r} has zero marginal probability")
    nx = len(t.x_labels)
    edges = []
    for a in range(nx):
        for b in range(a + 1, nx):
            if any(t.probs[a][y] > 0 and t.probs[b][y] > 0
                   for y in range(len(t.y_labels))):
                edges.append((a, b))
    return Graph(nx, edges, marg)


def code_rate(g: Graph, c: Coloring) -> float:
    """Rate (bits) of the side-information code induced by a proper coloring
    of the confusability graph: the weighted coloring entropy."""
    if g.weights is None:
        raise ValidationError("code rate needs marginal weights on the graph")
    return coloring_entropy(g, c)
