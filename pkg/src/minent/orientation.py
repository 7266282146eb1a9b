"""Minimum entropy orientation: biased orientations (additive +1 bit), the
exhaustive oracle, and the constant-time sampling estimator."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import BudgetError, FeasibilityError, Graph, ValidationError


@dataclass(frozen=True)
class Orientation:
    """Per-edge (tail, head) pairs, aligned with graph.edges, plus indegrees."""

    direction: tuple[tuple[int, int], ...]
    indegrees: tuple[int, ...]

    @staticmethod
    def from_directions(g: Graph, direction) -> "Orientation":
        direction = tuple(tuple(d) for d in direction)
        if len(direction) != g.m:
            raise FeasibilityError("one direction per edge required")
        indeg = [0] * g.n
        for (u, v), (tail, head) in zip(g.edges, direction):
            if {tail, head} != {u, v}:
                raise FeasibilityError(f"direction ({tail},{head}) does not match edge ({u},{v})")
            indeg[head] += 1
        return Orientation(direction, tuple(indeg))


@dataclass(frozen=True)
class EstimatorParams:
    epsilon: float
    delta: float
    seed: int = 0
    s: Optional[int] = None

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValidationError("epsilon must be positive")
        if not 0 < self.delta < 1:
            raise ValidationError("delta must be in (0,1)")
        if self.s is not None and self.s < 1:
            raise ValidationError("sample count must be >= 1")


def orientation_entropy(g: Graph, o: Orientation) -> float:
    """Entropy (bits) of {indegree(v)/m} over vertices of positive indegree."""
    if g.m == 0:
        raise ValidationError("graph has no edges to orient")
    _check(g, o)
    m = g.m
    return math.log2(m) - math.fsum(r * math.log2(r) for r in o.indegrees if r) / m


def _check(g: Graph, o: Orientation) -> None:
    if len(o.direction) != g.m or len(o.indegrees) != g.n:
        raise FeasibilityError("orientation shape mismatch")
    indeg = [0] * g.n
    for (u, v), (tail, head) in zip(g.edges, o.direction):
        if {tail, head} != {u, v}:
            raise FeasibilityError("orientation does not match edge list")
        indeg[head] += 1
    if tuple(indeg) != o.indegrees:
        raise FeasibilityError("indegrees inconsistent with directions")


def _edge_head(g: Graph, u: int, v: int, pos: Sequence[int]) -> int:
    """Head of edge uv in the biased orientation: the strictly higher-degree
    endpoint, ties broken toward the endpoint later in the vertex order."""
    du, dv = g.degree(u), g.degree(v)
    if du != dv:
        return u if du > dv else v
    return u if pos[u] > pos[v] else v


def biased_orientation(g: Graph, order: Optional[Sequence[int]] = None) -> Orientation:
    """Orient every edge toward its higher-degree endpoint; degree ties go to
    the endpoint appearing later in `order` (default: identity)."""
    if g.m == 0:
        raise ValidationError("graph has no edges to orient")
    if order is None:
        pos = list(range(g.n))
    else:
        if sorted(order) != list(range(g.n)):
            raise ValidationError("order must be a permutation of the vertices")
        pos = [0] * g.n
        for i, v in enumerate(order):
            pos[v] = i
    direction = []
    for (u, v) in g.edges:
        head = _edge_head(g, u, v, pos)
        direction.append((v if head == u else u, head))
    return Orientation.from_directions(g, direction)


def exact_orientation(g: Graph, limit: int = 2 ** 22) -> Orientation:
    """Minimum-entropy orientation by exhaustive enumeration of all 2^m
    direction vectors; returns the lexicographically smallest optimum
    (bit 0 for edge j meaning u->v with u < v)."""
    m = g.m
    if m == 0:
        raise ValidationError("graph has no edges to orient")
    if 2 ** m > limit:
        raise BudgetError(f"2^{m} orientations exceed budget {limit}")
    masks = np.arange(1 << m, dtype=np.int64)
    indeg = np.zeros((1 << m, g.n), dtype=np.int16)
    # bit (m-1-j) encodes edge j so that integer order == lex order on bits
    for j, (u, v) in enumerate(g.edges):
        bits = (masks >> (m - 1 - j)) & 1
        indeg[:, v] += (1 - bits).astype(np.int16)
        indeg[:, u] += bits.astype(np.int16)
    table = np.zeros(g.n + 1)
    for r in range(2, g.n + 1):
        table[r] = r * math.log2(r)
    h = math.log2(m) - table[indeg].sum(axis=1) / m
    best = int(np.where(h <= h.min() + 1e-12)[0][0])
    direction = []
    for j, (u, v) in enumerate(g.edges):
        bit = (best >> (m - 1 - j)) & 1
        direction.append((v, u) if bit else (u, v))
    return Orientation.from_directions(g, direction)


def sample_count(epsilon: float, delta: float, max_degree: int) -> int:
    """Samples needed so Hoeffding's bound 2 exp(-2 s eps^2 / B^2) <= delta,
    with B = max(Delta log2 Delta, 1) the range of rho*log rho."""
    if epsilon <= 0 or not 0 < delta < 1:
        raise ValidationError("need epsilon > 0 and delta in (0,1)")
    if max_degree < 1:
        raise ValidationError("max degree must be >= 1")
    b = max(max_degree * math.log2(max_degree), 1.0)
    return math.ceil(b * b / (2 * epsilon * epsilon) * math.log(2 / delta))


def local_indegree(g: Graph, v: int, pos: Sequence[int]) -> int:
    """Indegree of v in the preferred biased orientation, computed from v's
    neighborhood only (each neighbor's degree is read off its adjacency)."""
    return sum(1 for w in g.neighbors(v) if _edge_head(g, v, w, pos) == v)


def estimate_entropy(g: Graph, p: EstimatorParams, one_sided: bool = False,
                     full_sweep: bool = False) -> float:
    """Sampling estimate of the entropy of the preferred biased orientation:
    H = log2 m - (n/(s m)) * sum_i rho(v_i) log2 rho(v_i), with vertices
    sampled uniformly with replacement. `full_sweep` visits every vertex
    exactly once instead, making the estimate exact. The one-sided variant
    returns H + epsilon."""
    n, m = g.n, g.m
    if m < n or n < 1:
        raise ValidationError("estimator requires at least as many edges as vertices")
    pos = list(range(n))
    if full_sweep:
        samples = list(range(n))
    else:
        s = p.s if p.s is not None else sample_count(p.epsilon, p.delta, g.max_degree())
        rng = random.Random(p.seed)
        samples = [rng.randrange(n) for _ in range(s)]
    acc = math.fsum(
        rho * math.log2(rho)
        for rho in (local_indegree(g, v, pos) for v in samples) if rho
    )
    h = math.log2(m) - (n / (len(samples) * m)) * acc
    return h + p.epsilon if one_sided else h
