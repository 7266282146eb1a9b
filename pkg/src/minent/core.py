"""Shared substrate: graphs, set systems, distributions, entropy, dominance."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

WEIGHT_TOL = 1e-9


class ValidationError(ValueError):
    """Raised when a domain object violates its invariants."""


class FeasibilityError(ValueError):
    """Raised when a purported solution is infeasible for its instance."""


class BudgetError(RuntimeError):
    """Raised when an exact oracle would exceed its enumeration budget."""


def _xlog2x(x: float) -> float:
    return 0.0 if x == 0 else x * math.log2(x)


class Graph:
    """Immutable undirected simple graph with optional vertex weights.

    Edges are stored as sorted (u, v) pairs with u < v; adjacency lists are
    precomputed and sorted so solvers get O(deg) neighborhood scans.
    """

    __slots__ = ("n", "edges", "weights", "_adj")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]],
                 weights: Optional[Sequence[float]] = None):
        if n < 0:
            raise ValidationError("vertex count must be nonnegative")
        norm = []
        seen = set()
        for (u, v) in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u},{v}) out of range [0,{n})")
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValidationError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        self.n = n
        self.edges = tuple(norm)
        if weights is not None:
            weights = tuple(float(w) for w in weights)
            if len(weights) != n:
                raise ValidationError("need one weight per vertex")
            if any(w < 0 for w in weights):
                raise ValidationError("negative vertex weight")
            if abs(sum(weights) - 1.0) > WEIGHT_TOL:
                raise ValidationError("vertex weights must sum to 1")
        self.weights = weights
        adj = [[] for _ in range(n)]
        for (u, v) in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def complement(self) -> "Graph":
        present = set(self.edges)
        edges = [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                 if (u, v) not in present]
        return Graph(self.n, edges, self.weights)

    def is_independent_set(self, vertices) -> bool:
        s = set(vertices)
        return all(not (u in s and v in s) for (u, v) in self.edges)

    def is_proper_coloring(self, colors: Sequence[int]) -> bool:
        if len(colors) != self.n:
            return False
        return all(colors[u] != colors[v] for (u, v) in self.edges)

    def adjacency_masks(self) -> list[int]:
        """Per-vertex neighbor bitmasks (bit i set iff i adjacent)."""
        masks = [0] * self.n
        for (u, v) in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and self.edges == other.edges and self.weights == other.weights)

    def __hash__(self):
        return hash((self.n, self.edges, self.weights))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class SetSystem:
    """A ground set {0..universe_size-1} plus a collection of subsets."""

    __slots__ = ("universe_size", "sets")

    def __init__(self, universe_size: int, sets: Sequence[Sequence[int]]):
        if universe_size < 1:
            raise ValidationError("universe must be nonempty")
        covered = set()
        norm = []
        for idx, s in enumerate(sets):
            members = tuple(sorted(s))
            if len(set(members)) != len(members):
                raise ValidationError(f"set {idx} has duplicate members")
            for x in members:
                if not (0 <= x < universe_size):
                    raise ValidationError(f"set {idx}: element {x} out of range")
            covered.update(members)
            norm.append(members)
        if covered != set(range(universe_size)):
            missing = sorted(set(range(universe_size)) - covered)
            raise ValidationError(f"elements {missing} are not covered by any set")
        self.universe_size = universe_size
        self.sets = tuple(norm)

    @property
    def k(self) -> int:
        return len(self.sets)

    def sets_containing(self, x: int) -> list[int]:
        return [i for i, s in enumerate(self.sets) if x in s]

    def __eq__(self, other):
        return (isinstance(other, SetSystem)
                and self.universe_size == other.universe_size
                and self.sets == other.sets)

    def __repr__(self):
        return f"SetSystem(n={self.universe_size}, k={self.k})"


@dataclass(frozen=True)
class Distribution:
    """Finite nonnegative vector summing to 1. Entries may be Fractions,
    in which case comparisons (dominance) are exact."""

    probs: tuple

    def __init__(self, probs):
        probs = tuple(probs)
        if not probs:
            raise ValidationError("empty distribution")
        for p in probs:
            if p < 0:
                raise ValidationError(f"negative probability {p}")
        total = sum(probs)
        if isinstance(total, Fraction) or isinstance(total, int):
            if total != 1:
                raise ValidationError(f"probabilities sum to {total}, not 1")
        elif abs(total - 1.0) > WEIGHT_TOL:
            raise ValidationError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "probs", probs)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(p, (Fraction, int)) for p in self.probs)

    def __len__(self):
        return len(self.probs)


def entropy(d: Distribution) -> float:
    """Shannon entropy in bits; 0*log 0 := 0."""
    return -math.fsum(_xlog2x(float(p)) for p in d.probs)


def entropy_of_counts(counts: Sequence[int]) -> float:
    """Entropy of the normalized count vector, computed as
    log2(total) - (1/total) * sum c*log2(c)."""
    total = sum(counts)
    if total <= 0:
        raise ValidationError("counts must have positive total")
    return math.log2(total) - math.fsum(_xlog2x(c) for c in counts if c) / total


def counts_to_distribution(counts: Sequence[int]) -> Distribution:
    """Normalize integer counts into an exact-rational distribution.

    Zero counts are retained as zero entries."""
    counts = list(counts)
    if any(c < 0 for c in counts):
        raise ValidationError("negative count")
    total = sum(counts)
    if total == 0:
        raise ValidationError("all counts are zero")
    return Distribution(Fraction(c, total) for c in counts)


def dominates(r: Distribution, q: Distribution) -> bool:
    """True iff q is dominated by r: every prefix sum of q is <= the
    corresponding prefix sum of r. Exact when both sides are rational."""
    exact = r.is_exact and q.is_exact
    slack = 0 if exact else 1e-12
    rp = list(r.probs) + [0] * max(0, len(q) - len(r))
    qp = list(q.probs) + [0] * max(0, len(r) - len(q))
    r_acc = q_acc = 0
    for rv, qv in zip(rp, qp):
        r_acc += rv
        q_acc += qv
        if q_acc > r_acc + slack:
            return False
    return True


@dataclass(frozen=True)
class IntervalSet:
    """Open intervals with exact rational endpoints."""

    intervals: tuple

    def __init__(self, intervals):
        norm = []
        for (lo, hi) in intervals:
            lo = Fraction(lo)
            hi = Fraction(hi)
            if not lo < hi:
                raise ValidationError(f"interval ({lo},{hi}) is empty")
            norm.append((lo, hi))
        object.__setattr__(self, "intervals", tuple(norm))

    def __len__(self):
        return len(self.intervals)


def intervals_intersect(a: tuple[Fraction, Fraction],
                        b: tuple[Fraction, Fraction]) -> bool:
    """Open-interval intersection: touching endpoints do NOT intersect."""
    return max(a[0], b[0]) < min(a[1], b[1])


def interval_graph(iv: IntervalSet) -> Graph:
    """Intersection graph of an interval set (open-interval convention)."""
    ivs = iv.intervals
    n = len(ivs)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if intervals_intersect(ivs[i], ivs[j])]
    return Graph(n, edges)


def max_point_depth(intervals: Sequence[tuple[Fraction, Fraction]]) -> int:
    """Maximum number of open intervals sharing a common point.

    Equals the clique number of the corresponding interval graph. Closing
    events are processed before opening events at equal coordinates so that
    touching intervals do not count as overlapping."""
    events = []
    for (lo, hi) in intervals:
        events.append((lo, 1, 1))   # open after closes at same coord
        events.append((hi, 0, -1))
    events.sort(key=lambda e: (e[0], e[1]))
    depth = best = 0
    for _, _, delta in events:
        depth += delta
        best = max(best, depth)
    return best
