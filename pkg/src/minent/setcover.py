"""Minimum entropy set cover: greedy algorithm, exact oracle, and the
closed-form dual-fitting certificate behind the log2(e) additive guarantee."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .core import (BudgetError, FeasibilityError, SetSystem, ValidationError,
                   entropy_of_counts)

LOG2_E = math.log2(math.e)


@dataclass(frozen=True)
class CoverAssignment:
    """Per-element set choice phi(x) with the induced per-set cover counts."""

    assignment: tuple[int, ...]
    induced_counts: tuple[int, ...]

    @staticmethod
    def from_assignment(s: SetSystem, assignment) -> "CoverAssignment":
        assignment = tuple(assignment)
        if len(assignment) != s.universe_size:
            raise FeasibilityError("assignment must cover every element")
        counts = [0] * s.k
        for x, i in enumerate(assignment):
            if not (0 <= i < s.k) or x not in s.sets[i]:
                raise FeasibilityError(f"element {x} assigned to set {i} not containing it")
            counts[i] += 1
        return CoverAssignment(assignment, tuple(counts))


@dataclass(frozen=True)
class GreedyTrace:
    """Greedy rounds: (chosen set index, elements newly covered that round)."""

    rounds: tuple[tuple[int, frozenset], ...]


@dataclass(frozen=True)
class DualCertificate:
    """Per-element dual values y_v with the greedy entropy g; by construction
    sum(y) = g - log2(e)."""

    y: tuple[float, ...]
    greedy_entropy: float


def cover_entropy(s: SetSystem, a: CoverAssignment) -> float:
    """Entropy (bits) of the part-size distribution induced by an assignment."""
    _check_assignment(s, a)
    return entropy_of_counts(a.induced_counts)


def likelihood(s: SetSystem, a: CoverAssignment) -> float:
    """log2 of prod_i p_i^{count_i}; equals -n * entropy of the assignment."""
    _check_assignment(s, a)
    n = s.universe_size
    return math.fsum(c * math.log2(c / n) for c in a.induced_counts if c)


def _check_assignment(s: SetSystem, a: CoverAssignment) -> None:
    if len(a.assignment) != s.universe_size:
        raise FeasibilityError("assignment length mismatch")
    counts = [0] * s.k
    for x, i in enumerate(a.assignment):
        if not (0 <= i < s.k) or x not in s.sets[i]:
            raise FeasibilityError(f"element {x} not in assigned set {i}")
        counts[i] += 1
    if tuple(counts) != a.induced_counts:
        raise FeasibilityError("induced_counts inconsistent with assignment")


def greedy_cover(s: SetSystem) -> tuple[CoverAssignment, GreedyTrace]:
    """Repeatedly pick the set covering the most uncovered elements (ties to
    the lowest set index) and assign the newly covered elements to it."""
    uncovered = set(range(s.universe_size))
    assignment = [-1] * s.universe_size
    rounds = []
    members = [set(t) for t in s.sets]
    while uncovered:
        best_i, best_new = -1, None
        for i, mem in enumerate(members):
            new = mem & uncovered
            if best_new is None or len(new) > len(best_new):
                best_i, best_new = i, new
        if not best_new:
            raise ValidationError("instance is not coverable")
        for x in best_new:
            assignment[x] = best_i
        uncovered -= best_new
        rounds.append((best_i, frozenset(best_new)))
    cover = CoverAssignment.from_assignment(s, assignment)
    return cover, GreedyTrace(tuple(rounds))


def exact_cover(s: SetSystem, limit: int = 10 ** 7) -> CoverAssignment:
    """Minimum-entropy assignment by exhaustive enumeration of per-element
    set choices. Returns the lexicographically smallest optimal assignment."""
    n = s.universe_size
    choices = [s.sets_containing(x) for x in range(n)]
    space = 1
    for c in choices:
        space *= len(c)
        if space > limit:
            raise BudgetError(
                f"instance too large for oracle: >{limit} assignment combinations")

    counts = [0] * s.k
    assignment = [-1] * n
    best = {"H": math.inf, "assignment": None}
    ent_cache: dict[tuple[int, ...], float] = {}

    def leaf_entropy() -> float:
        key = tuple(sorted(c for c in counts if c))
        h = ent_cache.get(key)
        if h is None:
            h = entropy_of_counts(key)
            ent_cache[key] = h
        return h

    def recurse(x: int) -> None:
        if x == n:
            h = leaf_entropy()
            if h < best["H"] - 1e-12:
                best["H"] = h
                best["assignment"] = tuple(assignment)
            return
        for i in choices[x]:
            assignment[x] = i
            counts[i] += 1
            recurse(x + 1)
            counts[i] -= 1
        assignment[x] = -1

    recurse(0)
    return CoverAssignment.from_assignment(s, best["assignment"])


def dual_certificate(s: SetSystem, t: GreedyTrace) -> DualCertificate:
    """Closed-form dual values y_v = -(1/n) log2(|S_i| e / n) where S_i is
    the greedy round covering v."""
    n = s.universe_size
    covered = [False] * n
    y = [0.0] * n
    g_terms = []
    for set_idx, new in t.rounds:
        if not new or not new <= set(s.sets[set_idx]):
            raise FeasibilityError("trace round inconsistent with set system")
        size = len(new)
        g_terms.append(-(size / n) * math.log2(size / n))
        for v in new:
            if covered[v]:
                raise FeasibilityError(f"element {v} covered twice in trace")
            covered[v] = True
            y[v] = -(1.0 / n) * math.log2(size * math.e / n)
    if not all(covered):
        raise FeasibilityError("trace does not cover the universe")
    return DualCertificate(tuple(y), math.fsum(g_terms))


@dataclass(frozen=True)
class FeasibilityReport:
    checked: int
    violations: tuple


def verify_dual_feasibility(s: SetSystem, c: DualCertificate,
                            subset_budget: int = 1 << 20,
                            seed: int = 0) -> FeasibilityReport:
    """Check the dual constraint sum_{v in S} y_v <= -(|S|/n) log2(|S|/n)
    over subsets of the input sets. Exhaustive when sum_i 2^{|S_i|} fits in
    the budget; otherwise exhaustive for sets with <= 20 elements plus
    random subsets of larger ones."""
    n = s.universe_size
    y = c.y
    total = sum(1 << len(t) for t in s.sets)
    exhaustive = total <= subset_budget
    rng = random.Random(seed)
    checked = 0
    violations = []

    def check(subset: tuple[int, ...]) -> None:
        nonlocal checked
        checked += 1
        size = len(subset)
        lhs = math.fsum(y[v] for v in subset)
        rhs = 0.0 if size == 0 else -(size / n) * math.log2(size / n)
        if lhs > rhs + 1e-9:
            violations.append({"subset": subset, "lhs": lhs, "rhs": rhs})

    for members in s.sets:
        k = len(members)
        if exhaustive or k <= 20:
            for mask in range(1 << k):
                check(tuple(members[j] for j in range(k) if mask >> j & 1))
        else:
            for _ in range(subset_budget):
                check(tuple(v for v in members if rng.random() < 0.5))
    return FeasibilityReport(checked, tuple(violations))
