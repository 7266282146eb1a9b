"""Text formats for graphs, set systems, and interval sets, plus seeded
random instance generators used by the test suites and the CLI."""

from __future__ import annotations

import csv
import io as _io
import random
from fractions import Fraction

from .core import Graph, IntervalSet, SetSystem, ValidationError
from .apps import GenotypePanel, JointTable


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _lines(text: str) -> list[tuple[int, str]]:
    return [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())
            if ln.strip()]


def parse_graph(text: str) -> Graph:
    """Format: `graph <n> <m>`, m lines `<u> <v>`, optional trailing line
    `weights <w0> ... <w_{n-1}>`."""
    lines = _lines(text)
    if not lines or lines[0][1].split()[0] != "graph":
        raise ParseError("expected header 'graph <n> <m>'", lines[0][0] if lines else 1)
    ln, header = lines[0]
    parts = header.split()
    if len(parts) != 3:
        raise ParseError("expected header 'graph <n> <m>'", ln)
    try:
        n, m = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError("non-integer graph header", ln)
    edges = []
    weights = None
    body = lines[1:]
    if len(body) not in (m, m + 1):
        raise ParseError(f"expected {m} edge lines", ln)
    for i in range(m):
        eln, raw = body[i]
        toks = raw.split()
        if len(toks) != 2:
            raise ParseError("expected '<u> <v>'", eln)
        try:
            edges.append((int(toks[0]), int(toks[1])))
        except ValueError:
            raise ParseError("non-integer vertex id", eln)
    if len(body) == m + 1:
        wln, raw = body[m]
        toks = raw.split()
        if toks[0] != "weights" or len(toks) != n + 1:
            raise ParseError(f"expected 'weights' line with {n} reals", wln)
        weights = [float(t) for t in toks[1:]]
    try:
        return Graph(n, edges, weights)
    except ValidationError as exc:
        raise ParseError(str(exc), ln)


def serialize_graph(g: Graph) -> str:
    out = [f"graph {g.n} {g.m}"]
    out += [f"{u} {v}" for (u, v) in g.edges]
    if g.weights is not None:
        out.append("weights " + " ".join(repr(w) for w in g.weights))
    return "\n".join(out) + "\n"


def parse_setcover(text: str) -> SetSystem:
    """Format: `setcover <n> <k>`, then k lines of space-separated element ids."""
    lines = _lines(text)
    if not lines or lines[0][1].split()[0] != "setcover":
        raise ParseError("expected header 'setcover <n> <k>'", lines[0][0] if lines else 1)
    ln, header = lines[0]
    parts = header.split()
    if len(parts) != 3:
        raise ParseError("expected header 'setcover <n> <k>'", ln)
    n, k = int(parts[1]), int(parts[2])
    if len(lines) != k + 1:
        raise ParseError(f"expected {k} set lines", ln)
    sets = []
    for sln, raw in lines[1:]:
        try:
            sets.append([int(t) for t in raw.split()])
        except ValueError:
            raise ParseError("non-integer element id", sln)
    try:
        return SetSystem(n, sets)
    except ValidationError as exc:
        raise ParseError(str(exc), ln)


def serialize_setcover(s: SetSystem) -> str:
    out = [f"setcover {s.universe_size} {s.k}"]
    out += [" ".join(str(x) for x in members) for members in s.sets]
    return "\n".join(out) + "\n"


def _parse_rational(tok: str, ln: int) -> Fraction:
    try:
        if "/" in tok:
            num, den = tok.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", ln)


def parse_intervals(text: str) -> IntervalSet:
    """Format: `intervals <n>`, then n lines `<lo_num>/<lo_den> <hi_num>/<hi_den>`."""
    lines = _lines(text)
    if not lines or lines[0][1].split()[0] != "intervals":
        raise ParseError("expected header 'intervals <n>'", lines[0][0] if lines else 1)
    ln, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("expected header 'intervals <n>'", ln)
    n = int(parts[1])
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} interval lines", ln)
    ivs = []
    for iln, raw in lines[1:]:
        toks = raw.split()
        if len(toks) != 2:
            raise ParseError("expected '<lo> <hi>'", iln)
        ivs.append((_parse_rational(toks[0], iln), _parse_rational(toks[1], iln)))
    try:
        return IntervalSet(ivs)
    except ValidationError as exc:
        raise ParseError(str(exc), ln)


def serialize_intervals(iv: IntervalSet) -> str:
    out = [f"intervals {len(iv)}"]
    for (lo, hi) in iv.intervals:
        out.append(f"{lo.numerator}/{lo.denominator} {hi.numerator}/{hi.denominator}")
    return "\n".join(out) + "\n"


def parse_genotypes(text: str) -> GenotypePanel:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty genotype file", 1)
    try:
        return GenotypePanel(raw for _, raw in lines)
    except ValidationError as exc:
        raise ParseError(str(exc), lines[0][0])


def parse_joint_table(text: str) -> JointTable:
    """CSV with a header row of y labels; each further row starts with the
    x label followed by the joint probabilities."""
    rows = [r for r in csv.reader(_io.StringIO(text)) if any(c.strip() for c in r)]
    if len(rows) < 2:
        raise ParseError("joint table needs a header row and one data row", 1)
    y_labels = [c.strip() for c in rows[0][1:]]
    x_labels = []
    probs = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(y_labels) + 1:
            raise ParseError("row width mismatch", i)
        x_labels.append(row[0].strip())
        try:
            probs.append([float(c) for c in row[1:]])
        except ValueError:
            raise ParseError("non-numeric probability", i)
    try:
        return JointTable(x_labels, y_labels, probs)
    except ValidationError as exc:
        raise ParseError(str(exc), 1)


# ---------------------------------------------------------------------------
# seeded random generators


def random_graph(n: int, m: int, seed: int = 0) -> Graph:
    if m > n * (n - 1) // 2:
        raise ValidationError("too many edges requested")
    rng = random.Random(seed)
    all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph(n, rng.sample(all_edges, m))


def random_connected_graph(n: int, m: int, seed: int = 0) -> Graph:
    """Random tree plus extra random edges; m >= n-1 required."""
    if m < n - 1 or m > n * (n - 1) // 2:
        raise ValidationError("edge count incompatible with connectivity")
    rng = random.Random(seed)
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    rest = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    edges.update(rng.sample(rest, m - len(edges)))
    return Graph(n, sorted(edges))


def random_regular_graph(n: int, d: int, seed: int = 0, max_tries: int = 10_000) -> Graph:
    """Pairing-model d-regular graph, rejecting pairings with loops or
    repeated edges."""
    if n * d % 2 != 0 or d >= n:
        raise ValidationError("need n*d even and d < n")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph(n, sorted(edges))
    raise ValidationError("pairing model failed to produce a simple graph")


def random_intervals(n: int, seed: int = 0, grid: int = 0) -> IntervalSet:
    """Intervals with rational endpoints on a uniform grid over [0, 1]."""
    rng = random.Random(seed)
    denom = grid if grid > 0 else max(2 * n, 8)
    ivs = []
    for _ in range(n):
        a, b = rng.sample(range(denom + 1), 2)
        lo, hi = min(a, b), max(a, b)
        ivs.append((Fraction(lo, denom), Fraction(hi, denom)))
    return IntervalSet(ivs)


def random_setcover(n: int, k: int, seed: int = 0, max_tries: int = 10_000) -> SetSystem:
    """k uniformly random nonempty subsets of [0, n); resampled until every
    element is covered."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        sets = []
        for _ in range(k):
            members = [x for x in range(n) if rng.random() < 0.5]
            if not members:
                members = [rng.randrange(n)]
            sets.append(members)
        if set().union(*map(set, sets)) == set(range(n)):
            return SetSystem(n, sets)
    raise ValidationError("failed to generate a covering instance")


def random_bipartite_graph(n: int, seed: int = 0, p: float = 0.5) -> Graph:
    rng = random.Random(seed)
    split = rng.randrange(1, n) if n > 1 else 1
    edges = [(u, v) for u in range(split) for v in range(split, n)
             if rng.random() < p]
    return Graph(n, edges)


def gen_random(kind: str, seed: int = 0, **params):
    """Dispatch for the CLI `gen random` command."""
    if kind == "graph":
        return random_graph(params["n"], params["m"], seed)
    if kind == "regular":
        return random_regular_graph(params["n"], params["delta"], seed)
    if kind == "interval":
        return random_intervals(params["n"], seed)
    if kind == "setcover":
        return random_setcover(params["n"], params["k"], seed)
    raise ValidationError(f"unknown instance kind {kind!r}")
