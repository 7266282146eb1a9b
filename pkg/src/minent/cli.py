"""`minent` command-line interface: one subcommand per solver, JSON reports."""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time

from . import apps, coloring, graphent, io as mio, orientation, setcover
from .core import BudgetError, FeasibilityError, ValidationError, interval_graph
from .graphent import ConvergenceError


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _read(path: str) -> str:
    with open(path) as f:
        return f.read()


def _load_graph_like(text: str):
    """A graph file, or an intervals file converted to its intersection graph."""
    head = text.split(None, 1)[0] if text.split() else ""
    if head == "intervals":
        return interval_graph(mio.parse_intervals(text))
    return mio.parse_graph(text)


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True))
        return
    for key in sorted(report):
        if key in ("command", "input_digest"):
            continue
        print(f"{key}: {report[key]}")


def _base_report(args, text: str) -> dict:
    return {
        "command": " ".join(sys.argv[1:]) if sys.argv[1:] else "",
        "input_digest": _digest(text),
        "seed": getattr(args, "seed", 0),
    }


def _cmd_setcover(args) -> tuple[dict, dict]:
    text = _read(args.input)
    system = mio.parse_setcover(text)
    report = _base_report(args, text)
    checks: dict[str, bool] = {}
    if args.action == "greedy":
        cover, trace = setcover.greedy_cover(system)
        report.update(entropy_bits=setcover.cover_entropy(system, cover),
                      counts=list(cover.induced_counts),
                      assignment=list(cover.assignment),
                      rounds=[[i, sorted(s)] for i, s in trace.rounds])
    elif args.action == "exact":
        cover = setcover.exact_cover(system)
        report.update(entropy_bits=setcover.cover_entropy(system, cover),
                      counts=list(cover.induced_counts),
                      assignment=list(cover.assignment))
    else:  # certify
        cover, trace = setcover.greedy_cover(system)
        cert = setcover.dual_certificate(system, trace)
        fr = setcover.verify_dual_feasibility(system, cert, seed=args.seed)
        sum_y = math.fsum(cert.y)
        report.update(entropy_bits=setcover.cover_entropy(system, cover),
                      counts=list(cover.induced_counts),
                      certificate={"y": list(cert.y), "sum_y": sum_y,
                                   "g": cert.greedy_entropy},
                      checked=fr.checked,
                      violations=[v["subset"] for v in fr.violations])
        checks["dual_feasible"] = not fr.violations
        checks["dual_identity"] = abs(sum_y - (cert.greedy_entropy - setcover.LOG2_E)) <= 1e-9
    return report, checks


def _cmd_orient(args) -> tuple[dict, dict]:
    text = _read(args.input)
    g = _load_graph_like(text)
    report = _base_report(args, text)
    checks: dict[str, bool] = {}
    if args.action == "biased":
        o = orientation.biased_orientation(g)
        report.update(entropy_bits=orientation.orientation_entropy(g, o),
                      indegrees=list(o.indegrees),
                      direction=[list(d) for d in o.direction])
    elif args.action == "exact":
        o = orientation.exact_orientation(g)
        report.update(entropy_bits=orientation.orientation_entropy(g, o),
                      indegrees=list(o.indegrees),
                      direction=[list(d) for d in o.direction])
    else:  # estimate
        params = orientation.EstimatorParams(args.epsilon, args.delta, args.seed)
        s = orientation.sample_count(args.epsilon, args.delta, g.max_degree())
        h = orientation.estimate_entropy(g, params, one_sided=args.one_sided)
        report.update(H=h, s=s, epsilon=args.epsilon, delta=args.delta)
    return report, checks


def _cmd_color(args) -> tuple[dict, dict]:
    text = _read(args.input)
    report = _base_report(args, text)
    checks: dict[str, bool] = {}
    if args.action == "interval":
        iv = mio.parse_intervals(text)
        g = interval_graph(iv)
        col, layers = coloring.interval_mec(iv)
        h = coloring.coloring_entropy(g, col)
        report.update(entropy_bits=h,
                      classes=col.canonical().classes(),
                      layers=[list(s) for s in layers.layers],
                      lower_bound_H=layers.lower_bound_H)
        checks["within_one_bit"] = h <= layers.lower_bound_H + 1.0 + 1e-9
        return report, checks
    g = _load_graph_like(text)
    if args.action == "greedy":
        col = coloring.greedy_coloring(g, oracle="exact")
    elif args.action == "greedy-approx":
        col = coloring.greedy_coloring(g, oracle="approx")
    else:  # exact
        col = coloring.exact_coloring(g)
    report.update(entropy_bits=coloring.coloring_entropy(g, col),
                  classes=col.canonical().classes())
    return report, checks


def _cmd_graphent(args) -> tuple[dict, dict]:
    text = _read(args.input)
    g = _load_graph_like(text)
    report = _base_report(args, text)
    checks: dict[str, bool] = {}
    if args.action == "compute":
        h, w = graphent.graph_entropy(g, tol=args.tol)
        report.update(H_bits=h,
                      marginals=list(w.p),
                      support=[list(s) for s, q in zip(w.sets, w.q) if q > 1e-12])
    elif args.action == "split":
        gap = graphent.splitting_gap(g, tol=args.tol)
        report.update(gap_bits=gap)
        checks["splits_entropy"] = abs(gap) <= 2 * args.tol
    else:  # greedy-bound
        rep = graphent.greedy_vs_entropy(g, constant=args.constant, tol=args.tol)
        report.update(g_bits=rep.g_bits, H_bits=rep.H_bits, bound_rhs=rep.bound_rhs)
        if rep.chromatic_entropy is not None:
            report["chromatic_entropy"] = rep.chromatic_entropy
        checks["greedy_bound"] = rep.bound_holds
        if rep.chain_ok is not None:
            checks["relaxation_chain"] = rep.chain_ok
    return report, checks


def _cmd_gen(args) -> tuple[dict, dict]:
    if args.action == "jk":
        print(mio.serialize_intervals(coloring.gen_jk(args.k)), end="")
        return {}, {}
    inst = mio.gen_random(args.kind, seed=args.seed, n=args.n, m=args.m,
                          k=args.k, delta=args.delta)
    if args.kind in ("graph", "regular"):
        print(mio.serialize_graph(inst), end="")
    elif args.kind == "interval":
        print(mio.serialize_intervals(inst), end="")
    else:
        print(mio.serialize_setcover(inst), end="")
    return {}, {}


def _cmd_app(args) -> tuple[dict, dict]:
    text = _read(args.input)
    report = _base_report(args, text)
    checks: dict[str, bool] = {}
    if args.action == "haplotype":
        panel = mio.parse_genotypes(text)
        system, labels = apps.haplotype_instance(panel)
        cover, _ = setcover.greedy_cover(system)
        report.update(entropy_bits=setcover.cover_entropy(system, cover),
                      haplotypes=labels,
                      assignment=[labels[i] for i in cover.assignment],
                      log_likelihood=setcover.likelihood(system, cover))
    else:  # confusability
        table = mio.parse_joint_table(text)
        g = apps.confusability_graph(table)
        col = (coloring.exact_coloring(g) if args.color == "exact"
               else coloring.greedy_coloring(g))
        report.update(edges=[[table.x_labels[u], table.x_labels[v]] for u, v in g.edges],
                      marginals=list(g.weights),
                      classes=[[table.x_labels[v] for v in cls]
                               for cls in col.canonical().classes()],
                      rate_bits=apps.code_rate(g, col))
    return report, checks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minent",
        description="Minimum entropy combinatorial optimization solvers")
    sub = parser.add_subparsers(dest="group", required=True)

    def common(p, tol=False):
        p.add_argument("--input", required=True)
        p.add_argument("--json", action="store_true")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--assert-bound", action="store_true", dest="assert_bound")
        if tol:
            p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("setcover")
    p.add_argument("action", choices=["greedy", "exact", "certify"])
    common(p)

    p = sub.add_parser("orient")
    p.add_argument("action", choices=["biased", "exact", "estimate"])
    common(p)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--one-sided", action="store_true", dest="one_sided")

    p = sub.add_parser("color")
    p.add_argument("action", choices=["greedy", "greedy-approx", "interval", "exact"])
    common(p)

    p = sub.add_parser("graphent")
    p.add_argument("action", choices=["compute", "split", "greedy-bound"])
    common(p, tol=True)
    p.add_argument("--constant", type=float, default=4.0)

    p = sub.add_parser("gen")
    p.add_argument("action", choices=["jk", "random"])
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--kind", choices=["graph", "interval", "setcover", "regular"],
                   default="graph")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("app")
    p.add_argument("action", choices=["haplotype", "confusability"])
    common(p)
    p.add_argument("--color", choices=["greedy", "exact"], default="greedy")

    return parser


_HANDLERS = {
    "setcover": _cmd_setcover,
    "orient": _cmd_orient,
    "color": _cmd_color,
    "graphent": _cmd_graphent,
    "gen": _cmd_gen,
    "app": _cmd_app,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report, checks = _HANDLERS[args.group](args)
    except (mio.ParseError, ValidationError, FeasibilityError, BudgetError,
            ConvergenceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not report:
        return 0
    report["checks"] = checks
    report["timing_ms"] = (time.perf_counter() - start) * 1000.0
    _emit(report, args.json)
    if getattr(args, "assert_bound", False) and not all(checks.values()):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
