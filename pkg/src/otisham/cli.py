"""Command line front end.

Exit codes: 0 success / verdict obtained, 2 inconclusive (budget),
3 verification mismatch, 4 usage error.  ``--json`` output is
byte-identical across runs for identical inputs, budgets and seed;
timings are printed only in human-readable mode.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections import Counter

from . import __version__
from .constructive import (
    FailureReport,
    UNSUPPORTED_CLASS,
    build_ham_cycle,
    classify,
    key_edges,
)
from .engine import (
    EdgeAssignment,
    HAMILTONIAN,
    INCONCLUSIVE,
    NON_HAMILTONIAN,
    SearchBudget,
    counting_refutation,
    decide,
)
from .graph import Graph, GraphError, cycle_violation, graph_hash
from .io import read_cycle_certificate, read_edge_list, to_dot, write_edge_list
from .topology import (
    BowtieParams,
    gen_bowtie,
    gen_butterfly,
    gen_complete,
    gen_cycle,
    gen_path,
    otis,
    otis_label,
)
from .trees import build_ists, independence_report

EXIT_OK = 0
EXIT_INCONCLUSIVE = 2
EXIT_MISMATCH = 3
EXIT_USAGE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return read_edge_list(fh.read())


def _emit(args, payload: dict, wall_ms: float) -> None:
    if args.json:
        payload = dict(payload)
        payload["version"] = __version__
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
        print(f"wall_ms: {wall_ms:.1f}")


def _write_graph(graph: Graph, out: str | None, dot: bool) -> None:
    text = to_dot(graph, group_clusters=True) if dot else write_edge_list(graph)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> SearchBudget:
    return SearchBudget(
        max_nodes=getattr(args, "budget_nodes", None) or 10_000_000,
        max_seconds=getattr(args, "budget_secs", None) or 600.0,
    )


def cmd_gen(args) -> int:
    def usage(flag):
        print(f"error: gen {args.family} requires {flag}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.family == "bowtie":
            if args.m is None or args.n is None:
                return usage("--m and --n")
            graph = gen_bowtie(args.m, args.n)
        elif args.family == "butterfly":
            if args.dim is None:
                return usage("--dim")
            graph = gen_butterfly(args.dim)
        else:
            if args.k is None:
                return usage("--k")
            gens = {"cycle": gen_cycle, "path": gen_path, "complete": gen_complete}
            graph = gens[args.family](args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_graph(graph, args.out, args.dot)
    return EXIT_OK


def cmd_otis(args) -> int:
    base = _read_graph(getattr(args, "in"))
    _write_graph(otis(base), args.out, args.dot)
    return EXIT_OK


def cmd_decide(args) -> int:
    t0 = time.perf_counter()
    graph = _read_graph(getattr(args, "in"))
    seed = None
    if args.seed:
        with open(args.seed, encoding="utf-8") as fh:
            directives = json.load(fh)
        seed = EdgeAssignment.for_graph(graph)
        for u, v in directives.get("forced", []):
            seed.seed_force(u, v)
        for u, v in directives.get("deleted", []):
            seed.seed_delete(u, v)
    verdict = decide(graph, seed=seed, budget=_budget(args))
    payload = {
        "verdict": verdict.status,
        "witness": list(verdict.cycle.order) if verdict.cycle else None,
        "nodes": verdict.nodes,
        "depth": verdict.max_depth,
        "input_hash": graph_hash(graph),
    }
    _emit(args, payload, (time.perf_counter() - t0) * 1e3)
    return EXIT_INCONCLUSIVE if verdict.status == INCONCLUSIVE else EXIT_OK


def cmd_refute_count(args) -> int:
    t0 = time.perf_counter()
    graph = _read_graph(getattr(args, "in"))
    cert = counting_refutation(graph)
    if cert is None:
        payload = {"inconclusive": True, "input_hash": graph_hash(graph)}
        _emit(args, payload, (time.perf_counter() - t0) * 1e3)
        return EXIT_INCONCLUSIVE
    payload = {
        "edge_budget": cert.edge_budget,
        "high_degree_family": list(cert.high_degree_family),
        "family_bound": cert.family_bound,
        "independent_set": list(cert.independent_set),
        "independent_bound": cert.independent_bound,
        "total_bound": cert.total_bound,
        "verdict": NON_HAMILTONIAN,
        "input_hash": graph_hash(graph),
    }
    _emit(args, payload, (time.perf_counter() - t0) * 1e3)
    return EXIT_OK


def cmd_ham_build(args) -> int:
    t0 = time.perf_counter()
    if args.emit_key_edges:
        try:
            edges = key_edges(args.m, args.n)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MISMATCH
        payload = {
            "m": args.m,
            "n": args.n,
            "class": classify(args.m, args.n).value,
            "key_edges": [
                {"cluster": ke.cluster, "edge": [ke.a, ke.b], "tag": ke.tag} for ke in edges
            ],
        }
        _emit(args, payload, (time.perf_counter() - t0) * 1e3)
        return EXIT_OK
    result = build_ham_cycle(args.m, args.n, budget=_budget(args))
    if isinstance(result, FailureReport):
        payload = {
            "m": args.m,
            "n": args.n,
            "class": result.param_class.value,
            "failure": result.kind,
            "detail": result.detail,
        }
        _emit(args, payload, (time.perf_counter() - t0) * 1e3)
        return EXIT_OK if result.kind == UNSUPPORTED_CLASS else EXIT_MISMATCH
    if args.dot:
        _write_graph(result.graph, args.out, True)
        return EXIT_OK
    payload = {
        "m": args.m,
        "n": args.n,
        "class": result.param_class.value,
        "cycle": list(result.cycle.order),
        "verified": True,
        "steps": result.steps,
        "graph_hash": graph_hash(result.graph),
    }
    _emit(args, payload, (time.perf_counter() - t0) * 1e3)
    return EXIT_OK


def cmd_ist(args) -> int:
    t0 = time.perf_counter()
    with open(args.cycle, encoding="utf-8") as fh:
        cert = read_cycle_certificate(fh.read())
    graph = None
    if getattr(args, "in", None):
        graph = _read_graph(getattr(args, "in"))
        if graph_hash(graph) != cert["graph_hash"]:
            print("error: certificate does not match the supplied graph", file=sys.stderr)
            return EXIT_MISMATCH
    pair = build_ists(cert["order"], args.root)
    if graph is None:
        cycle_graph = Graph()
        for v in cert["order"]:
            cycle_graph.add_vertex(v)
        order = cert["order"]
        for k, u in enumerate(order):
            cycle_graph.add_edge(u, order[(k + 1) % len(order)])
        graph = cycle_graph
    report = independence_report(pair, graph)
    payload = {
        "root": pair.root,
        "t1": pair.parent1,
        "t2": pair.parent2,
        "independent": report.vertex_disjoint,
        "edge_disjoint": report.edge_disjoint,
    }
    _emit(args, payload, (time.perf_counter() - t0) * 1e3)
    return EXIT_OK if report.vertex_disjoint else EXIT_MISMATCH


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    graph = _read_graph(getattr(args, "in"))
    with open(args.cycle, encoding="utf-8") as fh:
        cert = read_cycle_certificate(fh.read())
    hash_ok = graph_hash(graph) == cert["graph_hash"]
    reason = cycle_violation(graph, cert["order"])
    payload = {
        "hash_match": hash_ok,
        "valid_cycle": reason is None,
        "reason": reason,
        "input_hash": graph_hash(graph),
    }
    _emit(args, payload, (time.perf_counter() - t0) * 1e3)
    return EXIT_OK if hash_ok and reason is None else EXIT_MISMATCH


def cmd_export(args) -> int:
    graph = _read_graph(getattr(args, "in"))
    _write_graph(graph, args.out, dot=True)
    return EXIT_OK


# expected values for the reproduction command (degree census keyed by degree)
_REPRO_EXPECT = {
    "vertices": 49,
    "edges": 77,
    "edge_budget": 28,
    "family_bound": 20,
    "independent_bound": 9,
    "total_bound": 29,
    "census": {2: 6, 3: 36, 4: 1, 5: 6},
    "degree5": ["1:4", "2:4", "3:4", "5:4", "6:4", "7:4"],
}


def reproduce_report(graph_44: Graph | None = None, graph_46: Graph | None = None) -> tuple[dict, list[str]]:
    """Recompute the headline counts; returns (report, mismatches)."""
    g44 = graph_44 if graph_44 is not None else otis(gen_bowtie(4, 4))
    g46 = graph_46 if graph_46 is not None else otis(gen_bowtie(4, 6))
    mismatches: list[str] = []
    census = Counter(g44.degree(v) for v in g44.vertices())
    cert = counting_refutation(g44)
    verdict_44 = decide(g44)
    verdict_46 = decide(g46)
    report = {
        "vertices": g44.n_vertices,
        "edges": g44.n_edges,
        "edge_budget": cert.edge_budget if cert else None,
        "family_bound": cert.family_bound if cert else None,
        "independent_bound": cert.independent_bound if cert else None,
        "total_bound": cert.total_bound if cert else None,
        "census": {str(k): v for k, v in sorted(census.items())},
        "degree5": sorted(v for v in g44.vertices() if g44.degree(v) == 5),
        "verdict_4_4": verdict_44.status,
        "verdict_4_6": verdict_46.status,
    }
    exp = _REPRO_EXPECT
    for key in ("vertices", "edges", "edge_budget", "family_bound", "independent_bound", "total_bound"):
        if report[key] != exp[key]:
            mismatches.append(f"{key}: expected {exp[key]}, got {report[key]}")
    if report["census"] != {str(k): v for k, v in exp["census"].items()}:
        mismatches.append(f"census: expected {exp['census']}, got {report['census']}")
    if report["degree5"] != exp["degree5"]:
        mismatches.append(f"degree5: expected {exp['degree5']}, got {report['degree5']}")
    for key in ("verdict_4_4", "verdict_4_6"):
        if report[key] != NON_HAMILTONIAN:
            mismatches.append(f"{key}: expected {NON_HAMILTONIAN}, got {report[key]}")
    return report, mismatches


def cmd_reproduce(args) -> int:
    t0 = time.perf_counter()
    report, mismatches = reproduce_report()
    payload = dict(report)
    payload["mismatches"] = mismatches
    payload["ok"] = not mismatches
    _emit(args, payload, (time.perf_counter() - t0) * 1e3)
    return EXIT_OK if not mismatches else EXIT_MISMATCH


def _sweep_pairs(max_base: int) -> list[tuple[int, int]]:
    pairs = []
    for a in range(3, max_base + 1):
        for b in range(a, max_base + 1):
            if a + b - 1 <= max_base:
                pairs.append((a, b))
    return pairs


def _sweep_one(mn, budget: SearchBudget) -> dict:
    m, n = mn
    p = BowtieParams.normalized(m, n)
    entry = {"m": p.m, "n": p.n, "class": classify(p.m, p.n).value}
    result = build_ham_cycle(p.m, p.n, budget=budget)
    if isinstance(result, FailureReport):
        entry["status"] = "unsupported" if result.kind == UNSUPPORTED_CLASS else "failed"
        entry["detail"] = result.detail
        return entry
    graph = result.graph
    roots = [graph.vertices()[0], otis_label(str(p.m), str(p.m)), graph.vertices()[-1]]
    independent = True
    for root in roots:
        pair = build_ists(result.cycle, root)
        if not independence_report(pair, graph).vertex_disjoint:
            independent = False
    entry.update(
        status="ok" if independent else "failed",
        cycle_len=len(result.cycle),
        steps=result.steps,
        ist_roots=roots,
        ist_independent=independent,
    )
    return entry


def cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    if args.max_base < 5:
        print("error: --max-base must be >= 5", file=sys.stderr)
        return EXIT_USAGE
    budget = _budget(args)
    pairs = _sweep_pairs(args.max_base)
    workers = int(os.environ.get("OTISHAM_THREADS", "1"))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_sweep_one, pairs, [budget] * len(pairs)))
    else:
        entries = [_sweep_one(mn, budget) for mn in pairs]
    entries.sort(key=lambda e: (e["m"], e["n"]))
    failed = [e for e in entries if e["status"] == "failed"]
    payload = {
        "max_base": args.max_base,
        "pairs": len(entries),
        "ok": len([e for e in entries if e["status"] == "ok"]),
        "unsupported": len([e for e in entries if e["status"] == "unsupported"]),
        "failed": len(failed),
        "entries": entries,
    }
    _emit(args, payload, (time.perf_counter() - t0) * 1e3)
    return EXIT_OK if not failed else EXIT_MISMATCH


def build_parser() -> _Parser:
    parser = _Parser(prog="otisham", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("gen", cmd_gen, help="generate a base graph")
    p.add_argument("family", choices=["bowtie", "butterfly", "cycle", "path", "complete"])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--out")
    p.add_argument("--dot", action="store_true")

    p = add("otis", cmd_otis, help="swapped network of a base graph")
    p.add_argument("--in", required=True)
    p.add_argument("--out")
    p.add_argument("--dot", action="store_true")

    p = add("decide", cmd_decide, help="complete Hamiltonicity decision")
    p.add_argument("--in", required=True)
    p.add_argument("--budget-nodes", type=int, dest="budget_nodes")
    p.add_argument("--budget-secs", type=float, dest="budget_secs")
    p.add_argument("--seed", help="JSON file with forced/deleted label pairs")

    p = add("refute-count", cmd_refute_count, help="counting non-Hamiltonicity certificate")
    p.add_argument("--in", required=True)

    p = add("ham-build", cmd_ham_build, help="table-driven cycle construction")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit-key-edges", action="store_true")
    p.add_argument("--budget-nodes", type=int, dest="budget_nodes")
    p.add_argument("--budget-secs", type=float, dest="budget_secs")
    p.add_argument("--out")
    p.add_argument("--dot", action="store_true")

    p = add("ist", cmd_ist, help="independent spanning trees from a cycle")
    p.add_argument("--cycle", required=True)
    p.add_argument("--root", required=True)
    p.add_argument("--in")

    p = add("verify", cmd_verify, help="verify a cycle certificate")
    p.add_argument("--in", required=True)
    p.add_argument("--cycle", required=True)

    p = add("export", cmd_export, help="edge list to DOT")
    p.add_argument("--in", required=True)
    p.add_argument("--out")

    add("reproduce", cmd_reproduce, help="recompute the headline counts")

    p = add("sweep", cmd_sweep, help="build and verify every supported pair")
    p.add_argument("--max-base", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, dest="budget_nodes")
    p.add_argument("--budget-secs", type=float, dest="budget_secs")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
