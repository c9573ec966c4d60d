"""Command-line frontend: dist, oracle, search, gen, inspect, and bench."""

from __future__ import annotations

import argparse
import json
import sys
import time

from .bounds import delta_bounds, lb_graph
from .engine import (
    BUDGET_EXHAUSTED,
    DEFAULT_BEAM_WIDTH,
    DEFAULT_NODE_BUDGET,
    bss_ged,
)
from .graphs import GraphFormatError, parse_graph_db, serialize_graph_db, vertex_partition
from .oracle import exhaustive_ged
from .simsearch import GraphDatabase, range_query
from .successors import determine_order, predicted_layer_count
from .synth import random_graph_db

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_PARSE = 4


def _load_db(path: str) -> GraphDatabase:
    with open(path, encoding="utf-8") as fh:
        return GraphDatabase.from_text(fh.read())


def _pick(db: GraphDatabase, gid: int):
    if gid not in db.graphs:
        raise SystemExit(f"graph id {gid} not in database ({len(db)} graphs)")
    return db.graphs[gid]


def _add_engine_flags(p: argparse.ArgumentParser):
    p.add_argument("--beam", type=int, default=DEFAULT_BEAM_WIDTH, help="beam width w")
    p.add_argument("--order", choices=("default", "dfs"), default="dfs")
    p.add_argument("--succ", choices=("basic", "reduced"), default="reduced")
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, help="node budget")


def cmd_dist(args) -> int:
    db = _load_db(args.db)
    g, q = _pick(db, args.id1), _pick(db, args.id2)
    t0 = time.perf_counter()
    result = bss_ged(
        g, q, args.beam,
        order_policy=args.order, succ_policy=args.succ, node_budget=args.budget,
    )
    ms = (time.perf_counter() - t0) * 1000.0
    payload = {
        "ged": result.distance,
        "expanded": result.stats.nodes_expanded,
        "backtracks": result.stats.backtracks,
        "passes": result.stats.passes,
        "time_ms": round(ms, 3),
    }
    if result.status == BUDGET_EXHAUSTED:
        payload["ged"] = None
        payload["upper_bound"] = result.upper_bound
        payload["status"] = "budget_exhausted"
    if args.json:
        print(json.dumps(payload))
    elif result.status == BUDGET_EXHAUSTED:
        print(f"budget exhausted; best upper bound {result.upper_bound}")
    else:
        print(
            f"ged({args.id1}, {args.id2}) = {result.distance}  "
            f"[expanded={payload['expanded']} backtracks={payload['backtracks']} "
            f"passes={payload['passes']} time={payload['time_ms']}ms]"
        )
    return EXIT_BUDGET if result.status == BUDGET_EXHAUSTED else EXIT_OK


def cmd_oracle(args) -> int:
    db = _load_db(args.db)
    g, q = _pick(db, args.id1), _pick(db, args.id2)
    res = exhaustive_ged(g, q)
    print(json.dumps({"ged": res.distance, "mappings_enumerated": res.mappings_enumerated}))
    return EXIT_OK


def cmd_search(args) -> int:
    db = _load_db(args.db)
    with open(args.query, encoding="utf-8") as fh:
        queries, _ = parse_graph_db(fh.read(), db.table)
    if not queries:
        raise SystemExit("query file contains no graph")
    _, query = queries[0]
    t0 = time.perf_counter()
    res = range_query(db, query, args.tau, args.beam, threads=args.threads, node_budget=args.budget)
    ms = (time.perf_counter() - t0) * 1000.0
    payload = {
        "matches": [{"id": m.graph_id, "bound": m.bound, "exact": m.exact} for m in res.matches],
        "filtered": res.filtered_count,
        "candidates": res.candidate_count,
        "time_ms": round(ms, 3),
    }
    if res.unknowns:
        payload["unknown"] = res.unknowns
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"{len(res.matches)} matches within tau={args.tau} "
              f"({res.filtered_count} filtered, {res.candidate_count} verified, {ms:.1f}ms)")
        for m in res.matches:
            mark = "=" if m.exact else "<="
            print(f"  graph {m.graph_id}: ged {mark} {m.bound}")
        for gid in res.unknowns:
            print(f"  graph {gid}: unknown (budget exhausted)")
    return EXIT_OK


def cmd_gen(args) -> int:
    entries, _ = random_graph_db(
        args.seed, args.count, args.min_vertices, args.max_vertices,
        args.density, args.vertex_labels, args.edge_labels,
    )
    text = serialize_graph_db(entries)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {len(entries)} graphs to {args.out}")
    return EXIT_OK


def cmd_inspect(args) -> int:
    db = _load_db(args.db)
    g, q = _pick(db, args.id1), _pick(db, args.id2)
    part = vertex_partition(q)
    sizes = [len(c) for c in part.classes]
    payload = {
        "g": args.id1,
        "q": args.id2,
        "partition": {"lambda": part.lambda_q, "classes": [list(c) for c in part.classes]},
        "order": list(determine_order(g)),
        "predicted_layer_counts": [
            predicted_layer_count(l, g.n, q.n, sizes) for l in range(g.n + 1)
        ],
    }
    if args.bounds:
        d1, d2 = delta_bounds(g, q)
        payload["lb"] = lb_graph(g, q)
        payload["delta1"] = d1
        payload["delta2"] = d2
    print(json.dumps(payload))
    return EXIT_OK


def cmd_bench(args) -> int:
    db = _load_db(args.db)
    queries = [int(x) for x in args.queries.split(",")] if args.queries else list(db.ids)
    targets = [int(x) for x in args.targets.split(",")] if args.targets else list(db.ids)
    rows = []
    solved = 0
    for qid in queries:
        for tid in targets:
            g, q = _pick(db, tid), _pick(db, qid)
            t0 = time.perf_counter()
            result = bss_ged(
                g, q, args.beam,
                order_policy=args.order, succ_policy=args.succ,
                node_budget=args.budget, time_limit=args.time_limit,
            )
            ms = (time.perf_counter() - t0) * 1000.0
            ok = result.is_exact
            solved += ok
            rows.append({
                "query": qid,
                "target": tid,
                "ged": result.distance if ok else None,
                "time_ms": round(ms, 3),
                "expanded": result.stats.nodes_expanded,
                "backtracks": result.stats.backtracks,
            })
    ratio = solved / len(rows) if rows else 1.0
    if args.json:
        print(json.dumps({"rows": rows, "solve_ratio": ratio}))
    else:
        print(f"{'query':>6} {'target':>6} {'ged':>6} {'time_ms':>10} {'expanded':>9} {'backtracks':>10}")
        for r in rows:
            ged = r["ged"] if r["ged"] is not None else "-"
            print(f"{r['query']:>6} {r['target']:>6} {ged:>6} {r['time_ms']:>10} "
                  f"{r['expanded']:>9} {r['backtracks']:>10}")
        print(f"solve ratio: {ratio:.3f} ({solved}/{len(rows)})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gedkit", description="Exact graph edit distance toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="exact GED between two database graphs")
    p.add_argument("db")
    p.add_argument("id1", type=int)
    p.add_argument("id2", type=int)
    _add_engine_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_dist)

    p = sub.add_parser("oracle", help="brute-force GED (small graphs only)")
    p.add_argument("db")
    p.add_argument("id1", type=int)
    p.add_argument("id2", type=int)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("search", help="graphs within edit distance tau of a query")
    p.add_argument("--db", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--beam", type=int, default=DEFAULT_BEAM_WIDTH)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("gen", help="write a seeded random graph database")
    p.add_argument("out")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--min-vertices", type=int, default=4)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--vertex-labels", type=int, default=20)
    p.add_argument("--edge-labels", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("inspect", help="partition, order, and predicted layer sizes")
    p.add_argument("db")
    p.add_argument("id1", type=int)
    p.add_argument("id2", type=int)
    p.add_argument("--bounds", action="store_true")
    p.set_defaults(fn=cmd_inspect)

    p = sub.add_parser("bench", help="GED over query/target id lists with budgets")
    p.add_argument("db")
    p.add_argument("--queries", help="comma-separated query ids (default: all)")
    p.add_argument("--targets", help="comma-separated target ids (default: all)")
    _add_engine_flags(p)
    p.add_argument("--time-limit", type=float, help="per-pair time limit in seconds")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except GraphFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
