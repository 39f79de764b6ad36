"""Command-line surface.

Subcommands: construct, solve-exact, solve-blowup, heuristic, certify,
verify-paper, bench.  Reports are JSON (CSV for bench with --csv) with a
stable schema: {schema_version, command, input, results, timings}.
Exit codes: 0 success (and all checks passing for certify/verify-paper),
1 any failed check, 2 usage or input-format errors.  Output is plain
text; nothing emits color, so NO_COLOR is honored trivially.

All randomness sits behind --seed (default 0); --workers only changes
scheduling, never results (wall_ms and node counters are diagnostics and
do vary).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import blowups, catalog, exact, families, localsearch, pipelines, verification
from .graphs import ContractError, Graph, ParityError
from .io import GraphFormatError, read_graph, to_edge_list, to_graph6, write_graph

SCHEMA_VERSION = 1


def _fingerprint(g: Graph) -> str:
    return hashlib.sha256(to_edge_list(g).encode()).hexdigest()[:16]


def _emit(payload: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _report(args_list, input_fp, results, wall_ms, out) -> None:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": args_list,
        "input": {"fingerprint": input_fp},
        "results": results,
        "timings": {"wall_ms": wall_ms},
    }
    _emit(json.dumps(doc, indent=1, sort_keys=True) + "\n", out)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _build_from_args(args) -> Graph:
    params = {"n": args.n, "p": args.p, "seed": args.seed, "mult": args.mult}
    if args.sizes:
        params["sizes"] = [int(s) for s in args.sizes.split(",")]
    return families.build_family(args.family, **params)


def cmd_construct(args) -> int:
    g = _build_from_args(args)
    if args.out:
        write_graph(g, args.out, args.format)
    else:
        sys.stdout.write(to_edge_list(g) if args.format == "edge-list"
                         else to_graph6(g) + "\n")
    sys.stderr.write(f"constructed {args.family}: n={g.n} m={g.m} "
                     f"fingerprint={_fingerprint(g)}\n")
    return 0


def cmd_solve_exact(args) -> int:
    g = read_graph(args.graph)
    t0 = time.time()
    if args.objective == "minmax":
        res = exact.exact_min_max_balanced(g, cap=args.cap, method=args.method,
                                           workers=args.workers)
    elif args.objective == "minsum":
        res = exact.exact_min_sum_balanced(g, cap=args.cap, method=args.method,
                                           workers=args.workers)
    else:
        res = exact.exact_d2(g, cap=args.cap or exact.D2_CAP, workers=args.workers)
    wall = int((time.time() - t0) * 1000)
    _report(sys.argv[1:], _fingerprint(g), {
        "objective": res.objective,
        "value": res.value,
        "witness_bitmask_hex": hex(res.witness.side_a.mask),
        "e_a": res.witness.e_a,
        "e_ac": res.witness.e_ac,
        "nodes": res.nodes_explored,
        "proven_optimal": res.proven_optimal,
        "wall_ms": wall,
    }, wall, args.out)
    return 0


def cmd_solve_blowup(args) -> int:
    if args.base in families.FAMILY_BUILDERS:
        base = families.build_family(args.base, n=args.n, p=args.p, seed=args.seed,
                                     mult=1)
    else:
        base = read_graph(args.base)
    bg = families.blowup(base, args.mult)
    t0 = time.time()
    res = blowups.exact_min_max_blowup(bg, workers=args.workers)
    wall = int((time.time() - t0) * 1000)
    _report(sys.argv[1:], _fingerprint(base), {
        "value": res.value,
        "count_vector": list(res.count_vector),
        "aggregated_classes": [list(c) for c in res.aggregated_classes],
        "class_multiplicities": list(res.class_multiplicities),
        "witness_bitmask_hex": hex(res.witness.side_a.mask),
        "nodes": res.nodes_explored,
        "wall_ms": wall,
    }, wall, args.out)
    return 0


def _trace_json(trace: pipelines.CaseTrace) -> dict:
    return {
        "case_label": trace.case_label,
        "quantities": {k: _frac(v) for k, v in sorted(trace.quantities.items())},
        "achieved": trace.achieved,
        "target_bound": _frac(trace.target_bound),
        "compliant": trace.compliant,
        "notes": trace.notes,
    }


def cmd_heuristic(args) -> int:
    g = read_graph(args.graph)
    cfg = localsearch.HeuristicConfig(seed=args.seed, restarts=args.restarts)
    t0 = time.time()
    if args.pipeline == "xu":
        res = localsearch.swap_local_search(g, args.objective, cfg, workers=args.workers)
        results = {
            "pipeline": "xu",
            "achieved": res.partition.max_side,
            "sum": res.partition.total,
            "witness_bitmask_hex": hex(res.partition.side_a.mask),
            "degree_bound": _frac(res.xu_bound),
            "degree_bound_met": res.xu_compliant,
            "converged": res.converged,
        }
    elif args.pipeline == "bipartize":
        res = localsearch.bipartize_local_search(g, cfg)
        results = {
            "pipeline": "bipartize",
            "deleted": res.deleted,
            "cut": res.cut,
            "witness_bitmask_hex": hex(res.partition.side_a.mask),
            "triangle_free": res.triangle_free,
            "triangle_free_budget": _frac(res.tf_bound) if res.tf_bound is not None else None,
            "budget_met": res.tf_compliant,
            "dense_budget": _frac(res.dense_bound) if res.dense_bound is not None else None,
        }
    elif args.pipeline == "tripartite":
        sizes = [int(s) for s in args.parts.split(",")] if args.parts else None
        if not sizes or sum(sizes) != g.n:
            raise ContractError("--parts a,b,c with a+b+c = n required (contiguous blocks)")
        bounds = [0]
        for s in sizes:
            bounds.append(bounds[-1] + s)
        parts = [g.vertex_set(range(bounds[k], bounds[k + 1])) for k in range(3)]
        res = pipelines.tripartite_partition(g, parts, cfg)
        results = {
            "pipeline": "tripartite",
            "achieved": res.partition.max_side,
            "witness_bitmask_hex": hex(res.partition.side_a.mask),
            "bound": _frac(res.bound),
            "compliant": res.compliant,
        }
    elif args.pipeline == "k4free":
        part, trace = pipelines.k4free_partition(g, cfg, workers=args.workers)
        results = {
            "pipeline": "k4free",
            "witness_bitmask_hex": hex(part.side_a.mask),
            "trace": _trace_json(trace),
        }
    else:                          # join
        if args.i_size is None:
            raise ContractError("--i-size K required: vertices 0..K-1 form the "
                                "independent block")
        i_set = g.vertex_set(range(args.i_size))
        part, trace = pipelines.join_partition(i_set, g, cfg, workers=args.workers)
        results = {
            "pipeline": "join",
            "witness_bitmask_hex": hex(part.side_a.mask),
            "trace": _trace_json(trace),
        }
    wall = int((time.time() - t0) * 1000)
    _report(sys.argv[1:], _fingerprint(g), results, wall, args.out)
    return 0


def cmd_certify(args) -> int:
    t0 = time.time()
    if args.claim:
        res = catalog.run_claim(args.claim)
        entries = [(args.claim, res, res.verdict == "verified")]
        consts = []
    else:
        rep = catalog.run_all()
        entries = [(e.claim_id, r, e.passed(r)) for e, r in rep.claims]
        consts = rep.constants
    wall = int((time.time() - t0) * 1000)
    ok = all(passed for _, _, passed in entries) and all(c.match for c in consts)
    _report(sys.argv[1:], None, {
        "claims": [dict(r.as_json(), passed=passed) for _, r, passed in entries],
        "constants": [c.as_json() for c in consts],
        "all_passed": ok,
    }, wall, args.out)
    return 0 if ok else 1


def cmd_verify_paper(args) -> int:
    t0 = time.time()
    results = verification.run_verification(only=args.only,
                                            artifacts_dir=args.artifacts_dir)
    if not results:
        sys.stderr.write(f"no checks match --only {args.only!r}\n")
        return 2
    width = max(len(r.check_id) for r in results)
    for r in results:
        line = (f"{'PASS' if r.passed else 'FAIL'}  {r.check_id:<{width}}  "
                f"[{r.anchor}]  {r.wall_ms:>7} ms")
        sys.stderr.write(line + "\n")
    ok = all(r.passed for r in results)
    wall = int((time.time() - t0) * 1000)
    _report(sys.argv[1:], None, {
        "checks": [{
            "check_id": r.check_id, "anchor": r.anchor, "passed": r.passed,
            "details": r.details, "wall_ms": r.wall_ms, "artifacts": r.artifacts,
        } for r in results],
        "all_passed": ok,
    }, wall, args.out)
    return 0 if ok else 1


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = [("n", "operation", "wall_ms", "nodes")]
    for n in sizes:
        if args.target == "exact":
            g = families.build_family(args.family, n=n, p=args.p, seed=args.seed,
                                      mult=None)
            t0 = time.time()
            res = exact.exact_min_max_balanced(g)
            rows.append((n, "exact-minmax", int((time.time() - t0) * 1000),
                         res.nodes_explored))
        elif args.target == "blowup":
            base = families.build_family(args.family, n=n, p=args.p,
                                         seed=args.seed, mult=1)
            t0 = time.time()
            res = blowups.exact_min_max_blowup(families.blowup(base, n))
            rows.append((base.n * n, "blowup-minmax",
                         int((time.time() - t0) * 1000), res.nodes_explored))
        else:
            g = families.build_family(args.family, n=n, p=args.p, seed=args.seed,
                                      mult=None)
            cfg = localsearch.HeuristicConfig(seed=args.seed)
            t0 = time.time()
            part, trace = pipelines.k4free_partition(g, cfg)
            rows.append((n, f"k4free[{trace.case_label}]",
                         int((time.time() - t0) * 1000), trace.achieved))
    payload = "\n".join(",".join(str(x) for x in row) for row in rows) + "\n"
    _emit(payload, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="balpart",
        description="Balanced 2-partitions minimizing max{e(A), e(A^c)}: exact "
                    "solvers, blow-up symmetry reduction, guarantee-checked "
                    "heuristics, and an exact-rational certificate catalog.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a graph from the family catalog")
    p.add_argument("--family", required=True, choices=sorted(families.FAMILY_BUILDERS))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--mult", type=int, default=1)
    p.add_argument("--sizes", default=None, help="comma list for complete-multipartite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["edge-list", "graph6"], default="edge-list")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("solve-exact", help="exact solve by branch and bound")
    p.add_argument("graph")
    p.add_argument("--objective", choices=["minmax", "minsum", "d2"], default="minmax")
    p.add_argument("--method", choices=["bnb", "enumerate"], default="bnb")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_solve_exact)

    p = sub.add_parser("solve-blowup", help="count-vector exact solve of a blow-up")
    p.add_argument("--base", required=True,
                   help="family name or graph file for the base graph")
    p.add_argument("--mult", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_solve_blowup)

    p = sub.add_parser("heuristic", help="constructive pipelines with case traces")
    p.add_argument("graph")
    p.add_argument("--pipeline", required=True,
                   choices=["xu", "k4free", "join", "bipartize", "tripartite"])
    p.add_argument("--preset", choices=sorted(pipelines.PRESETS), default=None,
                   help="named (m0, eps) pair recorded in sparse-route traces")
    p.add_argument("--objective", choices=["max", "sum"], default="max")
    p.add_argument("--i-size", type=int, default=None,
                   help="join pipeline: vertices 0..K-1 are the independent block")
    p.add_argument("--parts", default=None,
                   help="tripartite pipeline: comma sizes of contiguous parts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_heuristic)

    p = sub.add_parser("certify", help="run the exact-rational claim catalog")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true")
    group.add_argument("--claim", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("verify-paper",
                       help="run every reproduction check and print the table")
    p.add_argument("--only", default=None,
                   help="restrict to one anchor, e.g. theorem-1.6")
    p.add_argument("--artifacts-dir", default="artifacts")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify_paper)

    p = sub.add_parser("bench", help="timing table (CSV)")
    p.add_argument("--target", choices=["exact", "blowup", "heuristic"],
                   required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--sizes", required=True, help="comma list of sizes")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", action="store_true", default=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except GraphFormatError as err:
        sys.stderr.write(f"input error: {err}\n")
        return 2
    except (ContractError, ParityError, exact.SizeCapError, KeyError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
