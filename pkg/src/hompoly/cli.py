"""Command-line entry points: classify, poly, verify, genus, report.

All structured output is JSON with sorted keys.  Exit codes: 0 on success
(and all lemmas passing for verify), 1 when a verification mismatch occurs,
2 on usage or input errors.  Report files are byte-stable across runs and
parallelism settings; wall-clock timings are only included with --timings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import reductions, topo
from .errors import BudgetExceededError, PipelineIntegrityError
from .genfun import VariableModel, hom_poly, parse_model
from .graphs import Graph, parse_class
from .poly import Polynomial

BUDGET_ENV = "HOMPOLY_BUDGET"

LEMMAS = ("cycles-even", "tree-matching", "outerplanar-star",
          "planar-permutation", "genus-block", "genus-chain")

TARGETS = {
    "c4": Graph.cycle(4),
    "k4": Graph.complete(4),
    "c6": Graph.cycle(6),
    "k33": Graph.complete_bipartite(3, 3),
}


def _load_graph(path: str) -> Graph:
    with open(path) as fh:
        return Graph.from_json_obj(json.load(fh))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else None


def cmd_classify(args) -> int:
    h = _load_graph(args.h_file)
    cls = parse_class(args.graph_class, args.k)
    result = reductions.classify(h, cls)
    print(_dump(result.to_json_obj()))
    return 0


def cmd_poly(args) -> int:
    h = _load_graph(args.h_file)
    cls = parse_class(args.graph_class, args.k)
    model = parse_model(args.model)
    kwargs = {}
    budget = _budget(args)
    if budget is not None:
        kwargs["budget"] = budget
    p = hom_poly(h, args.n, cls, model, **kwargs)
    print(_dump(p.to_json_obj()))
    return 0


def cmd_genus(args) -> int:
    g = _load_graph(args.graph_file)
    budget = _budget(args) or 10 ** 6
    planar = topo.is_planar(g)
    if planar:
        out = {"genus": 0, "planar": True}
    else:
        genus, rot = topo.min_genus_rotation(g, budget=budget)
        out = {"genus": genus, "planar": False,
               "rotation": topo.rotation_to_json_obj(rot)}
    print(_dump(out))
    return 0


def _run_lemma(lemma: str, args) -> reductions.ReductionReport:
    h = _load_graph(args.h_file) if args.h_file else None
    if lemma == "cycles-even":
        return reductions.reduce_cycles(h or Graph.single_edge(), args.n or 4)
    if lemma == "tree-matching":
        target = TARGETS[args.target]
        return reductions.reduce_trees(h or Graph.single_edge(), target)
    if lemma == "outerplanar-star":
        return reductions.reduce_outerplanar(h or Graph.complete(3), args.n or 6)
    if lemma == "planar-permutation":
        return reductions.reduce_planar(h or Graph.complete(3), args.m or 4)
    if lemma == "genus-block":
        return _genus_block_report()
    if lemma == "genus-chain":
        return reductions.reduce_genus(h or Graph.complete(3),
                                       args.k or 1, args.m or 4)
    raise ValueError(lemma)


def _genus_block_report() -> reductions.ReductionReport:
    import time
    t0 = time.time()
    certs = reductions.block_certificates()
    ok = (not certs["planar"] and certs["minor"] is not None
          and certs["min_genus"] == 1)
    zero = Polynomial.zero()
    return reductions.ReductionReport(
        "genus-block", {}, zero, zero, ok, wall_time=time.time() - t0,
        details={"planar": certs["planar"], "min_genus": certs["min_genus"],
                 "minor_kind": certs["minor"]["kind"] if certs["minor"] else None,
                 "rotation": certs["rotation"],
                 "search_space": certs["search_space"]})


def _report_table(reports) -> str:
    lines = ["lemma                 equal  produced  expected  circuit",
             "-" * 56]
    for r in reports:
        lines.append(f"{r.lemma_id:<22}{str(r.equal):<7}"
                     f"{len(r.produced):<10}{len(r.expected):<10}"
                     f"{r.circuit_size if r.circuit_size is not None else '-'}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    lemmas = args.lemma or list(LEMMAS)
    for lemma in lemmas:
        if lemma not in LEMMAS:
            print(f"unknown lemma id {lemma!r}; known: {', '.join(LEMMAS)}",
                  file=sys.stderr)
            return 2
    if args.parallelism > 1:
        with ThreadPoolExecutor(max_workers=args.parallelism) as pool:
            reports = list(pool.map(lambda name: _run_lemma(name, args), lemmas))
    else:
        reports = [_run_lemma(name, args) for name in lemmas]
    reports.sort(key=lambda r: r.lemma_id)

    payload = _dump({"reports": [r.to_json_obj(include_timing=args.timings)
                                 for r in reports],
                     "all_equal": all(r.equal for r in reports)})
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    print(_report_table(reports))
    for r in reports:
        if r.caveat:
            print(f"caveat [{r.lemma_id}]: {r.caveat}")
    return 0 if all(r.equal for r in reports) else 1


def cmd_report(args) -> int:
    with open(args.report_file) as fh:
        data = json.load(fh)
    rows = data.get("reports", [])
    print("lemma                 equal  produced  expected")
    print("-" * 48)
    for r in rows:
        print(f"{r['lemma']:<22}{str(r['equal']):<7}"
              f"{r['produced_terms']:<10}{r['expected_terms']}")
    return 0 if data.get("all_equal") else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hompoly",
                                 description="homomorphism polynomial workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="dichotomy classification for H and a class")
    p.add_argument("h_file")
    p.add_argument("graph_class")
    p.add_argument("--k", type=int, default=None, help="genus parameter")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("poly", help="print the class polynomial restricted to H")
    p.add_argument("h_file")
    p.add_argument("graph_class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--model", choices=[m.value for m in VariableModel],
                   default="edge")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=cmd_poly)

    p = sub.add_parser("verify", help="run reduction pipelines against oracles")
    p.add_argument("--lemma", action="append", choices=LEMMAS,
                   help="lemma id (repeatable); default: all")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--target", choices=sorted(TARGETS), default="k4")
    p.add_argument("--h-file", default=None, help="graph JSON for H")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--timings", action="store_true",
                   help="include wall times in the report file")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("genus", help="minimum genus by rotation-system search")
    p.add_argument("graph_file")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=cmd_genus)

    p = sub.add_parser("report", help="render a verify report file")
    p.add_argument("report_file")
    p.set_defaults(fn=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (OSError, json.JSONDecodeError, ValueError, KeyError,
            BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PipelineIntegrityError as exc:
        print(f"pipeline integrity failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
