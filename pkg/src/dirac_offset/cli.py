"""Command line entry point: ``dirac-offset <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .dirac import approximate_long_cycle, approximate_long_path, validate_dirac_decomposition
from .eg import build_nested_decomposition, validate_eg_decomposition
from .generators import FAMILIES, InstanceSpec, default_corpus, generate
from .graph import CycleWitness, GraphError, PathWitness
from .harness import (
    MODES,
    exit_status,
    export_dot,
    parse_graph,
    read_terminals,
    run_experiment,
    to_json,
    write_graph,
)
from .oracles import DEFAULT_EXACT_THRESHOLD, get_oracle
from .stpath import approximate_long_st_path


def _ints(text: str) -> List[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    with open(args.graph) as fh:
        text = fh.read()
    g = parse_graph(text)
    s, t = read_terminals(text)
    s = args.s if getattr(args, "s", None) is not None else s
    t = args.t if getattr(args, "t", None) is not None else t
    return g, s, t


def _report_json(rep) -> str:
    w = rep.witness
    out = {
        "witness": list(w.vertices), "witness_length": rep.length,
        "exact_optimum": rep.exact_optimum, "offset_k": rep.offset_k,
        "floor": rep.floor, "floor_satisfied": rep.floor_satisfied, "details": rep.details,
    }
    return json.dumps(out, sort_keys=True) + "\n"


def cmd_gen(args) -> int:
    params = {}
    for item in args.param or []:
        key, _, val = item.partition("=")
        params[key] = int(val)
    spec = InstanceSpec.make(args.family, seed=args.seed, name=args.name or "", **params)
    inst = generate(spec)
    note = spec.instance_id
    if inst.s is not None:
        note += f" s={inst.s} t={inst.t}"
    _emit(args, write_graph(inst.graph, note))
    return 0


def cmd_validate(args) -> int:
    g, s, t = _load(args)
    if args.kind == "eg":
        P = PathWitness(tuple(_ints(args.path)))
        out = validate_eg_decomposition(g, P.start, P.end, P, PathWitness(tuple(_ints(args.p1))),
                                        PathWitness(tuple(_ints(args.p2))))
    else:
        out = validate_dirac_decomposition(g, CycleWitness(tuple(_ints(args.cycle))),
                                           PathWitness(tuple(_ints(args.p1))), PathWitness(tuple(_ints(args.p2))))
    if out:
        body = {"valid": True, "components": [{"vertices": sorted(c.vertices), "type": c.kind} for c in out.components]}
    else:
        body = {"valid": False, "clause": out.clause,
                "component": None if out.component is None else sorted(out.component), "detail": out.detail}
    _emit(args, json.dumps(body, sort_keys=True) + "\n")
    return 0 if out else 1


def cmd_decompose(args) -> int:
    g, s, t = _load(args)
    if s is None or t is None:
        raise GraphError("decompose needs -s and -t")
    d = build_nested_decomposition(g, s, t, threshold=args.exact_threshold)
    text = export_dot(d) if args.format == "dot" else json.dumps(to_json(d), sort_keys=True) + "\n"
    _emit(args, text)
    return 0


def cmd_approx_cycle(args) -> int:
    g, _, _ = _load(args)
    rep = approximate_long_cycle(g, get_oracle(args.oracle, args.exact_threshold), args.exact_threshold)
    _emit(args, _report_json(rep))
    return 0 if rep.floor_satisfied is not False else 1


def cmd_approx_st_path(args) -> int:
    g, s, t = _load(args)
    if s is None or t is None:
        raise GraphError("approx-st-path needs -s and -t")
    rep = approximate_long_st_path(g, s, t, get_oracle(args.oracle, args.exact_threshold), args.exact_threshold)
    _emit(args, _report_json(rep))
    return 0 if rep.floor_satisfied is not False else 1


def cmd_approx_path(args) -> int:
    g, _, _ = _load(args)
    rep = approximate_long_path(g, get_oracle(args.oracle, args.exact_threshold), args.exact_threshold)
    _emit(args, _report_json(rep))
    return 0 if rep.floor_satisfied is not False else 1


def cmd_bench(args) -> int:
    corpus = default_corpus(args.count, args.min_n, args.max_n, args.seed)
    reports = run_experiment(corpus, args.oracle, args.mode, args.exact_threshold, args.jobs)
    _emit(args, "".join(r.to_json() + "\n" for r in reports))
    return exit_status(reports)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--oracle", choices=("exact", "dfs-heuristic"), default="exact")
    common.add_argument("--exact-threshold", type=int, default=DEFAULT_EXACT_THRESHOLD)
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="dirac-offset", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a seeded instance")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--name", help="named graph kind (K, C, Petersen, barbell, path, star)")
    g.add_argument("--param", action="append", help="size parameter key=value, repeatable")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("validate", parents=[common], help="check a decomposition clause by clause")
    v.add_argument("graph")
    v.add_argument("--kind", choices=("eg", "dirac"), default="eg")
    v.add_argument("--path", help="the (s,t)-path, comma separated")
    v.add_argument("--cycle", help="the cycle, comma separated")
    v.add_argument("--p1", required=True)
    v.add_argument("--p2", required=True)
    v.set_defaults(func=cmd_validate)

    for name, func, needs_st in (("decompose", cmd_decompose, True),
                                 ("approx-cycle", cmd_approx_cycle, False),
                                 ("approx-st-path", cmd_approx_st_path, True),
                                 ("approx-path", cmd_approx_path, False)):
        c = sub.add_parser(name, parents=[common])
        c.add_argument("graph")
        if needs_st:
            c.add_argument("-s", type=int)
            c.add_argument("-t", type=int)
        c.set_defaults(func=func)

    b = sub.add_parser("bench", parents=[common], help="run the seeded corpus and print JSON lines")
    b.add_argument("--mode", choices=MODES, default="cycle")
    b.add_argument("--count", type=int, default=50)
    b.add_argument("--min-n", type=int, default=6)
    b.add_argument("--max-n", type=int, default=18)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
