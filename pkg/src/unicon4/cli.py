"""Command-line surface.  Every command prints one JSON report (schema
unicon4.report/v1) to stdout, or a plain table with --human.

Exit codes: 0 success, 1 well-formed negative verdict (e.g. the graph is
not uniformly 4-connected), 2 input or parameter error, 3 search budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Tuple

from . import __version__
from .chording import DEFAULT_BUDGET, BudgetExceeded, SearchBudget
from .connectivity import (CutWitness, FanWitness, connectivity_report,
                           vertex_connectivity)
from .construct import (CertMismatch, DecompositionError, NotUniform, StepInvalid,
                        TraceFormatError, decompose, generate_catalog, replay,
                        trace_from_json, trace_to_json, verify_theorem)
from .graph_core import (FormatError, Graph, GraphError, canonical_cert, format_edge_list,
                         format_graph6, parse_edge_list, parse_graph6, to_dot)
from .transform import (Delta1Spec, Delta2Spec, SpecInvalid, apply_delta, is_quasi_4_compatible,
                        is_removable, is_removable_structural, reduce_edge)

SCHEMA = "unicon4.report/v1"

OK, VERDICT_FALSE, INPUT_ERROR, BUDGET = 0, 1, 2, 3


def _load_graph(path: str, fmt: Optional[str]) -> Graph:
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    if fmt is None:
        fmt = "g6" if path.endswith(".g6") else "edges"
    if fmt == "g6":
        return parse_graph6(text)
    if fmt == "edges":
        return parse_edge_list(text)
    raise FormatError(f"unknown input format {fmt!r}")


def _emit(payload: dict, human: bool) -> None:
    if human:
        for line in _human_lines(payload):
            print(line)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _human_lines(payload: dict):
    yield f"[{payload.get('command')}]"
    for key in sorted(payload):
        if key in ("schema", "command"):
            continue
        val = payload[key]
        if isinstance(val, dict):
            yield f"{key}:"
            for k in sorted(val, key=str):
                yield f"  {k}: {val[k]}"
        elif isinstance(val, list):
            yield f"{key}:"
            for item in val:
                yield f"  - {item}"
        else:
            yield f"{key}: {val}"


def _budget(args) -> SearchBudget:
    return SearchBudget(max_paths=args.max_paths, max_len=args.max_len)


def _witness_dict(w):
    if w is None:
        return None
    if isinstance(w, CutWitness):
        return {"kind": "cut", "vertices": sorted(w.vertices)}
    if isinstance(w, FanWitness):
        return {"kind": "five_fan", "pair": list(w.pair), "paths": [list(p) for p in w.paths]}
    return {"kind": "unknown"}


def _parse_vertex_list(text: str, what: str) -> Tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t != "")
    except ValueError:
        raise FormatError(f"{what} must be a comma-separated vertex list, got {text!r}") from None


def _parse_edge_set(text: str, what: str):
    edges = []
    if not text:
        return edges
    for tok in text.split(","):
        parts = tok.split("-")
        if len(parts) != 2:
            raise FormatError(f"{what} entries look like U-V, got {tok!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"non-integer vertex in {tok!r}") from None
    return edges


# -- commands -----------------------------------------------------------------


def _cmd_analyze(args) -> Tuple[dict, int]:
    g = _load_graph(args.path, args.format)
    rep = connectivity_report(g)
    locs = [rep.local[u][v] for u in range(g.n) for v in range(u + 1, g.n)]
    payload = {
        "schema": SCHEMA, "command": "analyze",
        "n": g.n, "m": g.edge_count,
        "kappa": rep.kappa,
        "local_min": min(locs) if locs else None,
        "local_max": max(locs) if locs else None,
        "uniform4": rep.uniform4,
        "witness": _witness_dict(rep.witness),
    }
    return payload, OK if rep.uniform4 else VERDICT_FALSE


def _cmd_removable(args) -> Tuple[dict, int]:
    g = _load_graph(args.path, args.format)
    if vertex_connectivity(g) < 4:
        raise GraphError("removability is defined on 4-connected graphs")
    rows = []
    for e in g.edges():
        row = {"edge": list(e), "removable": is_removable(g, e)}
        if g.n >= 7:
            row["structural"] = is_removable_structural(g, e)
        else:
            row["structural"] = None
        rows.append(row)
    payload = {"schema": SCHEMA, "command": "removable",
               "edges": rows, "removable_count": sum(r["removable"] for r in rows)}
    return payload, OK


def _cmd_reduce(args) -> Tuple[dict, int]:
    g = _load_graph(args.path, args.format)
    e = _parse_vertex_list(args.edge, "--edge")
    if len(e) != 2:
        raise FormatError("--edge takes exactly two vertices, e.g. 0,1")
    h, idmap = reduce_edge(g, (e[0], e[1]))
    payload = {"schema": SCHEMA, "command": "reduce",
               "edge": sorted(e), "result_graph6": format_graph6(h),
               "result_n": h.n, "id_map": {str(k): v for k, v in sorted(idmap.items())}}
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(format_graph6(h) + "\n")
        payload["written"] = args.output
    return payload, OK


def _cmd_apply(args) -> Tuple[dict, int]:
    g = _load_graph(args.path, args.format)
    xs = _parse_vertex_list(args.x, "--x")
    exs = _parse_edge_set(args.ex, "--ex")
    if args.op == "delta1":
        if args.y is None:
            raise FormatError("delta1 needs --y")
        spec = Delta1Spec(xs, args.y, exs)
    elif args.op == "delta2":
        if not args.yset:
            raise FormatError("delta2 needs --yset")
        spec = Delta2Spec(xs, _parse_vertex_list(args.yset, "--yset"),
                          exs, _parse_edge_set(args.ey, "--ey"))
    else:
        raise FormatError(f"unknown operation {args.op!r}")
    payload = {"schema": SCHEMA, "command": "apply", "op": args.op}
    if args.check_compat:
        rep = is_quasi_4_compatible(g, spec, _budget(args))
        payload["compatible"] = rep.compatible
        if not rep.compatible:
            v = rep.violation
            payload["violation"] = {"pair": list(v.pair), "predicate": v.predicate,
                                    "added_edge": list(v.added_edge) if v.added_edge else None,
                                    "path": list(v.path)}
            return payload, VERDICT_FALSE
    out = apply_delta(g, spec)
    payload["result_graph6"] = format_graph6(out)
    payload["result_n"] = out.n
    return payload, OK


def _cmd_decompose(args) -> Tuple[dict, int]:
    g = _load_graph(args.path, args.format)
    try:
        trace = decompose(g, _budget(args))
    except NotUniform:
        return ({"schema": SCHEMA, "command": "decompose",
                 "uniform4": False, "trace": None}, VERDICT_FALSE)
    text = trace_to_json(trace)
    payload = {"schema": SCHEMA, "command": "decompose",
               "uniform4": True, "base": trace.base, "steps": len(trace.steps),
               "trace": json.loads(text)}
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text + "\n")
        payload["written"] = args.output
    return payload, OK


def _cmd_replay(args) -> Tuple[dict, int]:
    try:
        with open(args.trace, "r", encoding="ascii") as fh:
            trace = trace_from_json(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {args.trace}: {exc}") from None
    g = replay(trace, _budget(args), check_compat=not args.skip_compat)
    payload = {"schema": SCHEMA, "command": "replay",
               "base": trace.base, "steps": len(trace.steps),
               "result_graph6": format_graph6(g), "result_n": g.n,
               "result_cert": canonical_cert(g).decode("ascii")}
    return payload, OK


def _cmd_gen(args) -> Tuple[dict, int]:
    cat = generate_catalog(args.max_n, _budget(args))
    payload = {"schema": SCHEMA, "command": "gen", "max_n": args.max_n,
               "counts_by_n": {str(n): len(c) for n, c in sorted(cat.certs_by_n.items())},
               "certs_by_n": {str(n): sorted(c.decode("ascii") for c in certs)
                              for n, certs in sorted(cat.certs_by_n.items())},
               "complete": cat.complete}
    return payload, OK if cat.complete else BUDGET


def _cmd_verify(args) -> Tuple[dict, int]:
    rep = verify_theorem(args.max_n, _budget(args))
    payload = {"schema": SCHEMA, "command": "verify", "max_n": args.max_n,
               "oracle_counts": {str(n): len(c) for n, c in sorted(rep.oracle_by_n.items())},
               "generated_counts": {str(n): len(c) for n, c in sorted(rep.generated_by_n.items())},
               "only_oracle": {str(n): sorted(c.decode("ascii") for c in certs)
                               for n, certs in sorted(rep.only_oracle.items())},
               "only_generated": {str(n): sorted(c.decode("ascii") for c in certs)
                                  for n, certs in sorted(rep.only_generated.items())},
               "decompose_ok": {c.decode("ascii"): ok for c, ok in sorted(rep.decompose_ok.items())},
               "soundness_failures": [list(map(str, f)) for f in rep.soundness_failures],
               "holds": rep.holds,
               "timings": {k: round(v, 3) for k, v in rep.timings.items()}}
    return payload, OK if rep.holds else VERDICT_FALSE


def _cmd_convert(args) -> Tuple[dict, int]:
    g = _load_graph(args.path, args.format)
    if args.to == "g6":
        text = format_graph6(g) + "\n"
    elif args.to == "edges":
        text = format_edge_list(g)
    elif args.to == "dot":
        text = to_dot(g)
    else:
        raise FormatError(f"unknown output format {args.to!r}")
    payload = {"schema": SCHEMA, "command": "convert", "to": args.to, "output": text}
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text)
        payload["written"] = args.output
    return payload, OK


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unicon4",
                                 description="uniformly 4-connected graph toolkit")
    ap.add_argument("--version", action="version", version=f"unicon4 {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, path=True):
        if path:
            p.add_argument("path")
            p.add_argument("--format", choices=["g6", "edges"], default=None,
                           help="input format; default: by file extension")
        p.add_argument("--human", action="store_true", help="plain-text output")
        p.add_argument("--max-paths", type=int, default=DEFAULT_BUDGET.max_paths)
        p.add_argument("--max-len", type=int, default=None)
        p.add_argument("--threads", type=int,
                       default=int(os.environ.get("UNICON4_THREADS", "1")),
                       help="parallelism hint (current implementation is sequential)")

    common(sub.add_parser("analyze", help="connectivity report and uniform-4 verdict"))
    common(sub.add_parser("removable", help="removability of every edge"))
    p = sub.add_parser("reduce", help="apply the edge reduction")
    common(p)
    p.add_argument("--edge", required=True, help="U,V")
    p.add_argument("-o", "--output", default=None)
    p = sub.add_parser("apply", help="apply a delta expansion")
    common(p)
    p.add_argument("--op", required=True, choices=["delta1", "delta2"])
    p.add_argument("--x", required=True, help="A,B,C")
    p.add_argument("--y", type=int, default=None, help="attachment vertex (delta1)")
    p.add_argument("--yset", default=None, help="D,E,F (delta2)")
    p.add_argument("--ex", required=True, help="U-V[,U-V...] edges removed inside --x")
    p.add_argument("--ey", default="", help="U-V[,U-V...] edges removed inside --yset")
    p.add_argument("--check-compat", action="store_true")
    p = sub.add_parser("decompose", help="trace a construction from a base graph")
    common(p)
    p.add_argument("-o", "--output", default=None)
    p = sub.add_parser("replay", help="rebuild and validate a trace file")
    common(p, path=False)
    p.add_argument("trace")
    p.add_argument("--skip-compat", action="store_true",
                   help="skip the per-step compatibility re-check")
    p = sub.add_parser("gen", help="generate all uniformly 4-connected graphs")
    common(p, path=False)
    p.add_argument("--max-n", type=int, required=True)
    p = sub.add_parser("verify", help="generation vs oracle vs decomposition")
    common(p, path=False)
    p.add_argument("--max-n", type=int, required=True)
    p = sub.add_parser("convert", help="convert between graph formats")
    common(p)
    p.add_argument("--to", required=True, choices=["g6", "edges", "dot"])
    p.add_argument("-o", "--output", default=None)
    return ap


_HANDLERS = {
    "analyze": _cmd_analyze, "removable": _cmd_removable, "reduce": _cmd_reduce,
    "apply": _cmd_apply, "decompose": _cmd_decompose, "replay": _cmd_replay,
    "gen": _cmd_gen, "verify": _cmd_verify, "convert": _cmd_convert,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        payload, code = _HANDLERS[args.cmd](args)
    except BudgetExceeded as exc:
        _emit({"schema": SCHEMA, "command": args.cmd, "error": "budget-exceeded",
               "message": str(exc)}, args.human)
        return BUDGET
    except (FormatError, TraceFormatError, SpecInvalid, StepInvalid, CertMismatch,
            DecompositionError, GraphError) as exc:
        _emit({"schema": SCHEMA, "command": args.cmd, "error": type(exc).__name__,
               "message": str(exc)}, args.human)
        return INPUT_ERROR
    _emit(payload, args.human)
    return code


if __name__ == "__main__":
    sys.exit(main())
