"""Command-line entry point: ``treecycles <group> <command> [options]``.

Every command prints a JSON report (or writes it to ``--json PATH``).  Exit
status is 0 when everything passed, 1 when a check failed and 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Optional, Sequence

from . import constructions as C
from . import critical as K
from . import cycles as Y
from . import treelen as TL
from .graphs import GraphError, Tree, parse_graph, save_graph, serialize_graph, to_dot
from .verify import FAULTS, PROFILES, SUITES, Record, RunReport, check_exhaustive_13, digest, verify_all


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    p.add_argument("--json", metavar="PATH", default=argparse.SUPPRESS, help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for random corpora (default 0)")
    p.add_argument("--dot", metavar="PATH", default=argparse.SUPPRESS, help="also write the graph in DOT format")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="include wall time in the report")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _common(common)
    parser = argparse.ArgumentParser(prog="treecycles", description=__doc__.splitlines()[0], parents=[common])
    groups = parser.add_subparsers(dest="group", required=True, metavar="GROUP")

    def leaf(sub, name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    g = groups.add_parser("construct", help="build trees from sequences")
    s = g.add_subparsers(dest="command", required=True, metavar="COMMAND")
    p = leaf(s, "tree", "materialize T_n((a_i))")
    p.add_argument("--seq", required=True, help="constant:c | staircase:m | sumset:k | list:a,b,...")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trace", action="store_true", help="accepted for compatibility; the trace is always reported")

    g = groups.add_parser("analyze", help="leaf-to-leaf path lengths of a tree")
    s = g.add_subparsers(dest="command", required=True, metavar="COMMAND")
    p = leaf(s, "lengths", "distinct leaf-to-leaf lengths")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--max-len", "--max", dest="max_len", type=int)
    p.add_argument("--per-leaf", action="store_true", help="also report the witnessed-length count of every leaf")
    p.add_argument("--leaf", type=int, help="only lengths witnessed by this leaf")
    p.add_argument("--short", type=int, metavar="N", help="single-leaf witness for lengths <= N")
    p.add_argument("--constructive", action="store_true", help="also run the inductive witness construction")

    g = groups.add_parser("verify", help="acceptance suites")
    s = g.add_subparsers(dest="command", required=True, metavar="SUITE")
    for name in (*SUITES, "all"):
        p = leaf(s, name, f"run the {name} checks")
        p.add_argument("--profile", choices=PROFILES, default="quick")
        p.add_argument("--inject-fault", choices=FAULTS)
        if name in ("treelen", "all"):
            p.add_argument("--max-n", type=int, help="only the exhaustive 1-3 tree sweep, up to this n")

    g = groups.add_parser("critical", help="degree k-critical graphs")
    s = g.add_subparsers(dest="command", required=True, metavar="COMMAND")
    p = leaf(s, "check", "test degree k-criticality")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--k", type=int, default=3)
    p = leaf(s, "from-tree", "apex graph over a 1-3 tree")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p = leaf(s, "order", "peeling order of a critical graph")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--out", help="write {order, dplus} here")

    g = groups.add_parser("cycles", help="cycle lengths")
    s = g.add_subparsers(dest="command", required=True, metavar="COMMAND")
    p = leaf(s, "find", "certified cycle lengths of a degree k-critical graph")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--certs", metavar="PATH", help="write the cycle certificates here")
    p = leaf(s, "oracle", f"exact cycle lengths (n <= {Y.ORACLE_CAP})")
    p.add_argument("--in", dest="inp", required=True)

    g = groups.add_parser("sumset", help="sumset tools")
    s = g.add_subparsers(dest="command", required=True, metavar="COMMAND")
    p = leaf(s, "build", "U, V with U - V = [13^k]")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p = leaf(s, "search", "small digit sets with full difference set")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--max-digit-set", "--max-size", dest="max_digit_set", type=int, required=True)
    p.add_argument("--range", dest="digit_range", help="LO,HI digit window")
    p.add_argument("--top", type=int, default=10)
    return parser


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(data), digest(data)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_tree(path: str):
    g, dg = _load(path)
    try:
        return Tree.from_graph(g), dg
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(path: str, text: str, report: RunReport) -> None:
    with open(path, "w") as fh:
        fh.write(text)
    report.artifacts.append(path)


def _cmd_construct_tree(a, report: RunReport) -> dict:
    spec = C.SequenceSpec.parse(a.seq)
    tree, trace = C.build_tree(spec, a.n)
    degrees_ok = set(tree.degrees()) <= {1, 3}
    report.records.append(Record("degrees in {1,3}", True, degrees_ok, degrees_ok))
    report.records.append(Record("vertex count", a.n, tree.n, tree.n == a.n))
    save_graph(tree, a.out)
    report.artifacts.append(a.out)
    if getattr(a, "dot", None):
        _write(a.dot, to_dot(tree), report)
    report.input_digest = digest(serialize_graph(tree))
    return {
        "sequence": str(spec),
        "trace": {"t": trace.t, "S": trace.S_sum, "L": trace.leftover, "layers": list(trace.layers)},
    }


def _cmd_analyze_lengths(a, report: RunReport) -> dict:
    t, report.input_digest = _load_tree(a.inp)
    out: dict = {"n": t.n, "leaves": len(t.leaves())}
    if a.short is not None:
        rep = TL.short_lengths(t, a.short)
        bound = TL.short_lengths_bound(a.short)
        report.records.append(Record(f"lengths <= {a.short} witnessed by one leaf", f">= {bound:.3f}", len(rep), len(rep) >= bound - TL.EPS))
        out["short"] = {"leaf": rep.leaf, "lengths": list(rep.lengths.lengths)}
        return out
    if a.leaf is not None:
        rep = TL.witnessed_lengths(t, a.leaf, a.max_len)
        out["leaf"] = a.leaf
        out["lengths"] = list(rep.lengths.lengths)
        return out
    ls = TL.leaf_lengths(t, a.max_len)
    out["lengths"] = list(ls.lengths)
    out["count"] = len(ls)
    if a.per_leaf:
        out["per_leaf"] = {str(x): len(TL.witnessed_lengths(t, x, a.max_len)) for x in t.leaves()}
    if a.max_len is None and t.n >= 3 and t.max_degree() >= 3:
        bound = TL.lengths_bound(t.max_degree(), len(t.leaves()))
        report.records.append(Record("distinct lengths vs degree bound", f">= {bound:.3f}", len(ls), len(ls) >= bound - TL.EPS))
    if a.constructive:
        ml = TL.many_lengths(t)
        ok = TL.verify_witnesses(t, ml) and ml.as_set() <= ls.as_set()
        report.records.append(Record("constructive witnesses valid", True, ok, ok))
        out["constructive"] = {str(k): list(v) for k, v in sorted(ml.witnesses.items())}
    return out


def _cmd_verify(a, report: RunReport) -> dict:
    suites = SUITES if a.command == "all" else (a.command,)
    max_n = getattr(a, "max_n", None)
    if max_n is not None:
        report.records.extend(check_exhaustive_13(max_n, a.inject_fault))
        suites = tuple(s for s in suites if s != "treelen")
    if suites:
        sub = verify_all(a.profile, report.seed, a.inject_fault, suites)
        report.records.extend(sub.records)
    return {"profile": a.profile}


def _cmd_critical_check(a, report: RunReport) -> dict:
    g, report.input_digest = _load(a.inp)
    rep = K.check_critical(g, a.k)
    report.records.append(Record("edge count", K.critical_edge_count(g.n, a.k), g.num_edges(), rep.edge_count_ok))
    report.records.append(Record("no G - v has a non-empty k-core", None, rep.violating_vertex, rep.violating_vertex is None))
    return rep.to_dict()


def _cmd_critical_from_tree(a, report: RunReport) -> dict:
    t, report.input_digest = _load_tree(a.inp)
    if not t.is_13_tree():
        raise UsageError("input tree is not a 1-3 tree")
    g = K.apex_from_13_tree(t)
    save_graph(g, a.out)
    report.artifacts.append(a.out)
    if getattr(a, "dot", None):
        _write(a.dot, to_dot(g), report)
    ok = K.check_critical(g, 3).verdict
    report.records.append(Record("apex graph is degree 3-critical", True, ok, ok))
    return {"n": g.n, "edges": g.num_edges()}


def _cmd_critical_order(a, report: RunReport) -> dict:
    g, report.input_digest = _load(a.inp)
    o = K.critical_ordering(g, a.k)
    ok = K.is_k_ordered(g, o, a.k)
    report.records.append(Record("ordering is k-ordered", True, ok, ok))
    if a.out:
        _write(a.out, json.dumps(o.to_dict()) + "\n", report)
    return o.to_dict()


def _cmd_cycles_find(a, report: RunReport) -> dict:
    g, report.input_digest = _load(a.inp)
    run = Y.cycle_pipeline(g, a.k)
    bound = TL.ceil_bound(Y.cycle_count_bound(g.n, a.k))
    certs = [run.lengths.witnesses[x] for x in run.lengths]
    valid = all(Y.is_cycle(g, c.vertices) for c in certs)
    report.records.append(Record("distinct cycle lengths", bound, len(certs), len(certs) >= bound))
    report.records.append(Record("certificates are cycles", True, valid, valid))
    if a.certs:
        _write(a.certs, json.dumps([c.to_dict() for c in certs], indent=1) + "\n", report)
    return {
        "lengths": list(run.lengths.lengths),
        "longest_forward_path_vertices": run.c,
        "antichain": len(run.antichain),
        "fair_leaves": len(run.L0),
        "good_cycles": [c.length for c in run.good],
        "vine_cycles": [c.length for c in run.vine_cycles],
    }


def _cmd_cycles_oracle(a, report: RunReport) -> dict:
    g, report.input_digest = _load(a.inp)
    return {"lengths": list(Y.cycle_length_oracle(g).lengths)}


def _cmd_sumset_build(a, report: RunReport) -> dict:
    pair = C.sumset_uv(a.k)
    diff_ok = pair.verified == "digits" or C.diffset(pair.U, pair.V) == set(range(1, pair.m + 1))
    report.records.append(Record("U - V = [13^k]", pair.m, pair.verified, diff_ok))
    report.records.append(Record("|U + V|", 10**a.k, pair.sum_size, pair.sum_size == 10**a.k))
    out = {"k": a.k, "m": pair.m, "sum_size": pair.sum_size, "beta": pair.beta, "verified": pair.verified}
    if a.out:
        spec = C.sequence_from_sumset(pair)
        _write(a.out, json.dumps({"U": list(pair.U), "V": list(pair.V), "sequence": list(spec.values)}) + "\n", report)
    return out


def _cmd_sumset_search(a, report: RunReport) -> dict:
    rng = None
    if a.digit_range:
        try:
            lo, hi = (int(x) for x in a.digit_range.split(","))
        except ValueError:
            raise UsageError("--range expects LO,HI") from None
        rng = (lo, hi)
    found = C.sumset_search(a.base, a.max_digit_set, rng)
    best = min((c.sum_size for c in found), default=None)
    return {
        "base": a.base,
        "candidates": len(found),
        "best_sum_size": best,
        "top": [
            {"X": list(c.X), "Y": list(c.Y), "diff": c.diff_size, "sum": c.sum_size, "beta": _beta(c)}
            for c in found[: a.top]
        ],
    }


def _beta(c) -> Optional[float]:
    return round(math.log(c.sum_size) / math.log(c.diff_size), 6) if c.diff_size > 1 else None


HANDLERS = {
    ("construct", "tree"): _cmd_construct_tree,
    ("analyze", "lengths"): _cmd_analyze_lengths,
    ("critical", "check"): _cmd_critical_check,
    ("critical", "from-tree"): _cmd_critical_from_tree,
    ("critical", "order"): _cmd_critical_order,
    ("cycles", "find"): _cmd_cycles_find,
    ("cycles", "oracle"): _cmd_cycles_oracle,
    ("sumset", "build"): _cmd_sumset_build,
    ("sumset", "search"): _cmd_sumset_search,
}

# errors that mean the input violated a documented precondition
_INPUT_ERRORS = (UsageError, GraphError, TL.PreconditionError, C.SequenceError, Y.CycleError, OverflowError)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    seed = getattr(a, "seed", 0)
    timing = getattr(a, "timing", False)
    report = RunReport(argv, seed)
    start = time.perf_counter()
    handler = _cmd_verify if a.group == "verify" else HANDLERS[(a.group, a.command)]
    try:
        payload = handler(a, report)
    except K.CriticalityError as exc:
        # the input is well-formed but not critical / not orderable: a failed check
        report.records.append(Record("criticality", True, str(exc), False))
        payload = {}
    except _INPUT_ERRORS as exc:
        print(f"treecycles: error: {exc}", file=sys.stderr)
        return 2
    if timing:
        report.wall_time = time.perf_counter() - start
    out = report.to_dict()
    out.update(payload)
    text = json.dumps(out, indent=2, sort_keys=True) + "\n"
    path = getattr(a, "json", None)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1
