"""Acceptance checks shared by the test suite and the ``verify`` subcommand.

Each check returns :class:`Record` rows ``{name, bound, observed, pass}``; a
failed check is a row with ``pass = False``, never an exception.  Every random
corpus is drawn from ``random.Random(seed)`` so reports are reproducible.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import constructions as C
from . import critical as K
from . import cycles as Y
from . import treelen as TL
from .generators import complete_graph, perfect_distance_tree, random_13_tree, random_spine_13_tree, random_tree
from .graphs import Graph, Path, bfs_distances

PROFILES = ("quick", "full")
SUITES = ("treelen", "critical", "cycles")
FAULTS = ("drop-length",)


@dataclass
class Record:
    name: str
    bound: object
    observed: object
    passed: bool
    criterion: int = 0

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "bound": self.bound,
            "observed": self.observed,
            "pass": bool(self.passed),
        }


@dataclass
class RunReport:
    command: list[str]
    seed: int
    records: list[Record] = field(default_factory=list)
    input_digest: Optional[str] = None
    artifacts: list[str] = field(default_factory=list)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "seed": self.seed,
            "input_digest": self.input_digest,
            "pass": self.passed,
            "records": [r.to_dict() for r in self.records],
            "artifacts": self.artifacts,
        }
        if self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def _drop_one(ls: TL.LengthSet) -> TL.LengthSet:
    last = ls.lengths[-1]
    return TL.LengthSet(ls.lengths[:-1], {k: v for k, v in ls.witnesses.items() if k != last})


def _all_pairs_leaf_lengths(t) -> set[int]:
    leaves = t.leaves()
    out = set()
    for x in leaves:
        d = bfs_distances(t, x)
        out.update(d[y] for y in leaves)
    return out


# --- criterion 1: exhaustive small 1-3 trees ----------------------------------


def check_exhaustive_13(max_n: int = 22, fault: Optional[str] = None) -> list[Record]:
    recs = []
    fault_left = fault == "drop-length"
    for n in range(2, max_n + 1, 2):
        bound = TL.ceil_bound(math.log2(n + 2) - 1)
        worst = None
        count = 0
        agree = True
        for t in TL.enumerate_13_trees(n):
            count += 1
            ls = TL.leaf_lengths(t)
            if fault_left and len(ls) > 1:
                ls = _drop_one(ls)
                fault_left = False
            if ls.as_set() != _all_pairs_leaf_lengths(t) or not TL.verify_witnesses(t, ls):
                agree = False
            worst = len(ls) if worst is None else min(worst, len(ls))
        recs.append(Record(f"1-3 trees n={n}: min #lengths ({count} trees)", bound, worst, worst >= bound, 1))
        recs.append(Record(f"1-3 trees n={n}: leaf_lengths equals all-pairs oracle", True, agree, agree, 1))
    for d in (2, 3):
        n = 3 * 2**d - 2
        if n > max_n:
            continue
        t = perfect_distance_tree(3, d)
        got = len(TL.leaf_lengths(t))
        recs.append(Record(f"tightness n={n}: perfect-distance tree lengths", d + 1, got, got == d + 1, 1))
    return recs


# --- criterion 2: random bounded-degree trees -----------------------------------


def check_random_trees(count: int, seed: int) -> list[Record]:
    rng = random.Random(seed)
    done = failures = bad_witness = 0
    worst_margin = math.inf
    while done < count:
        delta = rng.randint(3, 6)
        t = random_tree(rng.randint(4, 80), delta, rng)
        D = t.max_degree()
        if D < 3:
            continue
        done += 1
        ls = TL.many_lengths(t)
        bound = TL.lengths_bound(D, len(t.leaves()))
        worst_margin = min(worst_margin, len(ls) - bound)
        if len(ls) < bound - TL.EPS:
            failures += 1
        if not TL.verify_witnesses(t, ls):
            bad_witness += 1
    return [
        Record(f"{count} random trees, delta in [3,6]: bound violations", 0, failures, failures == 0, 2),
        Record(f"{count} random trees: minimum (count - bound)", ">= -1e-9", round(worst_margin, 6), worst_margin >= -TL.EPS, 2),
        Record(f"{count} random trees: invalid witnesses", 0, bad_witness, bad_witness == 0, 2),
    ]


# --- criterion 3: the sumset construction -----------------------------------------


def check_sumset(ks=(1, 2, 3), count_ks=(1, 2)) -> list[Record]:
    recs = []
    for k in ks:
        pair = C.sumset_uv(k)
        m = 13**k
        diff_ok = C.diffset(pair.U, pair.V) == set(range(1, m + 1))
        size = len(C.sumset(pair.U, pair.V))
        recs.append(Record(f"k={k}: U - V = [13^k]", m, len(C.diffset(pair.U, pair.V)), diff_ok, 3))
        recs.append(Record(f"k={k}: |U + V|", 10**k, size, size == 10**k, 3))
    beta = math.log(10) / math.log(13)
    for k in count_ks:
        m = 13**k
        M = math.floor(m ** (2 - beta))
        n = 2 * M
        spec = C.sequence_from_sumset(C.sumset_uv(k))
        analytic, brute = C.count_short_lengths(spec, n, M)
        recs.append(Record(f"k={k}: short lengths <= M={M} on T_{n}", 13 * m, brute, brute <= 13 * m, 3))
        recs.append(Record(f"k={k}: analytic count covers brute count", f">= {brute}", analytic, analytic >= brute, 3))
    return recs


# --- criterion 4: staircase trees -------------------------------------------------


def staircase_instances(m: int) -> list[int]:
    """Tree sizes ``n`` for the staircase sequence: every first-period prefix
    length ``t`` for which ``n = 2(S - 2^{a'_t} + 1)`` is consistent, plus two
    sizes spanning several periods."""
    spec = C.staircase_sequence(m)
    vals = spec.values
    ns = []
    for t in range(1, len(vals) + 1):
        n = 2 * (t + 2 + sum((1 << a) - 1 for a in vals[: t - 1]))
        if C.SpineLayout.of(spec, n).t == t:
            ns.append(n)
    period = 2 + sum(1 << a for a in vals)
    ns.append((3 * period + 2 * (period // 7)) & ~1)
    ns.append(5 * period)
    return ns


def check_staircase(Ns=(512, 1000)) -> list[Record]:
    recs = []
    for N in Ns:
        m = TL.icbrt(N)
        spec = C.staircase_sequence(m)
        worst = 0
        ns = staircase_instances(m)
        for n in ns:
            lay = C.SpineLayout.of(spec, n)
            for j, cls in lay.leaf_classes():
                worst = max(worst, len(lay.witnessed_profile(j, cls, N)))
        ok = worst**3 <= 8000 * N * N  # worst <= 20 N^(2/3), in integers
        recs.append(
            Record(f"N={N}, m={m}: max lengths witnessed by one leaf over {len(ns)} sizes", f"<= 20*N^(2/3) = {20 * N ** (2 / 3):.1f}", worst, ok, 4)
        )
    return recs


# --- criterion 5: short lengths in long trees ---------------------------------------


def check_short_lengths(Ns=(256, 1024), trees: int = 50, seed: int = 0) -> list[Record]:
    rng = random.Random(seed)
    recs = []
    for N in Ns:
        bound = TL.short_lengths_bound(N)
        worst = None
        invalid = 0
        for i in range(trees):
            deep = {rng.randrange(1, N // 2): rng.randint(2, 9)} if i % 3 == 0 else None
            t = random_spine_13_tree(N // 2 + rng.randrange(8), rng, max_splits=rng.randint(0, 8), deep_at=deep)
            rep = TL.short_lengths(t, N)
            dist = bfs_distances(t, rep.leaf)
            for length, (x, y) in rep.lengths.witnesses.items():
                if x != rep.leaf or not t.is_leaf(y) or dist[y] != length or length > N:
                    invalid += 1
            worst = len(rep) if worst is None else min(worst, len(rep))
        recs.append(Record(f"N={N}: min single-leaf lengths over {trees} trees", f">= {bound:.3f}", worst, worst >= bound - TL.EPS, 5))
        recs.append(Record(f"N={N}: lengths failing BFS validation", 0, invalid, invalid == 0, 5))
    return recs


# --- criterion 6: bounded sequences and monotone subsequences -----------------


def check_sequences(count: int, seed: int, es_max_len: int = 9) -> list[Record]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        m = rng.randint(1, 40)
        n = rng.randint(1, 120)
        seq = [rng.randint(0, m) for _ in range(n)]
        w = TL.shifted_values(seq, m)
        shifted = [seq[i - 1] + i if w.mode == "sum" else seq[i - 1] - i for i in w.indices]
        if len(set(shifted)) != len(shifted) or len(w) < n / (4 * math.sqrt(m)) - TL.EPS:
            bad += 1
    es_bad = es_total = 0
    for length in range(1, es_max_len + 1):
        need = math.isqrt(length - 1) + 1  # ceil(sqrt(length))
        for seq in itertools.product((0, 1, 2), repeat=length):
            es_total += 1
            run = TL.monotone_subsequence(seq)
            vals = [seq[i] for i in run.indices]
            sorted_ok = vals == sorted(vals) if run.increasing else vals == sorted(vals, reverse=True)
            if not sorted_ok or len(vals) < need or run.indices != sorted(set(run.indices)):
                es_bad += 1
    return [
        Record(f"{count} random sequences: witnesses below n/(4 sqrt m)", 0, bad, bad == 0, 6),
        Record(f"monotone subsequences, all {es_total} {{0,1,2}}-sequences of length <= {es_max_len}", 0, es_bad, es_bad == 0, 6),
    ]


# --- criterion 7: criticality ------------------------------------------------------


def _critical_corpus(count: int, rng: random.Random) -> list[tuple[Graph, int]]:
    out = []
    while len(out) < count:
        n = rng.randint(4, 9)
        k = rng.choice((3, 3, 4))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        target = K.critical_edge_count(n, k)
        kind = rng.random()
        if kind < 0.6 and 0 <= target <= len(pairs):
            edges = rng.sample(pairs, target)  # right edge count, random structure
        else:
            edges = [p for p in pairs if rng.random() < rng.random()]
        out.append((Graph.from_edges(n, edges), k))
    return out


def apex_graphs(max_n: int) -> list[Graph]:
    """Apex graphs over every 1-3 tree whose apex graph has at most ``max_n`` vertices."""
    return [K.apex_from_13_tree(t) for n in range(2, max_n - 1, 2) for t in TL.enumerate_13_trees(n)]


def check_criticality(corpus: int, seed: int, apex_tree_max: int = 24) -> list[Record]:
    rng = random.Random(seed)
    disagree = positives = 0
    graphs = _critical_corpus(corpus, rng) + [(g, 3) for g in apex_graphs(9)]
    for g, k in graphs:
        fast = K.check_critical(g, k).verdict
        slow = K.check_critical_naive(g, k)
        positives += slow
        if fast != slow:
            disagree += 1
    failing = total = 0
    for n in range(2, apex_tree_max + 1, 2):
        for t in TL.enumerate_13_trees(n):
            total += 1
            if not K.check_critical(K.apex_from_13_tree(t), 3).verdict:
                failing += 1
    return [
        Record(f"check_critical vs naive oracle on {len(graphs)} graphs ({positives} critical)", 0, disagree, disagree == 0, 7),
        Record(f"apex graphs over all {total} 1-3 trees with n <= {apex_tree_max} not 3-critical", 0, failing, failing == 0, 7),
    ]


# --- criterion 8: the peeling order -----------------------------------------------------


def check_orderings(seed: int, random_trees: int = 200) -> list[Record]:
    rng = random.Random(seed)
    inputs: list[tuple[Graph, int]] = [(complete_graph(k + 1), k) for k in range(3, 8)]
    inputs += [(g, 3) for g in apex_graphs(16)]
    for _ in range(random_trees):
        inputs.append((K.apex_from_13_tree(random_13_tree(2 * rng.randint(1, 200), rng)), 3))
    bad = 0
    for g, k in inputs:
        if not K.check_critical(g, k).verdict:
            continue
        o = K.critical_ordering(g, k)
        if list(o.forward_degrees) != K.expected_dplus(g.n, k) or sum(o.forward_degrees) != K.critical_edge_count(g.n, k):
            bad += 1
        if not K.is_k_ordered(g, o, k):
            bad += 1
    return [Record(f"d+ profile, edge sum and k-ordered on {len(inputs)} critical inputs", 0, bad, bad == 0, 8)]


# --- criteria 9 and 10: cycles ------------------------------------------------------------


def _structural_audit(run: Y.PipelineRun, g: Graph) -> list[str]:
    """Re-check every structure of a pipeline run independently."""
    fd = Y.ForwardDigraph(g, run.ordering)
    out = []
    for vine, cert in zip(run.vines, run.vine_cycles):
        out += Y.vine_violations(fd, vine)
        t = len(vine.base.vertices)
        if not t <= cert.length <= 2 * t - 2:
            out.append("vine cycle length outside [t, 2t-2]")
    out += Y.antichain_violations(fd, run.antichain)
    if run.S is not None:
        out += Y.directed_tree_violations(fd, run.S, run.antichain)
        out += Y.directed_tree_violations(fd, run.T, run.antichain)
    if run.S0 is not None:
        for tree in (run.S0, run.T0):
            if tree.fair_depth is None:
                out.append("refined tree is not fair")
            out += Y.directed_tree_violations(fd, tree, run.L0)
    if len(run.L0) >= 2:
        need = TL.ceil_bound(Y.good_cycle_bound(len(run.L0), run.k))
        if len(run.good) < need:
            out.append(f"{len(run.good)} good cycles < {need}")
        for cert in run.good:
            out += Y.good_cycle_violations(fd, cert)
    for length in run.lengths:
        if not Y.is_cycle(g, run.lengths.witnesses[length].vertices) or run.lengths.witnesses[length].length != length:
            out.append(f"certificate for length {length} invalid")
    return out


def cycle_test_graphs(sizes, seed: int) -> list[tuple[str, Graph]]:
    rng = random.Random(seed)
    out = []
    for n in sizes:
        tree, _ = C.build_tree(C.SequenceSpec.constant(1), n)
        out.append((f"apex over T_{n}((1))", K.apex_from_13_tree(tree)))
        out.append((f"apex over random 1-3 tree n={n}", K.apex_from_13_tree(random_13_tree(n, rng))))
    return out


def check_cycles(sizes, seed: int, oracle_max: int = 16, fault: Optional[str] = None) -> list[Record]:
    recs = []
    audit_failures: list[str] = []
    runs = 0
    for name, g in cycle_test_graphs(sizes, seed):
        run = Y.cycle_pipeline(g, 3)
        runs += 1
        lengths = run.lengths
        if fault == "drop-length":
            lengths = _drop_one(lengths)
        bound = TL.ceil_bound(Y.cycle_count_bound(g.n, 3))
        valid = all(Y.is_cycle(g, lengths.witnesses[x].vertices) and lengths.witnesses[x].length == x for x in lengths)
        recs.append(Record(f"{name} (|V|={g.n}): distinct cycle lengths", bound, len(lengths), len(lengths) >= bound and len(lengths) > 0, 9))
        recs.append(Record(f"{name}: every certificate a genuine cycle", True, valid, valid, 9))
        built = sorted({c.length for c in run.vine_cycles + run.good})
        recs.append(Record(f"{name}: reported lengths equal certified lengths", len(built), len(lengths), list(lengths) == built, 9))
        audit_failures += [f"{name}: {msg}" for msg in _structural_audit(run, g)]
    small = [("K_4", complete_graph(4))] + [(f"apex #{i}", g) for i, g in enumerate(apex_graphs(oracle_max))]
    not_subset = 0
    for name, g in small:
        run = Y.cycle_pipeline(g, 3)
        runs += 1
        if not run.lengths.as_set() <= Y.cycle_length_oracle(g).as_set():
            not_subset += 1
        audit_failures += [f"{name}: {msg}" for msg in _structural_audit(run, g)]
    recs.append(Record(f"{len(small)} graphs with n <= {oracle_max}: output not within oracle", 0, not_subset, not_subset == 0, 9))
    recs.append(Record(f"structural audit over {runs} pipeline runs", 0, len(audit_failures), not audit_failures, 10))
    caught = fault_injection_selftest(seed)
    recs.append(Record("fault injection: corrupted structures rejected", len(caught), sum(caught.values()), all(caught.values()), 10))
    return recs


def fault_injection_selftest(seed: int = 0) -> dict[str, bool]:
    """Corrupt each kind of structure and confirm its validator objects."""
    rng = random.Random(seed)
    g = K.apex_from_13_tree(random_13_tree(400, rng))
    run = Y.cycle_pipeline(g, 3)
    fd = Y.ForwardDigraph(g, run.ordering)
    caught = {}
    vine = run.vines[-1]
    base = list(vine.base.vertices)
    broken = Y.Vine(vine.base, vine.links[:-1] or (Path((base[0], base[1])),))
    caught["vine"] = bool(Y.vine_violations(fd, broken))
    comparable = fd.lp_next[run.antichain[0]]
    caught["antichain"] = bool(Y.antichain_violations(fd, list(run.antichain) + [comparable]))
    S0 = run.S0
    wrong = Y.DirectedTree(S0.root, dict(S0.parent), S0.direction, (S0.fair_depth or 0) + 1)
    caught["fair-tree"] = bool(Y.directed_tree_violations(fd, wrong, run.L0))
    flipped = Y.DirectedTree(S0.root, dict(S0.parent), "backward", S0.fair_depth)
    caught["tree-direction"] = bool(Y.directed_tree_violations(fd, flipped, run.L0))
    cert = run.lengths.witnesses[run.lengths.lengths[-1]]
    vs = list(cert.vertices)
    vs[1], vs[2] = vs[2], vs[1]
    caught["certificate"] = not Y.is_cycle(g, vs)
    try:
        Y.good_cycles(fd, run.S0, run.T0, 1)
        caught["good-cycle-degree"] = False
    except Y.CycleError:
        caught["good-cycle-degree"] = True
    return caught


# --- driver -----------------------------------------------------------------------------------


def _plan(profile: str, seed: int, fault: Optional[str]) -> dict[str, list[Callable[[], list[Record]]]]:
    full = profile == "full"
    return {
        "treelen": [
            lambda: check_exhaustive_13(22 if full else 18, fault),
            lambda: check_random_trees(10_000 if full else 1_000, seed),
            lambda: check_sumset((1, 2, 3), (1, 2) if full else (1,)),
            lambda: check_staircase((512, 1000) if full else (512,)),
            lambda: check_short_lengths((256, 1024), 50 if full else 10, seed),
            lambda: check_sequences(10_000 if full else 1_000, seed, 9 if full else 7),
        ],
        "critical": [
            lambda: check_criticality(1_000 if full else 200, seed, 24 if full else 16),
            lambda: check_orderings(seed, 200 if full else 30),
        ],
        "cycles": [
            lambda: check_cycles((2**10, 2**12, 2**15) if full else (2**10, 2**12), seed, 16 if full else 12, fault),
        ],
    }


def verify_all(
    profile: str = "quick",
    seed: int = 0,
    inject_fault: Optional[str] = None,
    suites=SUITES,
    command: Optional[list[str]] = None,
    timing: bool = False,
) -> RunReport:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    if inject_fault is not None and inject_fault not in FAULTS:
        raise ValueError(f"unknown fault {inject_fault!r}")
    start = time.perf_counter()
    report = RunReport(command or ["verify", *suites, f"--profile={profile}"], seed)
    plan = _plan(profile, seed, inject_fault)
    for suite in suites:
        for check in plan[suite]:
            try:
                report.records.extend(check())
            except Exception as exc:  # a crash is a failed record, not an aborted run
                report.records.append(Record(f"{suite}: {type(exc).__name__}: {exc}", "no error", "error", False))
    if timing:
        report.wall_time = time.perf_counter() - start
    return report
