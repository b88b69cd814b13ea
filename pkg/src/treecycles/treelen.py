"""Leaf-to-leaf path lengths in trees.

Exact length sets by breadth-first search, plus the constructive finders:
a same-depth witness descent, the leaf-count induction giving
``log_{D-1}((D-2) * leaves)`` lengths for maximum degree ``D``, the
Erdos-Szekeres / shifted-values machinery, and the short-lengths finder for
trees without degree-2 vertices.  Every length a finder reports comes with the
leaf pair that realizes it.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, NamedTuple, Optional, Sequence

from .graphs import Graph, RootedTree, Tree, bfs_distances, _Complement

EPS = 1e-9


class PreconditionError(ValueError):
    pass


def ceil_bound(x: float) -> int:
    """Smallest integer count meeting the real bound ``x`` (with float slack)."""
    return max(0, math.ceil(x - EPS))


@dataclass(frozen=True)
class LengthSet:
    """Sorted distinct lengths, each optionally backed by a certificate.

    For trees the certificate is a leaf pair ``(x, y)`` with ``d(x, y)`` equal
    to the length; for cycles it is a :class:`~treecycles.cycles.CycleCertificate`.
    """

    lengths: tuple[int, ...]
    witnesses: Mapping[int, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def from_witnesses(cls, witnesses: Mapping[int, Any]) -> "LengthSet":
        return cls(tuple(sorted(witnesses)), dict(witnesses))

    def __len__(self) -> int:
        return len(self.lengths)

    def __iter__(self) -> Iterator[int]:
        return iter(self.lengths)

    def __contains__(self, x: object) -> bool:
        return x in set(self.lengths)

    def as_set(self) -> set[int]:
        return set(self.lengths)

    def capped(self, max_len: int) -> "LengthSet":
        keep = {k: v for k, v in self.witnesses.items() if k <= max_len}
        return LengthSet(tuple(x for x in self.lengths if x <= max_len), keep)


@dataclass(frozen=True)
class WitnessReport:
    leaf: int
    lengths: LengthSet

    def __len__(self) -> int:
        return len(self.lengths)


class MonotoneRun(NamedTuple):
    indices: list[int]
    increasing: bool  # True: non-decreasing values, False: non-increasing


@dataclass(frozen=True)
class SequenceWitness:
    """Indices whose shifted values ``a_i + i`` (mode ``"sum"``) or ``a_i - i``
    (mode ``"difference"``) are pairwise distinct.  Indices are 1-based.

    ``core`` holds the indices found by the block/monotone-run argument before
    the witness was completed with the remaining distinct values.
    """

    indices: tuple[int, ...]
    mode: str
    values: tuple[float, ...]
    core: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.indices)


# --- exact lengths ---------------------------------------------------------


def _leaf_profile(t: Tree, leaf: int, max_len: Optional[int]) -> dict[int, int]:
    """length -> smallest partner leaf at that distance from ``leaf``."""
    adj = t.adjacency
    out = {0: leaf}
    if t.n == 1:
        return out
    seen = {leaf}
    frontier = [leaf]
    d = 0
    while frontier and (max_len is None or d < max_len):
        d += 1
        nxt = []
        best = -1
        for v in frontier:
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if len(adj[u]) == 1 and (best < 0 or u < best):
                        best = u
        if best >= 0:
            out[d] = best
        frontier = nxt
    return out


def leaf_lengths(t: Tree, max_len: Optional[int] = None) -> LengthSet:
    """All leaf-to-leaf path lengths of ``t`` (at most ``max_len`` if given)."""
    wit: dict[int, tuple[int, int]] = {}
    for x in t.leaves():
        for d, y in _leaf_profile(t, x, max_len).items():
            if d not in wit:
                wit[d] = (x, y)
    return LengthSet.from_witnesses(wit)


def witnessed_lengths(t: Tree, leaf: int, max_len: Optional[int] = None) -> WitnessReport:
    """Lengths of leaf-to-leaf paths that have ``leaf`` as an endpoint."""
    if not t.is_leaf(leaf):
        raise PreconditionError(f"vertex {leaf} is not a leaf")
    prof = _leaf_profile(t, leaf, max_len)
    return WitnessReport(leaf, LengthSet.from_witnesses({d: (leaf, y) for d, y in prof.items()}))


def lengths_bound(delta: int, leaves: int) -> float:
    """``log_{delta-1}((delta-2) * leaves)``: guaranteed count for max degree ``delta >= 3``."""
    return math.log((delta - 2) * leaves) / math.log(delta - 1)


# --- same-depth witness ----------------------------------------------------


def _descend(
    adj: Sequence[Sequence[int]],
    root: int,
    targets: Sequence[int],
    depth: int,
    blocked=None,
) -> WitnessReport:
    """Walk down from ``root`` towards the targets (all at ``depth`` below it).

    At every vertex whose subtree splits the remaining targets, follow the
    child holding the most of them and record the length ``2 * remaining``
    to a target in another child.  The leaf reached at the bottom witnesses
    all recorded lengths.
    """
    parent = {root: -1}
    frontier = [root]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if u not in parent and (blocked is None or u not in blocked):
                    parent[u] = v
                    nxt.append(u)
        frontier = nxt
    paths = {}
    for x in targets:
        if x not in parent:
            raise PreconditionError(f"leaf {x} is not at depth {depth} below root {root}")
        p = [x]
        while p[-1] != root:
            p.append(parent[p[-1]])
        if len(p) != depth + 1:
            raise PreconditionError(f"leaf {x} is not at depth {depth} below root {root}")
        p.reverse()
        paths[x] = p

    current = sorted(set(targets))
    splits: list[tuple[int, int]] = []
    for level in range(depth):
        groups: dict[int, list[int]] = defaultdict(list)
        for x in current:
            groups[paths[x][level + 1]].append(x)
        if len(groups) > 1:
            big = max(sorted(groups), key=lambda c: len(groups[c]))
            other = min(c for c in groups if c != big)
            splits.append((2 * (depth - level), groups[other][0]))
            current = groups[big]
    leaf = current[0]
    wit = {0: (leaf, leaf)}
    for length, partner in splits:
        wit[length] = (leaf, partner)
    return WitnessReport(leaf, LengthSet.from_witnesses(wit))


def same_depth_witness(rt: RootedTree, depth_leaves: Sequence[int], delta: int) -> WitnessReport:
    """One of ``depth_leaves`` together with many witnessed lengths in ``[0, 2a]``.

    All leaves must be at the same distance ``a`` from the root and the
    tree's maximum degree at most ``delta``.  The result has at least
    ``log_{delta-1}(m / delta) + 2`` lengths for ``m`` leaves, or
    ``log_{delta-1}(m) + 1`` when the root has degree below ``delta``.
    """
    t = rt.tree
    if delta < 3:
        raise PreconditionError("delta must be at least 3")
    if t.max_degree() > delta:
        raise PreconditionError(f"tree has maximum degree {t.max_degree()} > {delta}")
    if not depth_leaves:
        raise PreconditionError("need at least one leaf")
    for x in depth_leaves:
        if not t.is_leaf(x):
            raise PreconditionError(f"vertex {x} is not a leaf")
    dist = bfs_distances(t, rt.root)
    depths = {dist[x] for x in depth_leaves}
    if len(depths) != 1:
        raise PreconditionError("leaves are not all at the same depth")
    a = depths.pop()
    if a == 0 and t.n > 1:
        raise PreconditionError("leaves must be at depth >= 1")
    return _descend(t.adjacency, rt.root, depth_leaves, a)


def same_depth_bound(m: int, delta: int, root_degree: int) -> float:
    if root_degree <= delta - 1:
        return math.log(m) / math.log(delta - 1) + 1
    return math.log(m / delta) / math.log(delta - 1) + 2


# --- the leaf-count induction ----------------------------------------------


class _Sub:
    """A subtree of ``t`` given by an alive vertex set with degrees inside it."""

    def __init__(self, t: Tree):
        self.adj = t.adjacency
        self.alive = set(range(t.n))
        self.deg = [len(a) for a in t.adjacency]

    def leaves(self) -> list[int]:
        if len(self.alive) == 1:
            return list(self.alive)
        return sorted(v for v in self.alive if self.deg[v] == 1)

    def bfs(self, src: int) -> dict[int, int]:
        return bfs_distances(_AdjView(self.adj), src, blocked=_Complement(self.alive))

    def diameter_path(self) -> list[int]:
        start = min(self.alive)
        d0 = self.bfs(start)
        far = max(d0.values())
        a = min(v for v, d in d0.items() if d == far)
        parent = {a: -1}
        frontier = [a]
        dist = {a: 0}
        while frontier:
            nxt = []
            for v in frontier:
                for u in self.adj[v]:
                    if u in self.alive and u not in parent:
                        parent[u] = v
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        far = max(dist.values())
        b = min(v for v, d in dist.items() if d == far)
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        path.reverse()
        return path

    def prune_to(self, keep: set[int]) -> None:
        """Shrink to the smallest subtree containing ``keep``."""
        stack = [v for v in self.alive if self.deg[v] <= 1 and v not in keep]
        while stack and len(self.alive) > 1:
            v = stack.pop()
            if v not in self.alive:
                continue
            self.alive.discard(v)
            for u in self.adj[v]:
                if u in self.alive:
                    self.deg[u] -= 1
                    if self.deg[u] <= 1 and u not in keep:
                        stack.append(u)


class _AdjView:
    """Duck-typed stand-in for a Graph exposing only ``adjacency``."""

    __slots__ = ("adjacency",)

    def __init__(self, adjacency):
        self.adjacency = adjacency


def _center(path: list[int]) -> int:
    m = len(path) - 1
    if m % 2 == 0:
        return path[m // 2]
    return min(path[m // 2], path[m // 2 + 1])


def helly_vertex(t: Tree) -> int:
    """A non-leaf vertex lying on every longest path of ``t``.

    The centre of the tree qualifies: every longest path passes through the
    middle of any other one.  For odd diameter the smaller-index endpoint of
    the central edge is returned.  :func:`on_every_longest_path` is the
    independent check.
    """
    if t.n < 2:
        raise PreconditionError("need at least two vertices")
    return _center(_Sub(t).diameter_path())


def longest_path_length(g: Graph, removed: Optional[int] = None) -> int:
    """Largest diameter over the components of the forest ``g - removed``."""
    best = 0
    seen = set() if removed is None else {removed}
    blocked = None if removed is None else {removed}
    for s in range(g.n):
        if s in seen:
            continue
        comp = bfs_distances(g, s, blocked=blocked)
        seen.update(comp)
        far = max(comp, key=lambda v: (comp[v], -v))
        best = max(best, max(bfs_distances(g, far, blocked=blocked).values()))
    return best


def on_every_longest_path(t: Tree, v: int) -> bool:
    """``v`` is on every longest path iff deleting it shortens the longest path."""
    return longest_path_length(t, removed=v) < longest_path_length(t)


def many_lengths(t: Tree) -> LengthSet:
    """Witnessed leaf-to-leaf lengths found by the induction on the number of leaves.

    For maximum degree ``D >= 3`` and ``l`` leaves the result has at least
    ``log_{D-1}((D-2) l)`` lengths.  For ``D <= 2`` the exact set is returned.

    Each round takes the centre ``v`` of the current subtree (it lies on every
    longest path, of length ``m``).  If some leaf is farther than ``m / 2``
    from ``v``, the smaller of the two end classes of longest paths is
    deleted.  Otherwise let ``X`` be the leaves at distance ``m / 2``: when
    ``X`` is not nearly all the leaves, delete the ``X``-leaves outside the
    branch at ``v`` holding most of ``X``; when it is, finish with the
    same-depth descent from ``v``.  Deleting leaves means passing to the
    smallest subtree spanning the rest, whose longest path is shorter, so each
    round contributes the new length ``m``.
    """
    delta = t.max_degree()
    if delta <= 2:
        return leaf_lengths(t)
    q = (delta - 1) ** 2
    sub = _Sub(t)
    wit: dict[int, tuple[int, int]] = {}
    last_m = None
    while True:
        leaves = sub.leaves()
        ell = len(leaves)
        if ell == 1:
            wit[0] = (leaves[0], leaves[0])
            break
        path = sub.diameter_path()
        m = len(path) - 1
        assert last_m is None or m < last_m, "longest path did not shrink"
        last_m = m
        if ell <= delta:
            wit[0] = (leaves[0], leaves[0])
            wit[m] = (path[0], path[-1])
            break
        v = _center(path)
        dv = sub.bfs(v)
        far = max(dv[x] for x in leaves)
        if 2 * far > m:
            wit[m] = (path[0], path[-1])
            x1 = {x for x in leaves if dv[x] == far}
            x2 = {x for x in leaves if dv[x] == m - far}
            drop = x1 if len(x1) <= len(x2) else x2
            sub.prune_to(set(leaves) - drop)
            continue
        half = m // 2
        xs = [x for x in leaves if dv[x] == half]
        if len(xs) * q < (q - 1) * ell:
            wit[m] = (path[0], path[-1])
            branch_of = _branches(sub, v)
            counts: dict[int, int] = defaultdict(int)
            for x in xs:
                counts[branch_of[x]] += 1
            big = max(sorted(counts), key=lambda b: counts[b])
            drop = {x for x in xs if branch_of[x] != big}
            sub.prune_to(set(leaves) - drop)
            continue
        rep = _descend(sub.adj, v, xs, half, blocked=_Complement(sub.alive))
        for length, pair in rep.lengths.witnesses.items():
            wit.setdefault(length, pair)
        break
    return LengthSet.from_witnesses(wit)


def _branches(sub: _Sub, v: int) -> dict[int, int]:
    """Map every alive vertex other than ``v`` to the neighbour of ``v`` it hangs from."""
    out = {}
    for w in sub.adj[v]:
        if w not in sub.alive:
            continue
        stack = [w]
        out[w] = w
        while stack:
            x = stack.pop()
            for u in sub.adj[x]:
                if u != v and u in sub.alive and u not in out:
                    out[u] = w
                    stack.append(u)
    return out


# --- monotone runs and shifted values --------------------------------------


def _longest_nondecreasing(values: Sequence[float]) -> list[int]:
    tails: list[float] = []
    tail_idx: list[int] = []
    prev = [-1] * len(values)
    for i, x in enumerate(values):
        k = bisect_right(tails, x)
        if k == len(tails):
            tails.append(x)
            tail_idx.append(i)
        else:
            tails[k] = x
            tail_idx[k] = i
        prev[i] = tail_idx[k - 1] if k > 0 else -1
    out = []
    i = tail_idx[-1] if tail_idx else -1
    while i >= 0:
        out.append(i)
        i = prev[i]
    out.reverse()
    return out


def monotone_subsequence(seq: Sequence[float]) -> MonotoneRun:
    """A longest non-decreasing or non-increasing subsequence (0-based indices).

    Its length is at least ``ceil(sqrt(n))``.  Ties go to the non-decreasing run.
    """
    if not seq:
        raise PreconditionError("sequence must be non-empty")
    up = _longest_nondecreasing(seq)
    down = _longest_nondecreasing([-x for x in seq])
    if len(up) >= len(down):
        return MonotoneRun(up, True)
    return MonotoneRun(down, False)


def shifted_values(seq: Sequence[float], m: float) -> SequenceWitness:
    """Witness for ``max(|{a_i + i}|, |{a_i - i}|) >= n / (4 sqrt(m))`` (1-based ``i``).

    The core comes from the block argument: for ``m <= n/2`` split the
    indices into windows ``[2(k-1)m + 1, (2k-1)m]`` separated by gaps of
    width ``m``, take a monotone run inside each window, and pool the
    increasing runs (their ``a_i + i`` values are distinct across windows) and
    the decreasing runs (for ``a_i - i``).  For larger ``m`` one monotone run
    of the whole sequence is used.  Each branch is then completed with the
    remaining distinct values and the larger branch is returned, ties going
    to the sum branch.
    """
    if m <= 0:
        raise PreconditionError("m must be positive")
    n = len(seq)
    for i, a in enumerate(seq):
        if not 0 <= a <= m:
            raise PreconditionError(f"a_{i + 1} = {a} outside [0, {m}]")
    sum_core: list[int] = []
    diff_core: list[int] = []
    if n and m <= n / 2:
        k = 1
        while 2 * (k - 1) * m + 1 <= n:
            lo = math.ceil(2 * (k - 1) * m + 1)
            hi = min(n, math.floor((2 * k - 1) * m))
            if lo <= hi:
                run = monotone_subsequence(seq[lo - 1 : hi])
                idx = [lo + j for j in run.indices]
                (sum_core if run.increasing else diff_core).extend(idx)
            k += 1
    elif n:
        run = monotone_subsequence(seq)
        idx = [j + 1 for j in run.indices]
        (sum_core if run.increasing else diff_core).extend(idx)

    def complete(core: list[int], sign: int) -> tuple[list[int], list[float]]:
        chosen = {}
        for i in core:
            chosen.setdefault(seq[i - 1] + sign * i, i)
        for i in range(1, n + 1):
            chosen.setdefault(seq[i - 1] + sign * i, i)
        idx = sorted(chosen.values())
        return idx, [seq[i - 1] + sign * i for i in idx]

    s_idx, s_val = complete(sum_core, 1)
    d_idx, d_val = complete(diff_core, -1)
    if len(s_idx) >= len(d_idx):
        return SequenceWitness(tuple(s_idx), "sum", tuple(s_val), tuple(sum_core))
    return SequenceWitness(tuple(d_idx), "difference", tuple(d_val), tuple(diff_core))


# --- short lengths ---------------------------------------------------------


def icbrt(x: int) -> int:
    """Integer cube root (floor)."""
    r = round(x ** (1 / 3)) if x > 0 else 0
    while r ** 3 > x:
        r -= 1
    while (r + 1) ** 3 <= x:
        r += 1
    return r


def half_two_thirds(N: int) -> int:
    """``floor(N^(2/3) / 2)`` in exact integer arithmetic."""
    # largest h with (2h)^3 <= N^2
    return icbrt(N * N) // 2


def short_lengths_bound(N: int) -> float:
    return N ** (2 / 3) / 6


def _diameter_path(t: Tree) -> list[int]:
    return _Sub(t).diameter_path()


def short_lengths(t: Tree, N: int) -> WitnessReport:
    """One leaf witnessing ``Omega(N^(2/3))`` distinct lengths in ``[0, N]``.

    ``t`` must have no degree-2 vertex and a path of length at least ``N/2``.
    Along the first ``N/2`` vertices of a longest path, look at the subtree
    hanging from each path vertex.  If one of them has every leaf deeper than
    ``N^(2/3)/2``, run the same-depth descent on its most populated leaf
    layer.  Otherwise every hanging subtree has a shallow leaf at depth
    ``a_i``; the paths between these leaves have lengths
    ``a_i + a_j + j - i``, so distinct values of ``a_i + i`` (resp.
    ``a_i - i``) give distinct lengths from the first (resp. last) of them.
    """
    if N < 4 or N % 2:
        raise PreconditionError("N must be an even integer >= 4")
    degs = t.degrees()
    if any(d == 2 for d in degs):
        raise PreconditionError("tree has a vertex of degree 2")
    P = _diameter_path(t)
    M = len(P) - 1
    half = N // 2
    if M < half:
        raise PreconditionError(f"longest path has length {M} < N/2 = {half}")
    h = half_two_thirds(N)
    if h < 1:
        raise PreconditionError("N too small for a positive bound")
    on_path = set(P)
    adj = t.adjacency
    shallow: list[tuple[int, int]] = []  # (a_i, x_i)
    case1 = None
    for i in range(1, half + 1):
        vi = P[i]
        blocked = on_path - {vi}
        dist = bfs_distances(t, vi, blocked=blocked)
        hanging = [x for x in dist if x != vi and degs[x] == 1]
        if not hanging:
            # v_i is itself an end of the path: a leaf at distance 0
            shallow.append((0, vi))
            continue
        a = min(dist[x] for x in hanging)
        x = min(x for x in hanging if dist[x] == a)
        shallow.append((a, x))
        if a > h and case1 is None:
            case1 = (vi, dist, hanging, blocked)
    if case1 is not None:
        vi, dist, hanging, blocked = case1
        by_depth: dict[int, list[int]] = defaultdict(list)
        for x in hanging:
            by_depth[dist[x]].append(x)
        d = max(sorted(by_depth), key=lambda k: len(by_depth[k]))
        rep = _descend(adj, vi, by_depth[d], d, blocked=blocked)
        _verify_report(t, rep)
        return rep

    a = [s[0] for s in shallow]
    wit = shifted_values(a, h)
    lengths: dict[int, tuple[int, int]] = {}
    if wit.mode == "sum":
        leaf = shallow[0][1]
        for i in wit.indices:
            if i != 1:
                lengths[a[0] - 1 + a[i - 1] + i] = (leaf, shallow[i - 1][1])
    else:
        leaf = shallow[half - 1][1]
        for i in wit.indices:
            if i != half:
                lengths[a[half - 1] + half + a[i - 1] - i] = (leaf, shallow[i - 1][1])
    lengths[0] = (leaf, leaf)
    rep = WitnessReport(leaf, LengthSet.from_witnesses(lengths))
    _verify_report(t, rep)
    return rep


def _verify_report(t: Tree, rep: WitnessReport) -> None:
    dist = bfs_distances(t, rep.leaf)
    for length, (x, y) in rep.lengths.witnesses.items():
        if x != rep.leaf or not t.is_leaf(y) or dist[y] != length:
            raise AssertionError(f"bad witness for length {length}: {(x, y)}")


def verify_witnesses(t: Tree, ls: LengthSet) -> bool:
    """Every claimed length is the distance between its two (leaf) witnesses."""
    for length, (x, y) in ls.witnesses.items():
        if not (t.is_leaf(x) and t.is_leaf(y)):
            return False
        if bfs_distances(t, x, max_depth=length).get(y) != length:
            return False
    return set(ls.witnesses) == set(ls.lengths)


# --- enumeration of 1-3 trees ----------------------------------------------

ENUMERATION_CAP = 26


def _centroids(adj: Sequence[Sequence[int]]) -> list[int]:
    n = len(adj)
    if n == 1:
        return [0]
    order = []
    parent = [-1] * n
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        v = stack.pop()
        order.append(v)
        for u in adj[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                stack.append(u)
    size = [1] * n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    best = []
    best_w = n
    for v in range(n):
        w = n - size[v]
        for u in adj[v]:
            if u != parent[v]:
                w = max(w, size[u])
        if w < best_w:
            best, best_w = [v], w
        elif w == best_w:
            best.append(v)
    return best


def _rooted_code(adj: Sequence[Sequence[int]], root: int) -> str:
    order = []
    parent = {root: -1}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                stack.append(u)
    codes: dict[int, list[str]] = defaultdict(list)
    for v in reversed(order):
        code = "(" + "".join(sorted(codes.pop(v, []))) + ")"
        if parent[v] < 0:
            return code
        codes[parent[v]].append(code)
    raise AssertionError("unreachable")


def canonical_form(g: Graph) -> str:
    """Isomorphism invariant of a tree: lexicographically least centroid-rooted code."""
    return min(_rooted_code(g.adjacency, c) for c in _centroids(g.adjacency))


def _bounded_degree_trees(size: int, max_degree: int) -> list[list[list[int]]]:
    """Non-isomorphic trees on ``size`` vertices with degrees <= ``max_degree``,
    as adjacency lists, generated by leaf extension and canonical dedup."""
    level = {"()": [[]]}
    for _ in range(size - 1):
        nxt: dict[str, list[list[int]]] = {}
        for adj in level.values():
            k = len(adj)
            for v in range(k):
                if len(adj[v]) >= max_degree:
                    continue
                new = [list(a) for a in adj] + [[v]]
                new[v].append(k)
                code = canonical_form(_AdjView(new))
                nxt.setdefault(code, new)
        level = nxt
    return [level[c] for c in sorted(level)]


def enumerate_13_trees(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Tree]:
    """Yield every 1-3 tree on ``n`` vertices exactly once up to isomorphism.

    A 1-3 tree is determined by its subtree of internal vertices, which is an
    arbitrary tree with maximum degree 3 on ``(n - 2) / 2`` vertices.
    """
    if n % 2 or n < 2:
        raise PreconditionError("1-3 trees exist only for even n >= 2")
    if n > cap:
        raise PreconditionError(f"refusing to enumerate n = {n} > cap {cap}")
    if n == 2:
        yield Tree(2, ((1,), (0,)))
        return
    internal = (n - 2) // 2
    for adj in _bounded_degree_trees(internal, 3):
        edges = [(u, v) for u in range(internal) for v in adj[u] if u < v]
        nxt = internal
        for u in range(internal):
            for _ in range(3 - len(adj[u])):
                edges.append((u, nxt))
                nxt += 1
        assert nxt == n
        yield Tree.from_graph(Graph.from_edges(n, edges))
