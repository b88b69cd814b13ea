"""Many distinct cycle lengths in k-ordered graphs.

Given a vertex ordering in which every vertex but the last two has between 2
and ``k`` later neighbours (and every vertex but the first an earlier one),
two independent sources of cycles are used:

* long forward paths: a vine over a longest forward path with ``t``
  vertices closes a cycle of length in ``[t, 2t-2]``; suffixes of one longest
  path give a cycle in every dyadic range ``(2^s, 2^(s+1)]``;
* wide antichains of the reachability order: a forward-directed and a
  backward-directed tree with the antichain as common leaf set, refined so
  that all leaves sit at equal depth, yield nested "good" cycles of strictly
  decreasing length.

Reachability is stored as one Python integer per vertex, used as a bitset over
ordering positions.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .critical import VertexOrdering, critical_ordering, k_ordered_violations
from .graphs import Graph, Path
from .treelen import LengthSet

MAX_VERTICES = 50_000
ORACLE_CAP = 16


class CycleError(ValueError):
    pass


class StructureError(AssertionError):
    """A structure the proofs guarantee failed its audit."""


@dataclass(frozen=True)
class CycleCertificate:
    vertices: tuple[int, ...]
    provenance: str  # "vine", "good-cycle" or "oracle"

    @property
    def length(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {"length": self.length, "vertices": list(self.vertices), "provenance": self.provenance}


def is_cycle(g: Graph, vertices: Sequence[int]) -> bool:
    vs = list(vertices)
    if len(vs) < 3 or len(set(vs)) != len(vs):
        return False
    if not all(0 <= v < g.n for v in vs):
        return False
    return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def validate_cycle(g: Graph, cert: CycleCertificate) -> None:
    if not is_cycle(g, cert.vertices):
        raise StructureError(f"certificate {list(cert.vertices)} is not a cycle of the host graph")


# --- the forward digraph -----------------------------------------------------


class ForwardDigraph:
    """The orientation of ``g`` from earlier to later positions, with reachability.

    ``desc[v]`` has bit ``p`` set iff the vertex at position ``p`` is reachable
    from ``v`` by a forward path (``v`` itself included); ``anc[v]`` is the
    converse.  ``u <= v`` in the generated partial order iff
    ``desc[u]`` has the bit of ``v``.
    """

    def __init__(self, g: Graph, ordering: VertexOrdering):
        n = g.n
        if n > MAX_VERTICES:
            raise CycleError(f"refusing n = {n} > {MAX_VERTICES}: reachability bitsets would need ~{n * n // 8 >> 20} MiB")
        self.g = g
        self.ordering = ordering
        self.n = n
        self.order = ordering.order
        pos = ordering.positions()
        self.pos = pos
        self.fwd = [tuple(sorted((u for u in g.adjacency[v] if pos[u] > pos[v]), key=pos.__getitem__)) for v in range(n)]
        self.bwd = [tuple(sorted((u for u in g.adjacency[v] if pos[u] < pos[v]), key=pos.__getitem__)) for v in range(n)]
        desc = [0] * n
        for p in range(n - 1, -1, -1):
            v = self.order[p]
            d = 1 << p
            for u in self.fwd[v]:
                d |= desc[u]
            desc[v] = d
        anc = [0] * n
        for p in range(n):
            v = self.order[p]
            a = 1 << p
            for u in self.bwd[v]:
                a |= anc[u]
            anc[v] = a
        self.desc = desc
        self.anc = anc
        # longest forward path starting at v (edges) and its first step
        lp = [0] * n
        nxt = [-1] * n
        for p in range(n - 1, -1, -1):
            v = self.order[p]
            for u in self.fwd[v]:
                if lp[u] + 1 > lp[v]:
                    lp[v] = lp[u] + 1
                    nxt[v] = u
        self.lp_from = lp
        self.lp_next = nxt
        # longest forward path ending at v, counted in vertices
        h = [1] * n
        for p in range(n):
            v = self.order[p]
            for u in self.bwd[v]:
                if h[u] + 1 > h[v]:
                    h[v] = h[u] + 1
        self.height = h

    def bit(self, v: int) -> int:
        return 1 << self.pos[v]

    def precedes(self, u: int, v: int) -> bool:
        """``u <= v``: a forward path leads from ``u`` to ``v``."""
        return (self.desc[u] >> self.pos[v]) & 1 == 1

    def vertex_at(self, p: int) -> int:
        return self.order[p]

    def mask_of(self, vertices) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.pos[v]
        return m

    def longest_path_length(self) -> int:
        return max(self.lp_from) if self.n else 0

    def forward_path(self, u: int, v: int) -> list[int]:
        """A shortest forward path from ``u`` to ``v`` (breadth-first, earliest positions first)."""
        if not self.precedes(u, v):
            raise CycleError(f"{v} is not reachable from {u}")
        if u == v:
            return [u]
        target_anc = self.anc[v]
        pos = self.pos
        parent = {u: -1}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self.fwd[x]:
                if y not in parent and (target_anc >> pos[y]) & 1:
                    parent[y] = x
                    if y == v:
                        out = [v]
                        while out[-1] != u:
                            out.append(parent[out[-1]])
                        return out[::-1]
                    queue.append(y)
        raise StructureError("reachability bitsets disagree with the graph")

    def is_forward_path(self, vertices: Sequence[int]) -> bool:
        vs = list(vertices)
        return all(self.g.has_edge(a, b) and self.pos[a] < self.pos[b] for a, b in zip(vs, vs[1:]))


def forward_digraph(g: Graph, ordering: VertexOrdering) -> ForwardDigraph:
    return ForwardDigraph(g, ordering)


def longest_forward_path(fd: ForwardDigraph, start: Optional[int] = None) -> Path:
    """A longest forward path, from ``start`` if given, else overall (earliest start on ties)."""
    if start is None:
        best = fd.longest_path_length()
        start = next(fd.order[p] for p in range(fd.n) if fd.lp_from[fd.order[p]] == best)
    out = [start]
    while fd.lp_next[out[-1]] >= 0:
        out.append(fd.lp_next[out[-1]])
    return Path(tuple(out))


def longest_forward_path_bruteforce(fd: ForwardDigraph) -> int:
    """Exhaustive DFS over all forward paths (oracle for small graphs)."""
    best = 0

    def dfs(v: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        for u in fd.fwd[v]:
            dfs(u, length + 1)

    for v in range(fd.n):
        dfs(v, 0)
    return best


# --- vines ---------------------------------------------------------------------


@dataclass(frozen=True)
class Vine:
    base: Path
    links: tuple[Path, ...]

    @property
    def anchors(self) -> list[tuple[int, int]]:
        return [(q.start, q.end) for q in self.links]


def build_vine(fd: ForwardDigraph, base: Path) -> Vine:
    """Vine over ``base``, a longest forward path from its first vertex.

    Link ``r+1`` starts at ``a_{r+1}`` (the first vertex of ``base`` for the
    first link, then the predecessor of ``b_r``), steps to its earliest
    forward neighbour other than its successor on ``base``, and then walks
    forward (earliest neighbour each time) until it hits ``base`` at
    ``b_{r+1}``.  Links are added until ``b_r`` is the last vertex.
    """
    P = list(base.vertices)
    if len(P) < 3:
        raise CycleError("base path needs length >= 2")
    if fd.pos[P[0]] >= fd.n - 2:
        raise CycleError("base path must not start at one of the last two vertices")
    if not fd.is_forward_path(P):
        raise CycleError("base is not a forward path")
    if fd.lp_from[P[0]] != len(P) - 1:
        raise CycleError("base is not a longest forward path from its first vertex")
    idx = {v: i for i, v in enumerate(P)}
    links: list[Path] = []
    b_prev = None
    while True:
        if b_prev is None:
            a = P[0]
        elif b_prev == P[-1]:
            break
        else:
            a = P[idx[b_prev] - 1]
        succ = P[idx[a] + 1]
        cands = [c for c in fd.fwd[a] if c != succ]
        if not cands:
            raise StructureError(f"vine: a = {a} has no forward neighbour off the base path")
        walk = [a, cands[0]]
        while walk[-1] not in idx:
            step = fd.fwd[walk[-1]]
            if not step:
                raise StructureError(f"vine: forward walk stuck at {walk[-1]}")
            walk.append(step[0])
        b = walk[-1]
        if b_prev is not None and idx[b] <= idx[b_prev]:
            raise StructureError("vine: condition (2) failed, b did not advance")
        links.append(Path(tuple(walk)))
        b_prev = b
    vine = Vine(base, tuple(links))
    validate_vine(fd, vine)
    return vine


def vine_violations(fd: ForwardDigraph, vine: Vine) -> list[str]:
    P = list(vine.base.vertices)
    idx = {v: i for i, v in enumerate(P)}
    out = []
    links = vine.links
    if not links:
        return ["vine has no links"]
    for i, q in enumerate(links, 1):
        if not fd.is_forward_path(q.vertices) or len(q.vertices) < 2:
            out.append(f"link {i} is not a forward path")
            continue
        a, b = q.start, q.end
        if a not in idx or b not in idx or set(q.vertices) & set(P) != {a, b}:
            out.append(f"condition (1): link {i} meets the base outside its ends")
            continue
        if idx[b] - idx[a] < 2:
            out.append(f"condition (1): base segment of link {i} has length < 2")
        if q.length > idx[b] - idx[a]:
            out.append(f"link {i} is longer than its base segment")
    if out:
        return out
    A = [idx[q.start] for q in links]
    B = [idx[q.end] for q in links]
    m = len(links)
    if A[0] != 0 or B[-1] != len(P) - 1:
        out.append("condition (2): first link must start at v_1 and last end at x_n")
    for i in range(m - 1):
        if not (A[i] < A[i + 1] < B[i] < B[i + 1]):
            out.append(f"condition (2): anchors of links {i + 1}, {i + 2} out of order")
        if A[i + 1] != B[i] - 1:
            out.append(f"condition (3): a_{i + 2} is not the predecessor of b_{i + 1}")
        if i >= 1 and B[i - 1] > A[i + 1]:
            out.append(f"condition (2): b_{i} > a_{i + 2}")
    seen: dict[int, int] = {}
    for i, q in enumerate(links, 1):
        for v in q.vertices[1:-1]:
            if v in seen:
                out.append(f"links {seen[v]} and {i} share interior vertex {v}")
            seen[v] = i
    return out


def validate_vine(fd: ForwardDigraph, vine: Vine) -> None:
    bad = vine_violations(fd, vine)
    if bad:
        raise StructureError("; ".join(bad))


def vine_cycle(vine: Vine) -> CycleCertificate:
    """The cycle formed by the base minus the edges ``a_{j+1} b_j`` plus all links."""
    P = list(vine.base.vertices)
    adj: dict[int, list[int]] = {}

    def add(a: int, b: int) -> None:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    drop = {(vine.links[j + 1].start, vine.links[j].end) for j in range(len(vine.links) - 1)}
    for a, b in zip(P, P[1:]):
        if (a, b) not in drop:
            add(a, b)
    for q in vine.links:
        vs = q.vertices
        for a, b in zip(vs, vs[1:]):
            add(a, b)
    if any(len(nb) != 2 for nb in adj.values()):
        raise StructureError("vine union is not 2-regular")
    start = P[0]
    cyc = [start]
    prev, cur = start, adj[start][0]
    while cur != start:
        cyc.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(cyc) != len(adj):
        raise StructureError("vine union is not a single cycle")
    t = len(P)
    if not t <= len(cyc) <= 2 * t - 2:
        raise StructureError(f"vine cycle length {len(cyc)} outside [{t}, {2 * t - 2}]")
    return CycleCertificate(tuple(cyc), "vine")


def cycle_lengths_from_paths(fd: ForwardDigraph) -> tuple[LengthSet, list[Vine]]:
    """One vine cycle per dyadic scale: the suffix of a longest forward path with
    ``2^s + 1`` vertices closes a cycle of length in ``(2^s, 2^(s+1)]``."""
    Q = list(longest_forward_path(fd).vertices)
    ell = len(Q) - 1
    if ell < 2:
        raise CycleError("need a forward path of length >= 2")
    wit: dict[int, CycleCertificate] = {}
    vines = []
    for s in range(1, ell.bit_length()):
        t = 1 << s
        suffix = Path(tuple(Q[ell - t :]))
        vine = build_vine(fd, suffix)
        cert = vine_cycle(vine)
        if not t < cert.length <= 2 * t:
            raise StructureError(f"scale {s}: cycle length {cert.length} outside ({t}, {2 * t}]")
        vines.append(vine)
        wit.setdefault(cert.length, cert)
    return LengthSet.from_witnesses(wit), vines


# --- antichains and directed trees -------------------------------------------


def large_antichain(fd: ForwardDigraph) -> list[int]:
    """The largest level of the height function (longest forward path ending at ``v``).

    Vertices of equal height are pairwise incomparable, and there are at most
    ``c`` levels when forward paths have at most ``c`` vertices, so the
    largest level has at least ``n / c`` vertices.
    """
    levels: dict[int, list[int]] = {}
    for p in range(fd.n):
        v = fd.order[p]
        levels.setdefault(fd.height[v], []).append(v)
    best = max(sorted(levels), key=lambda h: len(levels[h]))
    return levels[best]


def antichain_violations(fd: ForwardDigraph, L: Sequence[int]) -> list[str]:
    mask = fd.mask_of(L)
    out = []
    if len(set(L)) != len(L):
        out.append("antichain has repeated vertices")
    for v in L:
        if fd.desc[v] & mask != fd.bit(v):
            out.append(f"vertex {v} is comparable to another antichain member")
            break
    c = max(fd.height) if fd.n else 0
    if len(L) * c < fd.n:
        out.append(f"antichain size {len(L)} < n / c = {fd.n}/{c}")
    return out


@dataclass
class DirectedTree:
    """Subtree of the host graph given by parent pointers.

    ``direction`` is ``"forward"`` (root is the minimum, edges go to later
    positions) or ``"backward"`` (root is the maximum).
    """

    root: int
    parent: dict[int, int]
    direction: str
    fair_depth: Optional[int] = None
    _children: Optional[dict[int, list[int]]] = field(default=None, repr=False, compare=False)

    @property
    def vertices(self) -> list[int]:
        return list(self.parent)

    def children(self) -> dict[int, list[int]]:
        if self._children is None:
            ch: dict[int, list[int]] = {v: [] for v in self.parent}
            for v, p in self.parent.items():
                if p >= 0:
                    ch[p].append(v)
            for lst in ch.values():
                lst.sort()
            self._children = ch
        return self._children

    def leaves(self) -> list[int]:
        ch = self.children()
        if len(self.parent) == 1:
            return [self.root]
        return sorted(v for v, c in ch.items() if not c)

    def depth(self, v: int) -> int:
        d = 0
        while self.parent[v] >= 0:
            v = self.parent[v]
            d += 1
        return d

    def root_path(self, v: int) -> list[int]:
        out = [v]
        while self.parent[out[-1]] >= 0:
            out.append(self.parent[out[-1]])
        return out

    def tree_path(self, x: int, y: int) -> list[int]:
        px = self.root_path(x)
        py = self.root_path(y)
        sy = set(py)
        i = next(i for i, v in enumerate(px) if v in sy)
        lca = px[i]
        j = py.index(lca)
        return px[: i + 1] + py[:j][::-1]

    def restrict(self, keep: Sequence[int]) -> "DirectedTree":
        """Smallest subtree with leaf set ``keep``, rooted at the branching vertex."""
        keep_set = set(keep)
        marked: set[int] = set()
        for x in keep:
            v = x
            while v >= 0 and v not in marked:
                marked.add(v)
                v = self.parent[v]
        ch = self.children()
        root = self.root
        while root not in keep_set:
            kids = [c for c in ch[root] if c in marked]
            if len(kids) != 1:
                break
            root = kids[0]
        parent = {root: -1}
        stack = [root]
        while stack:
            v = stack.pop()
            if v in keep_set and v != root:
                continue
            for c in ch[v]:
                if c in marked:
                    parent[c] = v
                    stack.append(c)
        if len(keep_set) == 1:
            parent = {next(iter(keep_set)): -1}
            root = next(iter(keep_set))
        out = DirectedTree(root, parent, self.direction)
        depths = {out.depth(x) for x in keep}
        if len(depths) == 1:
            out.fair_depth = depths.pop()
        return out


def directed_tree_violations(fd: ForwardDigraph, tree: DirectedTree, leaves: Optional[Sequence[int]] = None) -> list[str]:
    out = []
    sign = 1 if tree.direction == "forward" else -1
    if tree.parent.get(tree.root) != -1:
        out.append("root has a parent")
    for v, p in tree.parent.items():
        if p < 0:
            if v != tree.root:
                out.append(f"second root {v}")
            continue
        if p not in tree.parent or not fd.g.has_edge(p, v):
            out.append(f"tree edge {p}-{v} is not a host edge")
        elif sign * (fd.pos[v] - fd.pos[p]) <= 0:
            out.append(f"edge {p}-{v} is not monotone in the {tree.direction} direction")
    for v in tree.parent:
        # every vertex must lead back to the root without cycling
        seen = set()
        x = v
        while x >= 0 and x not in seen:
            seen.add(x)
            x = tree.parent.get(x, -2)
        if x != -1:
            out.append(f"vertex {v} does not reach the root")
            break
    ch = tree.children()
    if len(tree.parent) > 1 and len(ch[tree.root]) < 2:
        out.append("root has fewer than two children")
    if leaves is not None and sorted(tree.leaves()) != sorted(leaves):
        out.append("leaf set differs from the antichain")
    if tree.fair_depth is not None:
        if any(tree.depth(x) != tree.fair_depth for x in tree.leaves()):
            out.append(f"not fair at depth {tree.fair_depth}")
    return out


def _grow_tree(fd: ForwardDigraph, L: Sequence[int], forward: bool) -> DirectedTree:
    """Add the antichain members one at a time, keeping a directed tree."""
    below = fd.anc if forward else fd.desc  # below[x]: vertices on the root side of x

    def extreme(mask: int) -> int:
        # forward: the latest position is maximal; backward: the earliest is minimal
        p = mask.bit_length() - 1 if forward else (mask & -mask).bit_length() - 1
        return fd.order[p]

    def path(src: int, dst: int) -> list[int]:
        # a monotone path from the tree side ``src`` out to ``dst``
        return fd.forward_path(src, dst) if forward else fd.forward_path(dst, src)[::-1]

    first = L[0]
    parent = {first: -1}
    root = first
    members = fd.bit(first)
    for x in L[1:]:
        if x in parent:
            raise StructureError(f"two_trees: antichain member {x} already in the tree")
        if (below[x] >> fd.pos[root]) & 1:
            # case 1: hang a path from the extreme tree vertex on the root side of x
            v = extreme(members & below[x])
            p = path(v, x)
            if any(w in parent for w in p[1:]):
                raise StructureError("two_trees case 1: new path meets the tree")
            for a, b in zip(p, p[1:]):
                parent[b] = a
                members |= fd.bit(b)
        else:
            # case 2: new root below both the old root and x
            w = extreme(below[x] & below[root])
            p = path(w, root)
            q = path(w, x)
            if any(z in parent for z in p[:-1]) or any(z in parent for z in q) or set(p) & set(q) != {w}:
                raise StructureError("two_trees case 2: new paths are not disjoint from the tree")
            parent[w] = -1
            for a, b in zip(p, p[1:]):
                parent[b] = a
                members |= fd.bit(b)
            for a, b in zip(q, q[1:]):
                parent[b] = a
                members |= fd.bit(b)
            members |= fd.bit(w)
            root = w
    return DirectedTree(root, parent, "forward" if forward else "backward")


def two_trees(fd: ForwardDigraph, antichain: Sequence[int]) -> tuple[DirectedTree, DirectedTree]:
    """Forward-directed ``S`` and backward-directed ``T`` with leaf set exactly ``antichain``."""
    L = list(antichain)
    if not L:
        raise CycleError("antichain must be non-empty")
    S = _grow_tree(fd, L, forward=True)
    T = _grow_tree(fd, L, forward=False)
    for tree in (S, T):
        bad = directed_tree_violations(fd, tree, L)
        if bad:
            raise StructureError(f"{tree.direction} tree: " + "; ".join(bad))
    return S, T


def _largest_depth_class(tree: DirectedTree, L: Sequence[int]) -> list[int]:
    groups: dict[int, list[int]] = {}
    for x in L:
        groups.setdefault(tree.depth(x), []).append(x)
    best = max(sorted(groups), key=lambda d: len(groups[d]))
    return groups[best]


def fair_refine(
    fd: ForwardDigraph,
    S: DirectedTree,
    T: DirectedTree,
    c: int,
    allow_trivial: bool = True,
) -> tuple[list[int], DirectedTree, DirectedTree]:
    """Shrink the common leaf set so that both trees become fair.

    Keep the most common leaf depth in ``S``, then the most common depth in
    the restricted ``T``; each step loses at most a factor ``c``.  With
    ``allow_trivial`` and ``n <= c^3`` a single leaf is returned instead.
    """
    L = S.leaves()
    if sorted(L) != sorted(T.leaves()):
        raise CycleError("trees have different leaf sets")
    if allow_trivial and fd.n <= c**3:
        v = L[0]
        return [v], DirectedTree(v, {v: -1}, "forward", 0), DirectedTree(v, {v: -1}, "backward", 0)
    L1 = _largest_depth_class(S, L)
    S1 = S.restrict(L1)
    T1 = T.restrict(L1)
    L0 = _largest_depth_class(T1, L1)
    S0 = S1.restrict(L0)
    T0 = T1.restrict(L0)
    for tree in (S0, T0):
        if tree.fair_depth is None:
            raise StructureError(f"{tree.direction} tree is not fair after refinement")
        bad = directed_tree_violations(fd, tree, L0)
        if bad:
            raise StructureError(f"refined {tree.direction} tree: " + "; ".join(bad))
    return sorted(L0, key=fd.pos.__getitem__), S0, T0


def _root_branch(tree: DirectedTree) -> dict[int, int]:
    """Leaf -> child of the root it hangs below."""
    out = {}
    for x in tree.leaves():
        p = tree.root_path(x)
        out[x] = p[-2] if len(p) >= 2 else x
    return out


def _good_cycle(S: DirectedTree, T: DirectedTree, x: int, y: int) -> CycleCertificate:
    ps = S.tree_path(x, y)  # x .. lca_S .. y
    pt = T.tree_path(y, x)  # y .. lca_T .. x
    return CycleCertificate(tuple(ps + pt[1:-1]), "good-cycle")


def good_cycle_violations(fd: ForwardDigraph, cert: CycleCertificate) -> list[str]:
    """A good cycle is two internally disjoint forward paths between its
    earliest and latest vertex."""
    vs = list(cert.vertices)
    if not is_cycle(fd.g, vs):
        return ["not a cycle"]
    i = min(range(len(vs)), key=lambda j: fd.pos[vs[j]])
    vs = vs[i:] + vs[:i]
    j = max(range(len(vs)), key=lambda j: fd.pos[vs[j]])
    arc1 = vs[: j + 1]
    arc2 = [vs[0]] + vs[j:][::-1]
    if not (fd.is_forward_path(arc1) and fd.is_forward_path(arc2)):
        return ["arcs between the extreme vertices are not both forward paths"]
    return []


def good_cycles(fd: ForwardDigraph, S0: DirectedTree, T0: DirectedTree, delta: int) -> list[CycleCertificate]:
    """Nested good cycles of strictly decreasing length.

    While more than ``delta`` leaves remain, take the root child of ``S``
    holding most leaves; some leaf below it and some leaf elsewhere are also
    separated at the root of ``T``, and those two leaves close a cycle through
    both roots, of length ``2 d_S + 2 d_T``.  Then recurse on the leaves below
    that child.  With at most ``delta`` leaves left, any two leaves close the
    last cycle.
    """
    L = S0.leaves()
    if len(L) < 2:
        raise CycleError("need at least two leaves")
    if sorted(L) != sorted(T0.leaves()):
        raise CycleError("trees have different leaf sets")
    S, T = S0, T0
    out: list[CycleCertificate] = []
    while True:
        for tree in (S, T):
            if tree.fair_depth is None:
                raise StructureError(f"{tree.direction} tree is not fair")
        if max(len(c) for c in S.children().values()) > delta:
            raise CycleError(f"forward tree has a vertex with more than {delta} children")
        L = S.leaves()
        bs = _root_branch(S)
        bt = _root_branch(T)
        top = 2 * S.fair_depth + 2 * T.fair_depth
        if len(L) <= delta:
            pair = next(
                ((x, y) for i, x in enumerate(L) for y in L[i + 1 :] if bs[x] != bs[y] and bt[x] != bt[y]),
                (L[0], L[1]),
            )
            out.append(_good_cycle(S, T, *pair))
            break
        groups: dict[int, list[int]] = {}
        for x in L:
            groups.setdefault(bs[x], []).append(x)
        big = max(sorted(groups, key=fd.pos.__getitem__), key=lambda r: len(groups[r]))
        inside = groups[big]
        inside_set = set(inside)
        outside = [x for x in L if x not in inside_set]
        pair = None
        by_t_in: dict[int, int] = {}
        for x in inside:
            by_t_in.setdefault(bt[x], x)
        for y in outside:
            for branch, x in by_t_in.items():
                if branch != bt[y]:
                    pair = (x, y)
                    break
            if pair:
                break
        if pair is None:
            raise StructureError("good_cycles: no pair of leaves separated at both roots")
        cert = _good_cycle(S, T, *pair)
        if cert.length != top:
            raise StructureError(f"good_cycles: top cycle has length {cert.length}, expected {top}")
        out.append(cert)
        S = S.restrict(inside)
        T = T.restrict(inside)
    lengths = [c.length for c in out]
    if any(a <= b for a, b in zip(lengths, lengths[1:])):
        raise StructureError("good cycle lengths are not strictly decreasing")
    for cert in out:
        bad = good_cycle_violations(fd, cert)
        if bad:
            raise StructureError("good_cycles: " + "; ".join(bad))
    return out


# --- the driver ----------------------------------------------------------------


def cycle_count_bound(n: int, k: int) -> float:
    return math.log2(n) / (3 + math.log2(k)) - 2


def good_cycle_bound(leaves: int, k: int) -> float:
    return math.log(leaves) / math.log(k)


@dataclass
class PipelineRun:
    """Everything one run of the driver built, for auditing."""

    n: int
    k: int
    c: int  # vertices on a longest forward path
    ordering: VertexOrdering
    vines: list[Vine]
    vine_cycles: list[CycleCertificate]
    antichain: list[int]
    S: Optional[DirectedTree]
    T: Optional[DirectedTree]
    L0: list[int]
    S0: Optional[DirectedTree]
    T0: Optional[DirectedTree]
    good: list[CycleCertificate]
    lengths: LengthSet


def cycle_pipeline(g: Graph, k: int, ordering: Optional[VertexOrdering] = None) -> PipelineRun:
    """Run both branches and audit every intermediate structure."""
    if g.n < k + 1:
        raise CycleError(f"need n >= k + 1 = {k + 1}")
    if ordering is None:
        ordering = critical_ordering(g, k)
    bad = k_ordered_violations(g, ordering, k)
    if bad:
        raise CycleError("ordering is not k-ordered: " + "; ".join(bad[:3]))
    fd = ForwardDigraph(g, ordering)
    wit: dict[int, CycleCertificate] = {}
    vine_set, vines = cycle_lengths_from_paths(fd)
    vine_certs = [vine_set.witnesses[x] for x in vine_set.lengths]
    for cert in vine_certs:
        validate_cycle(g, cert)
        wit.setdefault(cert.length, cert)
    c = max(fd.height)
    L = large_antichain(fd)
    bad = antichain_violations(fd, L)
    if bad:
        raise StructureError("; ".join(bad))
    S = T = S0 = T0 = None
    L0: list[int] = []
    good: list[CycleCertificate] = []
    S, T = two_trees(fd, L)
    L0, S0, T0 = fair_refine(fd, S, T, c, allow_trivial=False)
    if len(L0) >= 2:
        good = good_cycles(fd, S0, T0, k)
        if len(good) < math.ceil(good_cycle_bound(len(L0), k) - 1e-9):
            raise StructureError(f"{len(good)} good cycles < log|L0|/log k with |L0| = {len(L0)}")
        for cert in good:
            validate_cycle(g, cert)
            wit.setdefault(cert.length, cert)
    return PipelineRun(g.n, k, c, ordering, vines, vine_certs, L, S, T, L0, S0, T0, good, LengthSet.from_witnesses(wit))


def many_cycle_lengths(g: Graph, k: int, ordering: Optional[VertexOrdering] = None) -> LengthSet:
    """Distinct cycle lengths of a k-ordered graph, each with a certificate."""
    return cycle_pipeline(g, k, ordering).lengths


# --- exact oracle ----------------------------------------------------------------


def cycle_length_oracle(g: Graph) -> LengthSet:
    """All cycle lengths of ``g`` (``n <= 16``), each with a certificate.

    For every start vertex ``s`` a subset dynamic program records which
    vertices can end a path from ``s`` through exactly a given set of larger
    vertices; a cycle of length ``|set|`` closes whenever such an end is
    adjacent to ``s``.
    """
    n = g.n
    if n > ORACLE_CAP:
        raise CycleError(f"refusing n = {n} > oracle cap {ORACLE_CAP}")
    nb = [0] * n
    for v in range(n):
        for u in g.adjacency[v]:
            nb[v] |= 1 << u
    found: dict[int, tuple[int, int, int, dict]] = {}
    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        ends: dict[int, int] = {1 << s: 1 << s}
        frontier = [1 << s]
        size = 1
        while frontier:
            nxt_ends: dict[int, int] = {}
            for mask in frontier:
                e = ends[mask]
                x = e
                while x:
                    v = (x & -x).bit_length() - 1
                    x &= x - 1
                    if size >= 3 and (nb[v] >> s) & 1 and size not in found:
                        found[size] = (s, mask, v, ends)
                    y = nb[v] & allowed & ~mask
                    while y:
                        u = (y & -y).bit_length() - 1
                        y &= y - 1
                        m2 = mask | (1 << u)
                        nxt_ends[m2] = nxt_ends.get(m2, 0) | (1 << u)
            ends.update(nxt_ends)
            frontier = list(nxt_ends)
            size += 1
    wit = {}
    for length, (s, mask, v, ends) in found.items():
        path = [v]
        while mask != 1 << s:
            mask &= ~(1 << path[-1])
            prev = path[-1]
            cand = ends[mask] & nb[prev]
            path.append((cand & -cand).bit_length() - 1)
        cert = CycleCertificate(tuple(path[::-1]), "oracle")
        validate_cycle(g, cert)
        wit[length] = cert
    return LengthSet.from_witnesses(wit)
