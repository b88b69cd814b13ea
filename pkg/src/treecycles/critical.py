"""Degree k-critical graphs: recognition, the apex generator, and the peeling order.

A graph on ``n`` vertices is degree k-critical if it has exactly
``(k-1)n - k(k-1)/2 + 1`` edges and no proper induced subgraph of minimum
degree at least ``k``.  Every proper induced subgraph sits inside some
``G - v``, and the largest induced subgraph of ``G - v`` with minimum degree
``>= k`` is its k-core, so the second condition is one k-core computation per
vertex.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional, Sequence

from .graphs import Graph, Tree


class CriticalityError(ValueError):
    pass


def critical_edge_count(n: int, k: int) -> int:
    return (k - 1) * n - k * (k - 1) // 2 + 1


@dataclass(frozen=True)
class CriticalityReport:
    k: int
    edge_count_ok: bool
    violating_vertex: Optional[int]
    verdict: bool

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "edge_count_ok": self.edge_count_ok,
            "violating_vertex": self.violating_vertex,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class VertexOrdering:
    """``order[i]`` is the vertex at 0-based position ``i`` (``x_{i+1}``)."""

    order: tuple[int, ...]
    forward_degrees: tuple[int, ...]  # indexed by position
    backward_degrees: tuple[int, ...]

    @classmethod
    def of(cls, g: Graph, order: Sequence[int]) -> "VertexOrdering":
        order = tuple(order)
        if sorted(order) != list(range(g.n)):
            raise CriticalityError("ordering is not a permutation of the vertices")
        pos = [0] * g.n
        for i, v in enumerate(order):
            pos[v] = i
        fwd = tuple(sum(1 for u in g.adjacency[v] if pos[u] > i) for i, v in enumerate(order))
        bwd = tuple(g.degree(v) - f for v, f in zip(order, fwd))
        return cls(order, fwd, bwd)

    def positions(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos

    def reversed(self, g: Graph) -> "VertexOrdering":
        return VertexOrdering.of(g, self.order[::-1])

    def to_dict(self) -> dict:
        return {"order": list(self.order), "dplus": list(self.forward_degrees)}


def k_core(g: Graph, k: int, removed: Optional[int] = None) -> list[int]:
    """Vertices of the k-core of ``g`` (minus ``removed``), by worklist peeling."""
    deg = [len(a) for a in g.adjacency]
    alive = [True] * g.n
    stack = []
    if removed is not None:
        alive[removed] = False
        for u in g.adjacency[removed]:
            deg[u] -= 1
    for v in range(g.n):
        if alive[v] and deg[v] < k:
            alive[v] = False
            stack.append(v)
    while stack:
        v = stack.pop()
        for u in g.adjacency[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] < k:
                    alive[u] = False
                    stack.append(u)
    return [v for v in range(g.n) if alive[v]]


def check_critical(g: Graph, k: int) -> CriticalityReport:
    if k < 3:
        raise CriticalityError("k must be at least 3")
    edge_ok = g.num_edges() == critical_edge_count(g.n, k)
    violating = None
    for v in range(g.n):
        if k_core(g, k, removed=v):
            violating = v
            break
    return CriticalityReport(k, edge_ok, violating, edge_ok and violating is None)


def check_critical_naive(g: Graph, k: int) -> bool:
    """Definition check over every proper induced subgraph (exponential; small n only)."""
    if g.num_edges() != critical_edge_count(g.n, k):
        return False
    masks = [sum(1 << u for u in g.adjacency[v]) for v in range(g.n)]
    full = (1 << g.n) - 1
    for sub in range(1, full):
        ok = True
        s = sub
        while s:
            v = (s & -s).bit_length() - 1
            s &= s - 1
            if bin(masks[v] & sub).count("1") < k:
                ok = False
                break
        if ok:
            return False
    return True


def apex_from_13_tree(t: Tree) -> Graph:
    """Add two adjacent vertices ``n`` and ``n+1``, both joined to every leaf of ``t``."""
    if not t.is_13_tree():
        raise CriticalityError("input is not a 1-3 tree")
    n = t.n
    edges = list(t.edges())
    for x in t.leaves():
        edges.append((x, n))
        edges.append((x, n + 1))
    edges.append((n, n + 1))
    return Graph.from_edges(n + 2, edges)


def expected_dplus(n: int, k: int) -> list[int]:
    """The forward-degree profile of the peeling order, by 0-based position."""
    out = []
    for i in range(1, n + 1):
        if i == 1:
            out.append(k)
        elif i <= n - k + 1:
            out.append(k - 1)
        else:
            out.append(n - i)
    return out


def critical_ordering(g: Graph, k: int) -> VertexOrdering:
    """Peel a degree k-critical graph into ``x_1, ..., x_n``.

    ``x_1`` has degree ``<= k``; each following vertex has at most ``k - 1``
    neighbours among the vertices not yet taken (smallest index first); the
    last ``k - 1`` vertices go in ascending index order.  The forward-degree
    profile is then forced to be ``(k, k-1, ..., k-1, k-2, ..., 1, 0)``.
    """
    n = g.n
    if k < 3:
        raise CriticalityError("k must be at least 3")
    if n < k + 1:
        raise CriticalityError(f"need n >= k + 1 = {k + 1}")
    rem = [len(a) for a in g.adjacency]  # neighbours not yet taken
    taken = [False] * n
    heap = [v for v in range(n) if rem[v] <= k]
    heapq.heapify(heap)
    order: list[int] = []
    limit = k
    while len(order) < n - k + 1:
        v = None
        while heap:
            cand = heapq.heappop(heap)
            if not taken[cand] and rem[cand] <= limit:
                v = cand
                break
        if v is None:
            raise CriticalityError(f"no vertex qualifies at step {len(order) + 1}; input is not degree {k}-critical")
        taken[v] = True
        order.append(v)
        if limit == k:
            limit = k - 1
            heap = [u for u in range(n) if not taken[u] and rem[u] <= limit]
            heapq.heapify(heap)
        for u in g.adjacency[v]:
            if not taken[u]:
                rem[u] -= 1
                if rem[u] <= limit:
                    heapq.heappush(heap, u)
    order.extend(v for v in range(n) if not taken[v])
    ordering = VertexOrdering.of(g, order)
    want = expected_dplus(n, k)
    if list(ordering.forward_degrees) != want:
        bad = next(i for i, (a, b) in enumerate(zip(ordering.forward_degrees, want)) if a != b)
        raise CriticalityError(
            f"forward degree {ordering.forward_degrees[bad]} at position {bad + 1}, expected {want[bad]}"
        )
    return ordering


def k_ordered_violations(g: Graph, ord: VertexOrdering, k: int) -> list[str]:
    """Clauses of the k-ordered definition that fail, with 1-based positions."""
    n = g.n
    out = []
    if n < 2 or not g.has_edge(ord.order[n - 2], ord.order[n - 1]):
        out.append("last two vertices are not adjacent")
    for i in range(n - 2):
        if not 2 <= ord.forward_degrees[i] <= k:
            out.append(f"forward degree {ord.forward_degrees[i]} at position {i + 1}")
    for i in range(1, n):
        if ord.backward_degrees[i] < 1:
            out.append(f"no backward neighbour at position {i + 1}")
    return out


def is_k_ordered(g: Graph, ord: VertexOrdering, k: int) -> bool:
    return not k_ordered_violations(g, ord, k)
