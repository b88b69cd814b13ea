"""Core graph and tree model, traversals, and JSON/DOT serialization.

Vertices are the integers ``0..n-1``.  Adjacency lists are stored sorted so
that every traversal (and hence every certificate built on top of one) is
deterministic.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class GraphError(ValueError):
    """Base class for malformed or invalid graph input."""


class GraphParseError(GraphError):
    """The input bytes are not a well-formed graph document."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class GraphValidationError(GraphError):
    """The document parsed but describes something that is not a simple graph."""

    def __init__(self, message: str, edge: Optional[tuple[int, int]] = None):
        super().__init__(message if edge is None else f"{message}: edge {list(edge)}")
        self.edge = edge


class NotATreeError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphValidationError("vertex count must be non-negative")
        if len(self.adjacency) != self.n:
            raise GraphValidationError("adjacency has the wrong number of rows")
        for v, nbrs in enumerate(self.adjacency):
            prev = -1
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphValidationError("neighbour index out of range", (v, u))
                if u == v:
                    raise GraphValidationError("self-loop", (v, v))
                if u <= prev:
                    raise GraphValidationError("adjacency not sorted or has duplicates", (v, u))
                prev = u
        # symmetry is checked by edge counting, cheaper than set lookups
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not _contains(self.adjacency[u], v):
                    raise GraphValidationError("asymmetric adjacency", (v, u))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError("vertex index out of range", (u, v))
            if u == v:
                raise GraphValidationError("self-loop", (u, v))
            if v in rows[u]:
                raise GraphValidationError("duplicate edge", (min(u, v), max(u, v)))
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(tuple(sorted(r)) for r in rows))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return _contains(self.adjacency[u], v)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self, 0)) == self.n


def _contains(row: tuple[int, ...], x: int) -> bool:
    # rows are sorted; bisect keeps has_edge logarithmic on the apex vertices
    lo, hi = 0, len(row)
    while lo < hi:
        mid = (lo + hi) // 2
        if row[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(row) and row[lo] == x


class Tree(Graph):
    """A connected acyclic graph.

    The leaf set is derived from degrees.  By convention the one-vertex tree
    has a single leaf (its only vertex), which is the length-0 path.
    """

    def __post_init__(self):
        super().__post_init__()
        if self.n == 0:
            raise NotATreeError("a tree needs at least one vertex")
        if self.num_edges() != self.n - 1 or not self.is_connected():
            raise NotATreeError("graph is not a tree")

    @classmethod
    def from_graph(cls, g: Graph) -> "Tree":
        return cls(g.n, g.adjacency)

    def leaves(self) -> list[int]:
        if self.n == 1:
            return [0]
        return [v for v, a in enumerate(self.adjacency) if len(a) == 1]

    def is_leaf(self, v: int) -> bool:
        return self.n == 1 or len(self.adjacency[v]) == 1

    def is_13_tree(self) -> bool:
        return self.n >= 2 and all(len(a) in (1, 3) for a in self.adjacency)


@dataclass(frozen=True)
class RootedTree:
    tree: Tree
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.tree.n:
            raise GraphValidationError(f"root {self.root} out of range")

    def depths(self) -> list[int]:
        d = bfs_distances(self.tree, self.root)
        return [d[v] for v in range(self.tree.n)]

    def layer(self, v: int) -> int:
        return distance(self.tree, self.root, v)

    def layers(self) -> list[list[int]]:
        out: list[list[int]] = []
        for v, d in enumerate(self.depths()):
            while len(out) <= d:
                out.append([])
            out[d].append(v)
        return out


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        if not vs or len(set(vs)) != len(vs):
            return False
        return all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def bfs_distances(
    g: Graph,
    source: int,
    max_depth: Optional[int] = None,
    blocked: Optional[set[int]] = None,
) -> dict[int, int]:
    """Distances from ``source`` to every vertex within ``max_depth`` hops.

    Vertices in ``blocked`` are never entered.
    """
    dist = {source: 0}
    frontier = [source]
    d = 0
    adj = g.adjacency
    while frontier and (max_depth is None or d < max_depth):
        d += 1
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if u not in dist and (blocked is None or u not in blocked):
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt
    return dist


def bfs_parents(g: Graph, source: int) -> list[int]:
    """Parent array of the BFS tree from ``source``; -1 for the source and unreached."""
    parent = [-1] * g.n
    seen = [False] * g.n
    seen[source] = True
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                queue.append(u)
    return parent


def distance(g: Graph, u: int, v: int) -> Optional[int]:
    """Edge count of a shortest ``u``-``v`` path, or ``None`` if unreachable."""
    for x in (u, v):
        if not 0 <= x < g.n:
            raise IndexError(f"vertex {x} out of range")
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    return None


def tree_path(t: Tree, u: int, v: int) -> Path:
    """The unique ``u``-``v`` path in ``t``."""
    for x in (u, v):
        if not 0 <= x < t.n:
            raise IndexError(f"vertex {x} out of range")
    if u == v:
        return Path((u,))
    parent = {u: -1}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in t.adjacency[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    out = [v]
    while out[-1] != u:
        out.append(parent[out[-1]])
    out.reverse()
    return Path(tuple(out))


def farthest(g: Graph, source: int, allowed: Optional[set[int]] = None) -> tuple[int, int]:
    """Farthest vertex from ``source`` (smallest index among ties) and its distance."""
    blocked = None
    if allowed is not None:
        blocked = _Complement(allowed)
    dist = bfs_distances(g, source, blocked=blocked)
    best_d = max(dist.values())
    best_v = min(v for v, d in dist.items() if d == best_d)
    return best_v, best_d


class _Complement:
    """Membership view ``x in c`` meaning ``x not in allowed``."""

    __slots__ = ("allowed",)

    def __init__(self, allowed):
        self.allowed = allowed

    def __contains__(self, x):
        return x not in self.allowed


# --- serialization ---------------------------------------------------------


def serialize_graph(g: Graph) -> bytes:
    doc = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    return json.dumps(doc, separators=(",", ":")).encode()


def parse_graph(data: bytes | str) -> Graph:
    """Parse ``{"n": int, "edges": [[u, v], ...]}``.

    Raises :class:`GraphParseError` (with byte offset) on malformed JSON or
    schema, and :class:`GraphValidationError` naming the edge on loops,
    duplicates or out-of-range endpoints.
    """
    text = data.decode() if isinstance(data, (bytes, bytearray)) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(exc.msg, len(text[: exc.pos].encode())) from None
    if not isinstance(doc, dict):
        raise GraphParseError("top-level value must be an object", 0)
    n = doc.get("n")
    edges = doc.get("edges")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphParseError('"n" must be a non-negative integer', _key_offset(text, "n"))
    if not isinstance(edges, list):
        raise GraphParseError('"edges" must be a list', _key_offset(text, "edges"))
    pairs = []
    for e in edges:
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise GraphParseError(f"edge {e!r} is not a pair of integers", _key_offset(text, "edges"))
        pairs.append((e[0], e[1]))
    return Graph.from_edges(n, pairs)


def _key_offset(text: str, key: str) -> int:
    i = text.find(f'"{key}"')
    return len(text[: max(i, 0)].encode())


def load_graph(path: str) -> Graph:
    with open(path, "rb") as fh:
        return parse_graph(fh.read())


def save_graph(g: Graph, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_graph(g))
        fh.write(b"\n")


def to_dot(g: Graph) -> str:
    lines = ["graph {"]
    for v in range(g.n):
        if not g.adjacency[v]:
            lines.append(f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
