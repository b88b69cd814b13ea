"""Small named graph families and seeded random tree generators."""

from __future__ import annotations

import random
from typing import Optional

from .graphs import Graph, Tree


def path_graph(n: int) -> Tree:
    return Tree.from_graph(Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)]))


def star(leaves: int) -> Tree:
    """K_{1,leaves} with centre 0."""
    return Tree.from_graph(Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)]))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def spider(legs: int, leg_length: int) -> Tree:
    """Centre 0 with ``legs`` paths of ``leg_length`` edges each."""
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(leg_length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree.from_graph(Graph.from_edges(nxt, edges))


def subdivided_star(n: int, delta: int) -> Tree:
    """Star S_delta with one edge subdivided ``n - delta - 1`` times (n vertices)."""
    if n <= delta:
        raise ValueError("need n > delta")
    edges = [(0, i) for i in range(1, delta)]
    prev = 0
    for v in range(delta, n):
        edges.append((prev, v))
        prev = v
    return Tree.from_graph(Graph.from_edges(n, edges))


def perfect_distance_tree(delta: int, depth: int) -> Tree:
    """Every vertex has degree 1 or ``delta``; all leaves at distance ``depth`` from root 0.

    It has ``delta * (delta - 1) ** (depth - 1)`` leaves.
    """
    edges = []
    frontier = [0]
    nxt = 1
    for level in range(depth):
        new = []
        for v in frontier:
            for _ in range(delta if level == 0 else delta - 1):
                edges.append((v, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    return Tree.from_graph(Graph.from_edges(nxt, edges))


def perfect_binary_tree(layers: int) -> Tree:
    """Heap-indexed perfect binary tree on ``layers`` layers, root 0."""
    size = (1 << layers) - 1
    return Tree.from_graph(Graph.from_edges(size, [((j - 1) // 2, j) for j in range(1, size)]))


def random_tree(n: int, max_degree: int, rng: random.Random) -> Tree:
    """Random recursive tree on ``n`` vertices with every degree at most ``max_degree``."""
    if n == 1:
        return Tree(1, ((),))
    deg = [0] * n
    edges = []
    open_vertices = [0]
    for v in range(1, n):
        i = rng.randrange(len(open_vertices))
        u = open_vertices[i]
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
        if deg[u] == max_degree:
            open_vertices[i] = open_vertices[-1]
            open_vertices.pop()
        open_vertices.append(v)
    # relabel so the labels carry no structural information
    perm = list(range(n))
    rng.shuffle(perm)
    return Tree.from_graph(Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges]))


def random_13_tree(n: int, rng: random.Random, shuffle: bool = True) -> Tree:
    """Random 1-3 tree on even ``n >= 2`` vertices, grown by splitting random leaves."""
    if n % 2 or n < 2:
        raise ValueError("1-3 trees have an even number (>= 2) of vertices")
    if n == 2:
        return Tree(2, ((1,), (0,)))
    edges = [(0, 1), (0, 2), (0, 3)]
    leaves = [1, 2, 3]
    nxt = 4
    while nxt < n:
        i = rng.randrange(len(leaves))
        x = leaves[i]
        edges.append((x, nxt))
        edges.append((x, nxt + 1))
        leaves[i] = nxt
        leaves.append(nxt + 1)
        nxt += 2
    if shuffle:
        perm = list(range(n))
        rng.shuffle(perm)
        edges = [(perm[u], perm[v]) for u, v in edges]
    return Tree.from_graph(Graph.from_edges(n, edges))


def random_spine_13_tree(
    spine_length: int,
    rng: random.Random,
    max_splits: int = 12,
    deep_at: Optional[dict[int, int]] = None,
) -> Tree:
    """1-3 tree made of a path ``0..spine_length`` with a random binary tree hung at
    every internal path vertex.

    Each hanging tree starts as a single vertex and is grown by up to
    ``max_splits`` random leaf splits.  ``deep_at`` maps a spine index to a
    number of layers; that vertex gets a perfect binary tree instead.
    """
    edges = [(i, i + 1) for i in range(spine_length)]
    nxt = spine_length + 1
    deep_at = deep_at or {}
    for i in range(1, spine_length):
        root = nxt
        nxt += 1
        edges.append((i, root))
        if i in deep_at:
            layers = deep_at[i]
            size = (1 << layers) - 1
            edges.extend((root + (j - 1) // 2, root + j) for j in range(1, size))
            nxt = root + size
            continue
        leaves = [root]
        for _ in range(rng.randrange(max_splits + 1)):
            k = rng.randrange(len(leaves))
            x = leaves[k]
            edges.append((x, nxt))
            edges.append((x, nxt + 1))
            leaves[k] = nxt
            leaves.append(nxt + 1)
            nxt += 2
    return Tree.from_graph(Graph.from_edges(nxt, edges))
