import itertools

import networkx as nx
import pytest

from treecycles.graphs import Graph
from treecycles.treelen import ENUMERATION_CAP, PreconditionError, canonical_form, enumerate_13_trees


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def prufer_decode(seq, n):
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return edges


def classes(graphs):
    reps = []
    for h in graphs:
        if not any(nx.is_isomorphic(h, r) for r in reps):
            reps.append(h)
    return reps


def prufer_13_trees(n):
    # vertex degrees are 1 + multiplicity in the Prüfer code; internal vertices
    # 0..k-1 each appear exactly twice (relabelling does not change the classes)
    k = (n - 2) // 2
    seqs = set(itertools.permutations([v for v in range(k) for _ in range(2)]))
    return [nx.Graph(prufer_decode(s, n)) for s in sorted(seqs)]


def test_small_cases():
    trees = list(enumerate_13_trees(2))
    assert len(trees) == 1 and trees[0].num_edges() == 1
    trees = list(enumerate_13_trees(4))
    assert len(trees) == 1 and sorted(trees[0].degrees()) == [1, 1, 1, 3]


@pytest.mark.parametrize("n", [6, 8, 10])
def test_prufer_oracle(n):
    ours = [to_nx(t) for t in enumerate_13_trees(n)]
    oracle = classes(prufer_13_trees(n))
    assert len(ours) == len(oracle)
    for h in oracle:
        assert sum(nx.is_isomorphic(h, g) for g in ours) == 1


@pytest.mark.parametrize("n", range(2, 19, 2))
def test_against_networkx_free_trees(n):
    expected = sum(1 for h in nx.nonisomorphic_trees(n) if all(d in (1, 3) for _, d in h.degree()))
    ours = list(enumerate_13_trees(n))
    assert len(ours) == expected
    assert len({canonical_form(t) for t in ours}) == len(ours)
    for t in ours:
        assert t.n == n and set(t.degrees()) <= {1, 3}


def test_counts_match_trivalent_tree_sequence():
    # number of trees whose vertices all have degree 1 or 3, by internal vertex count
    want = [1, 1, 1, 1, 2, 2, 4, 6, 11, 18, 37, 66, 135]
    got = [sum(1 for _ in enumerate_13_trees(2 * i + 2)) for i in range(len(want))]
    assert got == want


def test_canonical_form_is_isomorphism_invariant():
    import random

    rng = random.Random(5)
    for t in enumerate_13_trees(16):
        perm = list(range(t.n))
        rng.shuffle(perm)
        relabelled = Graph.from_edges(t.n, [(perm[u], perm[v]) for u, v in t.edges()])
        assert canonical_form(relabelled) == canonical_form(t)


def test_refusals():
    with pytest.raises(PreconditionError):
        list(enumerate_13_trees(ENUMERATION_CAP + 2))
    with pytest.raises(PreconditionError):
        list(enumerate_13_trees(7))
