import random

import networkx as nx
import pytest

from treecycles.critical import VertexOrdering, apex_from_13_tree, critical_ordering
from treecycles.cycles import (
    MAX_VERTICES,
    ORACLE_CAP,
    CycleCertificate,
    CycleError,
    ForwardDigraph,
    StructureError,
    Vine,
    antichain_violations,
    build_vine,
    cycle_count_bound,
    cycle_length_oracle,
    cycle_lengths_from_paths,
    cycle_pipeline,
    directed_tree_violations,
    fair_refine,
    good_cycle_violations,
    good_cycles,
    is_cycle,
    large_antichain,
    longest_forward_path,
    longest_forward_path_bruteforce,
    many_cycle_lengths,
    two_trees,
    validate_cycle,
    vine_cycle,
    vine_violations,
)
from treecycles.generators import complete_graph, cycle_graph, path_graph, random_13_tree
from treecycles.graphs import Graph, Path


def apex(n, seed):
    return apex_from_13_tree(random_13_tree(n, random.Random(seed)))


def fd_of(g, k=3):
    return ForwardDigraph(g, critical_ordering(g, k))


def nx_lengths(g):
    h = nx.Graph(list(g.edges()))
    h.add_nodes_from(range(g.n))
    return {len(c) for c in nx.simple_cycles(h.to_directed()) if len(c) >= 3}


def petersen():
    h = nx.petersen_graph()
    return Graph.from_edges(10, list(h.edges()))


def test_k4_reachability():
    fd = fd_of(complete_graph(4))
    first = fd.order[0]
    assert fd.desc[first] == 0b1111
    assert fd.anc[fd.order[-1]] == 0b1111
    assert fd.longest_path_length() == 3
    assert fd.precedes(fd.order[0], fd.order[3])


@pytest.mark.parametrize("seed", range(10))
def test_longest_path_dp_matches_search(seed):
    g = apex(2 * (seed % 6 + 1), seed)
    fd = fd_of(g)
    assert fd.longest_path_length() == longest_forward_path_bruteforce(fd)
    p = longest_forward_path(fd)
    assert fd.is_forward_path(p.vertices) and p.length == fd.longest_path_length()


def test_is_cycle():
    g = complete_graph(4)
    assert is_cycle(g, [0, 1, 2])
    assert not is_cycle(g, [0, 1])
    assert not is_cycle(g, [0, 1, 1])
    assert not is_cycle(cycle_graph(5), [0, 1, 3])
    with pytest.raises(StructureError):
        validate_cycle(cycle_graph(5), CycleCertificate((0, 2, 4), "vine"))


def test_vine_on_k4():
    fd = fd_of(complete_graph(4))
    base = longest_forward_path(fd)
    vine = build_vine(fd, base)
    assert vine_violations(fd, vine) == []
    cert = vine_cycle(vine)
    assert is_cycle(fd.g, cert.vertices)
    assert 4 <= cert.length <= 6


def test_vine_validator_catches_faults():
    g = apex(40, 3)
    fd = fd_of(g)
    _, vines = cycle_lengths_from_paths(fd)
    vine = max(vines, key=lambda v: len(v.links))
    assert vine_violations(fd, vine) == []
    assert vine_violations(fd, Vine(vine.base, ())) == ["vine has no links"]
    if len(vine.links) >= 2:
        swapped = Vine(vine.base, vine.links[::-1])
        assert vine_violations(fd, swapped)
    q = vine.links[0]
    bent = Path(q.vertices[::-1])
    assert vine_violations(fd, Vine(vine.base, (bent,) + vine.links[1:]))


def test_build_vine_preconditions():
    fd = fd_of(complete_graph(4))
    with pytest.raises(CycleError):
        build_vine(fd, Path(tuple(fd.order[:2])))


@pytest.mark.parametrize("seed", range(8))
def test_dyadic_vine_lengths(seed):
    g = apex(60 + 20 * seed, seed)
    fd = fd_of(g)
    ell = fd.longest_path_length()
    lengths, vines = cycle_lengths_from_paths(fd)
    assert len(vines) == ell.bit_length() - 1
    for s, vine in enumerate(vines, 1):
        c = vine_cycle(vine)
        assert 2**s < c.length <= 2 ** (s + 1)
        assert is_cycle(g, c.vertices)
    for x in lengths:
        assert lengths.witnesses[x].length == x


@pytest.mark.parametrize("seed", range(8))
def test_antichain_and_trees(seed):
    g = apex(50 + 10 * seed, seed)
    fd = fd_of(g)
    L = large_antichain(fd)
    assert antichain_violations(fd, L) == []
    S, T = two_trees(fd, L)
    assert sorted(S.leaves()) == sorted(L) == sorted(T.leaves())
    assert directed_tree_violations(fd, S, L) == []
    assert directed_tree_violations(fd, T, L) == []
    assert S.direction == "forward" and T.direction == "backward"


def test_antichain_violation_detected():
    fd = fd_of(complete_graph(4))
    assert antichain_violations(fd, list(fd.order[:2]))


def test_fair_refine_trivial_branch():
    fd = fd_of(apex(8, 1))
    L = large_antichain(fd)
    S, T = two_trees(fd, L)
    c = max(fd.height)
    assert fd.n <= c**3
    L0, S0, T0 = fair_refine(fd, S, T, c)
    assert len(L0) == 1 and S0.leaves() == T0.leaves() == L0


@pytest.mark.parametrize("seed", range(6))
def test_fair_refine_and_good_cycles(seed):
    g = apex(200 + 100 * seed, seed)
    fd = fd_of(g)
    S, T = two_trees(fd, large_antichain(fd))
    c = max(fd.height)
    L0, S0, T0 = fair_refine(fd, S, T, c, allow_trivial=False)
    assert len(L0) * c * c >= len(S.leaves())
    assert S0.fair_depth is not None and T0.fair_depth is not None
    assert all(S0.depth(x) == S0.fair_depth for x in L0)
    assert all(T0.depth(x) == T0.fair_depth for x in L0)
    if len(L0) >= 2:
        good = good_cycles(fd, S0, T0, 3)
        lens = [cert.length for cert in good]
        assert lens == sorted(set(lens), reverse=True)
        assert lens[0] == 2 * S0.fair_depth + 2 * T0.fair_depth
        for cert in good:
            assert good_cycle_violations(fd, cert) == []


def test_good_cycles_need_two_leaves():
    fd = fd_of(apex(8, 0))
    S, T = two_trees(fd, large_antichain(fd))
    _, S0, T0 = fair_refine(fd, S, T, 100)
    with pytest.raises(CycleError):
        good_cycles(fd, S0, T0, 3)


def test_good_cycle_violation_detected():
    fd = fd_of(complete_graph(4))
    # arcs between first and last vertex: the whole order, and the chord
    order = fd.order
    assert good_cycle_violations(fd, CycleCertificate(tuple(order), "good-cycle")) == []
    assert good_cycle_violations(fd, CycleCertificate((order[0], order[1]), "good-cycle")) == ["not a cycle"]


def test_oracle_small():
    assert cycle_length_oracle(complete_graph(4)).lengths == (3, 4)
    assert cycle_length_oracle(cycle_graph(5)).lengths == (5,)
    assert cycle_length_oracle(path_graph(6)).lengths == ()
    assert cycle_length_oracle(petersen()).lengths == (5, 6, 8, 9)


@pytest.mark.parametrize("seed", range(15))
def test_oracle_matches_networkx(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 11)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35]
    g = Graph.from_edges(n, edges)
    got = cycle_length_oracle(g)
    assert got.as_set() == nx_lengths(g)
    for x in got:
        cert = got.witnesses[x]
        assert cert.length == x and is_cycle(g, cert.vertices)


def test_oracle_cap():
    with pytest.raises(CycleError):
        cycle_length_oracle(cycle_graph(ORACLE_CAP + 1))


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12, 14])
def test_pipeline_lengths_are_real(n):
    for seed in range(3):
        g = apex(n, seed)
        got = many_cycle_lengths(g, 3)
        assert got.as_set() <= cycle_length_oracle(g).as_set()
        for x in got:
            assert is_cycle(g, got.witnesses[x].vertices)


@pytest.mark.parametrize("seed", range(4))
def test_pipeline_meets_count_bound(seed):
    g = apex(1000 * (seed + 1), seed)
    run = cycle_pipeline(g, 3)
    assert len(run.lengths) >= cycle_count_bound(g.n, 3)
    assert len(run.vines) == (run.c - 1).bit_length() - 1


def test_pipeline_rejects_bad_ordering():
    g = apex(10, 0)
    o = critical_ordering(g, 3)
    with pytest.raises(CycleError):
        cycle_pipeline(g, 3, o.reversed(g))


def test_vertex_cap():
    n = MAX_VERTICES + 1
    g = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    with pytest.raises(CycleError):
        ForwardDigraph(g, VertexOrdering.of(g, range(n)))
