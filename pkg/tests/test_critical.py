import random

import pytest

from treecycles.critical import (
    CriticalityError,
    VertexOrdering,
    apex_from_13_tree,
    check_critical,
    check_critical_naive,
    critical_edge_count,
    critical_ordering,
    expected_dplus,
    is_k_ordered,
    k_core,
    k_ordered_violations,
)
from treecycles.generators import complete_graph, path_graph, random_13_tree, star
from treecycles.graphs import Graph, Tree


def k4_plus_pendant():
    edges = list(complete_graph(4).edges()) + [(3, 4)]
    return Graph.from_edges(5, edges)


def test_edge_count():
    assert critical_edge_count(4, 3) == 6
    assert critical_edge_count(5, 3) == 8


def test_k4_is_critical():
    rep = check_critical(complete_graph(4), 3)
    assert rep.verdict and rep.edge_count_ok and rep.violating_vertex is None


def test_k4_with_pendant_is_not():
    g = k4_plus_pendant()
    rep = check_critical(g, 3)
    assert not rep.verdict
    # removing the pendant leaves K_4, whose 3-core is itself
    assert rep.violating_vertex is not None
    assert not check_critical_naive(g, 3)


def test_k_core():
    g = k4_plus_pendant()
    assert k_core(g, 3) == [0, 1, 2, 3]
    assert k_core(g, 3, removed=4) == [0, 1, 2, 3]
    assert k_core(g, 3, removed=0) == []


def test_apex_of_single_edge_is_k4():
    g = apex_from_13_tree(path_graph(2))
    assert g.n == 4 and g.num_edges() == 6
    assert sorted(g.degrees()) == [3, 3, 3, 3]


def test_apex_of_claw():
    g = apex_from_13_tree(star(3))
    assert g.n == 6 and g.num_edges() == 10
    assert check_critical(g, 3).verdict


def test_apex_rejects_non_13_tree():
    with pytest.raises(CriticalityError):
        apex_from_13_tree(path_graph(4))


def test_k_below_three_rejected():
    with pytest.raises(CriticalityError):
        check_critical(complete_graph(4), 2)
    with pytest.raises(CriticalityError):
        critical_ordering(complete_graph(4), 2)


def test_expected_profile():
    assert expected_dplus(4, 3) == [3, 2, 1, 0]
    assert expected_dplus(7, 3) == [3, 2, 2, 2, 2, 1, 0]


def test_k4_ordering():
    o = critical_ordering(complete_graph(4), 3)
    assert list(o.forward_degrees) == [3, 2, 1, 0]
    assert o.order == (0, 1, 2, 3)
    assert is_k_ordered(complete_graph(4), o, 3)


def test_ordering_rejects_non_critical():
    with pytest.raises(CriticalityError):
        critical_ordering(k4_plus_pendant(), 3)


def test_k_ordered_failures():
    p = path_graph(5)
    o = VertexOrdering.of(p, range(5))
    assert not is_k_ordered(p, o, 3)
    g = apex_from_13_tree(star(3))
    rev = critical_ordering(g, 3).reversed(g)
    assert k_ordered_violations(g, rev, 3)


def test_ordering_permutation_check():
    with pytest.raises(CriticalityError):
        VertexOrdering.of(complete_graph(4), [0, 1, 1, 2])


@pytest.mark.parametrize("seed", range(12))
def test_fast_check_agrees_with_definition(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 4, 6, 8, 10, 12])
    t = random_13_tree(n, rng)
    g = apex_from_13_tree(t)
    assert check_critical(g, 3).verdict == check_critical_naive(g, 3) is True
    # dropping an edge breaks the edge count, adding one breaks it too
    edges = list(g.edges())
    h = Graph.from_edges(g.n, edges[1:])
    assert check_critical(h, 3).verdict == check_critical_naive(h, 3) is False


@pytest.mark.parametrize("seed", range(20))
def test_apex_orderings_are_k_ordered(seed):
    rng = random.Random(seed)
    n = 2 * rng.randint(1, 60)
    g = apex_from_13_tree(random_13_tree(n, rng))
    o = critical_ordering(g, 3)
    assert list(o.forward_degrees) == expected_dplus(g.n, 3)
    assert is_k_ordered(g, o, 3)
    assert not is_k_ordered(g, o.reversed(g), 3)


def test_tree_input_type():
    assert isinstance(path_graph(2), Tree)
