import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treecycles.constructions import (
    DIGITS_X,
    DIGITS_Y,
    SEARCH_CAP,
    SequenceError,
    SequenceSpec,
    SpineLayout,
    analytic_short_lengths,
    build_tree,
    check_last_tree,
    count_short_lengths,
    diffset,
    sequence_from_sumset,
    staircase_congruence_holds,
    staircase_sequence,
    sumset,
    sumset_search,
    sumset_search_naive,
    sumset_uv,
)
from treecycles.graphs import bfs_distances
from treecycles.treelen import PreconditionError, leaf_lengths, witnessed_lengths


# --- T_n((a_i)) ------------------------------------------------------------------


def test_constant_one_n4_is_claw():
    t, trace = build_tree(SequenceSpec.constant(1), 4)
    assert (trace.t, trace.S_sum, trace.leftover) == (1, 4, 1)
    assert sorted(t.degrees()) == [1, 1, 1, 3]
    assert t.adjacency[1] == (0, 2, 3)


def test_constant_one_n10_caterpillar():
    t, trace = build_tree(SequenceSpec.constant(1), 10)
    assert (trace.t, trace.S_sum, trace.leftover) == (4, 10, 1)
    assert set(t.degrees()) == {1, 3}
    for i in range(5):
        assert t.has_edge(i, i + 1)
    for i in range(1, 5):
        assert sum(1 for u in t.adjacency[i] if u > 5) == 1


def test_build_rejects_bad_input():
    with pytest.raises(PreconditionError):
        build_tree(SequenceSpec.constant(1), 7)
    with pytest.raises(PreconditionError):
        build_tree(SequenceSpec.constant(1), 2)
    with pytest.raises(SequenceError):
        SequenceSpec.explicit([1, 0, 2])
    with pytest.raises(SequenceError):
        SequenceSpec.explicit([])


def test_spec_parse():
    assert SequenceSpec.parse("constant:2").values == (2,)
    assert SequenceSpec.parse("staircase:2").values == (2, 1, 4, 3)
    assert SequenceSpec.parse("list:3,1,2").values == (3, 1, 2)
    assert len(SequenceSpec.parse("sumset:1")) == 13
    for text in ("staircase:2", "list:3,1,2", "constant:5", "sumset:1"):
        assert str(SequenceSpec.parse(text)) == text
    for bad in ("nope:1", "constant", "constant:x", "list:1,,2", "list:0"):
        with pytest.raises(SequenceError):
            SequenceSpec.parse(bad)


specs = st.one_of(
    st.integers(1, 6).map(SequenceSpec.constant),
    st.integers(1, 3).map(staircase_sequence),
    st.lists(st.integers(1, 7), min_size=1, max_size=6).map(SequenceSpec.explicit),
)


@settings(max_examples=300, deadline=None)
@given(specs, st.integers(2, 400))
def test_build_invariants(spec, half):
    n = 2 * half
    t, trace = build_tree(spec, n)
    layout = SpineLayout.of(spec, n)
    trace.check(n, layout.layers[-1])
    assert t.n == n and set(t.degrees()) <= {1, 3}
    assert check_last_tree(t, layout)


@settings(max_examples=2000, deadline=None)
@given(specs, st.integers(2, 10**4))
def test_trace_invariants_at_scale(spec, half):
    n = 2 * half
    layout = SpineLayout.of(spec, n)
    trace = layout.trace()
    assert trace.S_sum >= n
    assert trace.S_sum - 2 ** layout.layers[-1] <= n - 2
    assert trace.leftover % 2 == 1 and 1 <= trace.leftover <= 2 ** layout.layers[-1] - 1


@settings(max_examples=80, deadline=None)
@given(specs, st.integers(2, 300), st.integers(1, 40))
def test_layout_profile_matches_bfs(spec, half, max_len):
    n = 2 * half
    layout = SpineLayout.of(spec, n)
    t = layout.materialize()
    predicted = set()
    for j, cls in layout.leaf_classes():
        predicted |= layout.witnessed_profile(j, cls, max_len)
    observed = set()
    per_leaf_max = 0
    for x in t.leaves():
        w = witnessed_lengths(t, x, max_len).lengths.as_set()
        observed |= w
        per_leaf_max = max(per_leaf_max, len(w))
    assert predicted == observed
    assert per_leaf_max == max(len(layout.witnessed_profile(j, c, max_len)) for j, c in layout.leaf_classes())


# --- sumsets ---------------------------------------------------------------------------


def test_digit_sets():
    assert diffset(DIGITS_X, DIGITS_Y) == set(range(13))
    assert sumset(DIGITS_X, DIGITS_Y) == {-4, -3, -2, 0, 1, 2, 3, 4, 6, 8}


def test_sumset_k1():
    p = sumset_uv(1)
    assert p.U == (4, 5, 8, 10) and p.V == (-3, -2, 1, 3)
    assert diffset(p.U, p.V) == set(range(1, 14))
    assert len(sumset(p.U, p.V)) == 10


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sumset_identities(k):
    p = sumset_uv(k)
    assert diffset(p.U, p.V) == set(range(1, 13**k + 1))
    assert len(sumset(p.U, p.V)) == p.sum_size == 10**k
    assert p.beta == pytest.approx(math.log(10) / math.log(13))
    assert p.sum_size >= (13**k) ** (2 / 3)


def test_sumset_large_k_and_overflow():
    p = sumset_uv(6)
    assert p.verified == "digits" and p.sum_size == 10**6
    with pytest.raises(OverflowError):
        sumset_uv(18)
    with pytest.raises(PreconditionError):
        sumset_uv(0)


def test_sequence_from_sumset():
    pair = sumset_uv(1)
    spec = sequence_from_sumset(pair)
    assert spec.values == (7, 8, 5, 6, 11, 2, 1, 2, 11, 6, 5, 8, 7)
    Vs = set(pair.V)
    for i, a in enumerate(spec.values, 1):
        u, v = (a + i) // 2, (a - i) // 2
        assert (a + i) % 2 == 0 and u in pair.U and v in Vs and u - v == i


def test_sequence_from_sumset_positivity_gate():
    from treecycles.constructions import SumsetPair

    degenerate = SumsetPair(tuple(range(0, 6)), tuple(range(-5, 1)), 4, 0, "manual")
    with pytest.raises(SequenceError):
        sequence_from_sumset(degenerate)


def test_staircase():
    assert staircase_sequence(2).values == (2, 1, 4, 3)
    assert staircase_sequence(1).values == (1,)
    for m in range(1, 21):
        vals = staircase_sequence(m).values
        assert all(1 <= a <= m * m for a in vals)
        assert all((a + (i - 1) % m) % m == 0 for i, a in enumerate(vals, 1))
        assert staircase_congruence_holds(m)


def test_count_short_lengths_sumset_k1():
    beta = math.log(10) / math.log(13)
    M = math.floor(13 ** (2 - beta))
    spec = sequence_from_sumset(sumset_uv(1))
    analytic, brute = count_short_lengths(spec, 4000, M)
    assert brute <= 13 * 13
    assert analytic >= brute


def test_count_short_lengths_caterpillar():
    analytic, brute = count_short_lengths(SequenceSpec.constant(1), 100, 10)
    assert brute >= 9 and analytic >= brute


@settings(max_examples=60, deadline=None)
@given(specs, st.integers(2, 250), st.integers(1, 60))
def test_analytic_is_superset(spec, half, M):
    n = 2 * half
    t, _ = build_tree(spec, n)
    assert leaf_lengths(t, M).as_set() <= analytic_short_lengths(spec, n, M)


# --- search ---------------------------------------------------------------------------


def test_search_base13_finds_digit_sets():
    found = sumset_search(13, 4)
    pairs = {(c.X, c.Y): c for c in found}
    c = pairs[(DIGITS_X, DIGITS_Y)]
    assert c.sum_size == 10 and c.diff_size >= 13
    assert min(c.sum_size for c in found) == 10
    assert all(c.ruzsa_ok for c in found)


def test_search_base2():
    found = sumset_search(2, 2)
    assert found[0].sum_size == 2
    assert any(c.X == (0, 1) and c.Y == (0,) for c in found)


@pytest.mark.parametrize("base", [3, 4])
def test_search_matches_naive(base):
    found = sumset_search(base, 3, (-6, 6))
    assert found[0].sum_size == sumset_search_naive(base, 3, (-6, 6))
    for c in found:
        assert set(range(base)) <= diffset(c.X, c.Y)


def test_search_cap():
    with pytest.raises(PreconditionError):
        sumset_search(13, 5, (-40, 40))
    assert SEARCH_CAP == 10**7
