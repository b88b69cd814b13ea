"""Trees with few leaf-to-leaf path lengths, built from integer sequences.

``T_n((a_i))`` is a path ``v_0 .. v_{t+1}`` with a perfect binary tree of
``a'_i`` layers hanging from each ``v_i`` (``a'`` is the periodic extension of
the sequence), the last one trimmed so that the total is exactly ``n``
vertices.  :class:`SpineLayout` describes the same tree without materializing
it, so distances can be computed for trees far too large to store.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graphs import Graph, Tree
from .treelen import PreconditionError, leaf_lengths

MAX_MATERIALIZED = 5_000_000
SEARCH_CAP = 10**7


class SequenceError(ValueError):
    pass


@dataclass(frozen=True)
class SequenceSpec:
    """A positive integer sequence plus the family it came from.

    ``family`` is one of ``constant``, ``staircase``, ``sumset`` or ``list``;
    ``param`` is the family parameter (the constant, ``m``, ``k``) or ``None``
    for explicit lists.
    """

    family: str
    param: Optional[int]
    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise SequenceError("sequence must be non-empty")
        for i, a in enumerate(self.values):
            if not isinstance(a, int) or a < 1:
                raise SequenceError(f"entry a_{i + 1} = {a!r} is not a positive integer")

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def constant(cls, c: int) -> "SequenceSpec":
        return cls("constant", c, (c,))

    @classmethod
    def explicit(cls, values: Iterable[int]) -> "SequenceSpec":
        return cls("list", None, tuple(values))

    @classmethod
    def parse(cls, text: str) -> "SequenceSpec":
        """Parse ``constant:c``, ``staircase:m``, ``sumset:k`` or ``list:a,b,c``."""
        family, sep, rest = text.partition(":")
        if not sep or not rest:
            raise SequenceError(f"bad sequence spec {text!r}: expected FAMILY:ARGS")
        try:
            if family == "list":
                return cls.explicit(int(x) for x in rest.split(","))
            value = int(rest)
        except ValueError:
            raise SequenceError(f"bad sequence spec {text!r}: non-integer argument") from None
        if family == "constant":
            return cls.constant(value)
        if family == "staircase":
            return staircase_sequence(value)
        if family == "sumset":
            return sequence_from_sumset(sumset_uv(value))
        raise SequenceError(f"unknown sequence family {family!r}")

    def __str__(self) -> str:
        if self.family == "list":
            return "list:" + ",".join(map(str, self.values))
        return f"{self.family}:{self.param}"


@dataclass(frozen=True)
class ConstructionTrace:
    t: int
    S_sum: int
    leftover: int
    layers: tuple[int, ...]  # a'_1 .. a'_{t-1}, then the layer count of the trimmed tree

    def check(self, n: int, last_full_layers: int) -> None:
        assert self.S_sum >= n
        assert self.S_sum - 2**last_full_layers <= n - 2
        assert self.leftover % 2 == 1
        assert 1 <= self.leftover <= 2**last_full_layers - 1


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


@dataclass(frozen=True)
class SpineLayout:
    """Shape of ``T_n((a_i))``: layer counts along the spine and the trimmed last tree.

    ``layers[i - 1]`` is ``a'_i`` for ``i < t`` and the untrimmed ``a'_t`` for
    ``i = t``.  Sizes are Python integers, so ``n`` may be astronomically large.
    """

    spec: SequenceSpec
    n: int
    t: int
    S_sum: int
    layers: tuple[int, ...]
    leftover: int

    @classmethod
    def of(cls, spec: SequenceSpec, n: int) -> "SpineLayout":
        if n % 2 or n < 4:
            raise PreconditionError("n must be an even integer >= 4")
        vals = spec.values
        S = 2
        layers = []
        for a in itertools.cycle(vals):
            layers.append(a)
            S += 1 << a
            if S >= n:
                break
        t = len(layers)
        leftover = n - (S - (1 << layers[-1]) + 1)
        return cls(spec, n, t, S, tuple(layers), leftover)

    @property
    def last_layers(self) -> int:
        """Layer count of the trimmed last tree."""
        return _ceil_log2(self.leftover + 1)

    def trace(self) -> ConstructionTrace:
        return ConstructionTrace(self.t, self.S_sum, self.leftover, self.layers[:-1] + (self.last_layers,))

    def spine_depths(self, j: int) -> tuple[int, ...]:
        """Distances from ``v_j`` to the leaves hanging from it (``v_0``, ``v_{t+1}``: ``(0,)``)."""
        if j == 0 or j == self.t + 1:
            return (0,)
        if j < self.t:
            return (self.layers[j - 1],)
        return tuple(d + 1 for d in _heap_leaf_depths(self.leftover))

    def leaf_classes(self) -> list[tuple[int, "_LeafClass"]]:
        """One representative per class of leaves with identical distance profiles,
        as ``(spine index, class)`` pairs."""
        out = [(0, _LeafClass(0, (0,)))]
        for j in range(1, self.t):
            a = self.layers[j - 1]
            out.append((j, _LeafClass(a, tuple(range(0, 2 * a, 2)))))
        for rep in _heap_leaf_representatives(self.leftover):
            out.append((self.t, rep))
        out.append((self.t + 1, _LeafClass(0, (0,))))
        return out

    def witnessed_profile(self, j: int, cls: "_LeafClass", max_len: int) -> set[int]:
        """All lengths ``<= max_len`` of leaf-to-leaf paths starting at a leaf of the given class."""
        out = {d for d in cls.internal if d <= max_len}
        h = cls.height
        lo = max(0, j - max_len)
        hi = min(self.t + 1, j + max_len)
        for jj in range(lo, hi + 1):
            if jj == j:
                continue
            base = h + abs(jj - j)
            if base > max_len:
                continue
            for d in self.spine_depths(jj):
                if base + d <= max_len:
                    out.add(base + d)
        return out

    def materialize(self) -> Tree:
        if self.n > MAX_MATERIALIZED:
            raise PreconditionError(f"refusing to materialize {self.n} vertices")
        t = self.t
        edges = [(i, i + 1) for i in range(t + 1)]
        nxt = t + 2
        for i in range(1, t + 1):
            size = (1 << self.layers[i - 1]) - 1 if i < t else self.leftover
            root = nxt
            edges.append((i, root))
            edges.extend((root + (s - 1) // 2, root + s) for s in range(1, size))
            nxt += size
        assert nxt == self.n
        return Tree.from_graph(Graph.from_edges(self.n, edges))


@dataclass(frozen=True)
class _LeafClass:
    height: int  # distance from the leaf to its spine vertex
    internal: tuple[int, ...]  # lengths to leaves of its own hanging tree (incl. 0)


def _heap_leaf_depths(size: int) -> list[int]:
    """Depths (root = 0) at which the heap-ordered tree on slots ``0..size-1`` has leaves."""
    first_leaf = (size - 1) // 2
    return sorted({(s + 1).bit_length() - 1 for s in (first_leaf, size - 1)})


def _subtree_leaf_depths(size: int, node: int) -> set[int]:
    """Leaf depths (measured from the global root) inside the subtree of heap slot ``node``."""
    if node >= size:
        return set()
    out = set()
    depth = (node + 1).bit_length() - 1
    first_leaf = (size - 1) // 2
    lo = hi = node
    while lo < size:
        a, b = max(lo, first_leaf), min(hi, size - 1)
        if a <= b:
            out.add(depth)
        lo, hi = 2 * lo + 1, 2 * hi + 2
        depth += 1
    return out


def _heap_leaf_representatives(size: int) -> list[_LeafClass]:
    """Distance-profile classes of leaves in a trimmed heap tree.

    Off the boundary path (the root-to-slot ``size - 1`` path and its
    neighbour) subtrees are perfect, so every leaf of such a subtree has the
    same profile.  One leaf is taken from each perfect subtree hanging from
    the boundary, plus the boundary leaves themselves.
    """
    if size == 1:
        return [_LeafClass(1, (0,))]
    reps: set[int] = set()
    boundary = {0}
    s = size - 1
    while s > 0:
        boundary.add(s)
        s = (s - 1) // 2
    s = (size - 1) // 2  # first leaf slot
    while s >= 0:
        boundary.add(s)
        if s == 0:
            break
        s = (s - 1) // 2
    for b in boundary:
        for c in (2 * b + 1, 2 * b + 2):
            if c < size:
                # leftmost leaf of the subtree rooted at c
                x = c
                while 2 * x + 1 < size:
                    x = 2 * x + 1
                reps.add(x)
                # rightmost leaf too, covers the boundary leaves
                x = c
                while 2 * x + 1 < size:
                    x = 2 * x + 2 if 2 * x + 2 < size else 2 * x + 1
                reps.add(x)
    out = []
    for x in sorted(reps):
        depth = (x + 1).bit_length() - 1
        lengths = {0}
        node = x
        e = depth
        while node > 0:
            parent = (node - 1) // 2
            sib = node + 1 if node % 2 == 1 else node - 1
            e -= 1
            for d in _subtree_leaf_depths(size, sib):
                lengths.add((depth - e) + (d - e))
            node = parent
        out.append(_LeafClass(depth + 1, tuple(sorted(lengths))))
    return out


def build_tree(spec: SequenceSpec, n: int) -> tuple[Tree, ConstructionTrace]:
    """Materialize ``T_n((a_i))`` on exactly ``n`` vertices.

    Spine vertices are ``0..t+1``; the hanging trees follow in spine order,
    each heap-indexed from its root (children of slot ``s`` are ``2s+1`` and
    ``2s+2``).  Keeping slots ``0..L-1`` of a perfect tree is the same as
    deleting sibling leaf pairs from the bottom layer, highest index first.
    """
    layout = SpineLayout.of(spec, n)
    trace = layout.trace()
    trace.check(n, layout.layers[-1])
    tree = layout.materialize()
    return tree, trace


def check_last_tree(tree: Tree, layout: SpineLayout) -> bool:
    """Structural audit: the trimmed tree is binary with leaves on at most two layers."""
    start = layout.n - layout.leftover
    depths = set()
    for s in range(layout.leftover):
        v = start + s
        children = [u for u in tree.adjacency[v] if u > v]
        if len(children) not in (0, 2):
            return False
        if not children:
            depths.add((s + 1).bit_length() - 1)
    return max(depths) - min(depths) <= 1


# --- sumsets -----------------------------------------------------------------

DIGITS_X = (1, 2, 5, 7)
DIGITS_Y = (-5, -4, -1, 1)


@dataclass(frozen=True)
class SumsetPair:
    U: tuple[int, ...]
    V: tuple[int, ...]
    m: int
    sum_size: int
    verified: str  # how U - V = [m] was established: "exhaustive" or "digits"

    @property
    def beta(self) -> float:
        return math.log(self.sum_size) / math.log(self.m)


def sumset(A: Iterable[int], B: Iterable[int]) -> set[int]:
    B = list(B)
    return {a + b for a in A for b in B}


def diffset(A: Iterable[int], B: Iterable[int]) -> set[int]:
    B = list(B)
    return {a - b for a in A for b in B}


def sumset_uv(k: int, base_x: Sequence[int] = DIGITS_X, base_y: Sequence[int] = DIGITS_Y) -> SumsetPair:
    """Digit expansions of ``X = {1,2,5,7}``, ``Y = {-5,-4,-1,1}`` in base 13, shifted
    so that ``U - V = [13^k]`` and ``|U + V| = 10^k``.

    Small ``k`` are checked by full set arithmetic.  Beyond that the digit
    argument is checked instead: ``X - Y`` is exactly ``[0, 12]`` and ``X + Y``
    spans fewer than 13 consecutive integers, so digit strings add and
    subtract without carries or collisions.
    """
    if k < 1:
        raise PreconditionError("k must be positive")
    m = 13**k
    if m >= 2**63:
        raise OverflowError(f"13^{k} exceeds the 64-bit range")
    off = (m - 1) // 6
    powers = [13**i for i in range(k)]
    U = sorted(sum(d * p for d, p in zip(ds, powers)) + off + 1 for ds in itertools.product(base_x, repeat=k))
    V = sorted(sum(d * p for d, p in zip(ds, powers)) + off for ds in itertools.product(base_y, repeat=k))
    xy_sum = sumset(base_x, base_y)
    if diffset(base_x, base_y) != set(range(13)) or max(xy_sum) - min(xy_sum) >= 13:
        raise AssertionError("digit sets do not have the carry-free property")
    if k <= 4:
        s = sumset(U, V)
        if diffset(U, V) != set(range(1, m + 1)) or not s <= set(range(1, m + 1)):
            raise AssertionError("sumset identity failed")
        return SumsetPair(tuple(U), tuple(V), m, len(s), "exhaustive")
    return SumsetPair(tuple(U), tuple(V), m, len(xy_sum) ** k, "digits")


def sequence_from_sumset(pair: SumsetPair) -> SequenceSpec:
    """``a_i = u_i + v_i`` where ``(u_i, v_i)`` is the representation ``i = u_i - v_i``
    with the smallest ``u_i``."""
    Vset = set(pair.V)
    vals = []
    for i in range(1, pair.m + 1):
        u = next((u for u in pair.U if u - i in Vset), None)
        if u is None:
            raise SequenceError(f"{i} is not in U - V")
        a = 2 * u - i
        if a < 1:
            raise SequenceError(f"a_{i} = {a} is not positive")
        vals.append(a)
    k = round(math.log(pair.m, 13))
    family_k = k if 13**k == pair.m else None
    return SequenceSpec("sumset" if family_k else "list", family_k, tuple(vals))


def staircase_sequence(m: int) -> SequenceSpec:
    """``a_i = ceil(i/m) m - ((i - 1) mod m)`` for ``i = 1..m^2``."""
    if m < 1:
        raise SequenceError("m must be positive")
    vals = tuple(-(-i // m) * m - (i - 1) % m for i in range(1, m * m + 1))
    return SequenceSpec("staircase", m, vals)


def staircase_congruence_holds(m: int) -> bool:
    """``a_s + s == 1 (mod m)`` for every ``s`` in ``[m^2]``."""
    vals = staircase_sequence(m).values
    return all((a + s - 1) % m == 0 for s, a in enumerate(vals, 1))


# --- short-length counting ---------------------------------------------------


def analytic_short_lengths(spec: SequenceSpec, n: int, M: int) -> set[int]:
    """Superset of the leaf-to-leaf lengths ``<= M`` from the case analysis.

    With ``U2 = {a_s + s}`` and ``V2 = {a_s - s}`` over one period ``[m]``,
    two leaves in hanging trees ``i < j`` (not the last) are at distance
    ``(a + s)_j + (a - s)_i + q m``; the last tree, the two spine ends and
    pairs inside one hanging tree contribute the remaining shifted copies.
    """
    layout = SpineLayout.of(spec, n)
    vals = spec.values
    m = len(vals)
    t = layout.t
    U2 = {a + s for s, a in enumerate(vals, 1)}
    V2 = {a - s for s, a in enumerate(vals, 1)}
    qmax = -(-M // m) + 1
    out: set[int] = set()

    def add(x: int) -> None:
        if 0 <= x <= M:
            out.add(x)

    # inside one hanging tree
    for a in set(layout.layers[:-1]):
        for h in range(a):
            add(2 * h)
    for cls in _heap_leaf_representatives(layout.leftover):
        for d in cls.internal:
            add(d)
    last_depths = layout.spine_depths(t)
    ts = (t - 1) % m + 1
    for q in range(qmax + 1):
        for u in U2:
            for v in V2:
                add(u + v + q * m)  # two perfect hanging trees
            add(u + q * m)  # v_0 to a perfect hanging tree
        for v in V2:
            for d in last_depths:
                add(v + ts + d + q * m)  # perfect tree to the last tree
    for v in V2:
        # perfect tree to v_{t+1}: v + t + 1 - q m for any q >= 0
        x = v + t + 1
        for y in range(x % m, min(M, x) + 1, m):
            add(y)
    for d in last_depths:
        add(t + d)  # v_0 to the last tree
        add(d + 1)  # last tree to v_{t+1}
    add(t + 1)
    add(0)
    return out


def count_short_lengths(spec: SequenceSpec, n: int, M: int) -> tuple[int, int]:
    """``(analytic, brute)`` counts of distinct leaf-to-leaf lengths in ``[0, M]``."""
    tree, _ = build_tree(spec, n)
    brute = len(leaf_lengths(tree, max_len=M))
    return len(analytic_short_lengths(spec, n, M)), brute


# --- sumset search ------------------------------------------------------------


@dataclass(frozen=True)
class SumsetCandidate:
    X: tuple[int, ...]
    Y: tuple[int, ...]
    diff_size: int
    sum_size: int

    @property
    def ruzsa_ok(self) -> bool:
        return self.sum_size >= self.diff_size ** (2 / 3) - 1e-9


def _search_estimate(width: int, base: int, max_size: int) -> int:
    return sum(math.comb(width, s) * s**max_size for s in range(1, max_size + 1) if s * max_size >= base)


def sumset_search(
    base: int,
    max_digit_set: int,
    digit_range: Optional[tuple[int, int]] = None,
) -> list[SumsetCandidate]:
    """Digit sets ``X, Y`` (at most ``max_digit_set`` elements each) with
    ``X - Y`` covering ``[0, base-1]``, ranked by ``|X + Y|``.

    Digits range over ``[-base+1, base-1]`` unless ``digit_range`` is given.
    For each ``X`` the sets ``Y`` are found by branching on the smallest
    uncovered difference ``d``: some ``y`` must equal ``x - d``.  Only
    inclusion-minimal ``Y`` are kept.  ``X`` is enumerated up to translation
    and every translate that fits the window is reported.
    """
    if not 2 <= base <= 13:
        raise PreconditionError("base must be in [2, 13]")
    if not 1 <= max_digit_set <= 5:
        raise PreconditionError("max_digit_set must be in [1, 5]")
    lo, hi = digit_range if digit_range is not None else (-base + 1, base - 1)
    width = hi - lo + 1
    est = _search_estimate(width, base, max_digit_set)
    if est > SEARCH_CAP:
        raise PreconditionError(f"search space ~{est} exceeds the cap of {SEARCH_CAP}")
    targets = list(range(base))
    found: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    for size in range(1, max_digit_set + 1):
        if size * max_digit_set < base:
            continue
        for rest in itertools.combinations(range(lo + 1, hi + 1), size - 1):
            X = (lo,) + rest
            # Y may sit below the window before translating back into it
            for Y in _cover_sets(X, targets, max_digit_set, lo - width + 1, hi):
                # translate so both sets stay in the window
                shift_lo = lo - min(min(X), min(Y))
                shift_hi = hi - max(max(X), max(Y))
                for c in range(shift_lo, shift_hi + 1):
                    found.add((tuple(x + c for x in X), tuple(y + c for y in Y)))
    out = [
        SumsetCandidate(X, Y, len(diffset(X, Y)), len(sumset(X, Y)))
        for X, Y in found
    ]
    out.sort(key=lambda c: (c.sum_size, len(c.X) + len(c.Y), c.X, c.Y))
    return out


def _cover_sets(X, targets, max_size, lo, hi):
    """All inclusion-minimal ``Y`` within ``[lo, hi]`` with ``X - Y`` containing ``targets``."""
    results: set[tuple[int, ...]] = set()

    def rec(Y: tuple[int, ...], covered: frozenset):
        missing = [d for d in targets if d not in covered]
        if not missing:
            results.add(tuple(sorted(Y)))
            return
        if len(Y) == max_size:
            return
        d = missing[0]
        for x in X:
            y = x - d
            if lo <= y <= hi and y not in Y:
                rec(Y + (y,), covered | {x2 - y for x2 in X})

    rec((), frozenset())
    minimal = []
    for Y in results:
        sY = set(Y)
        if not any(set(Z) < sY for Z in results):
            minimal.append(Y)
    return minimal


def sumset_search_naive(base: int, max_digit_set: int, digit_range: tuple[int, int]) -> int:
    """Smallest ``|X + Y|`` over all pairs with ``X - Y`` covering ``[0, base-1]``, by brute force."""
    lo, hi = digit_range
    digits = range(lo, hi + 1)
    need = set(range(base))
    subsets = [c for s in range(1, max_digit_set + 1) for c in itertools.combinations(digits, s)]
    best = None
    for X in subsets:
        for Y in subsets:
            if need <= diffset(X, Y):
                s = len(sumset(X, Y))
                if best is None or s < best:
                    best = s
    return best
