"""Symmetry-reduced exact solving on blow-up graphs via count vectors.

All vertices in one blow-up class are twins (equal neighborhoods, no
mutual edges), so a balanced partition of a blow-up is determined, up to
irrelevant within-class permutations, by how many vertices of each class
it takes: a count vector.  This collapses the search space from
C(total, total/2) subsets to a product of class occupancies.  Twin
classes of the *base* graph are merged first (e.g. the 7 independent
base vertices of the 12-vertex join collapse into a single class), which
is what makes 48- and 72-vertex instances instant.

The module also carries the machinery for induced subgraphs of C5
blow-ups with n vertices per class: for class counts a = (a1..a5) the
induced edge count is the cyclic form a1a2 + a2a3 + a3a4 + a4a5 + a5a1,
which is minimized over arrangements by the pentagram form

    T(b) = b1b4 + b4b3 + b3b2 + b2b5 + b5b1

of the non-increasing rearrangement b.  Over all profiles with a fixed
vertex total pn + q (p < 5, q < n) the minimum has the closed form

    f(n, p, q) = 0 (p <= 1), qn (p = 2), n^2 + 2qn (p = 3), 3n^2 + 2qn (p = 4),

attained at b* = (n,..,n,q,0,..,0) with p leading n's.  A unit-transfer
loop (move one vertex from the last positive class to the first unfull
one) carries any feasible b to b* in ||b - b*||/2 steps without ever
increasing T; `minimize_star_form` implements it and records the trace.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .exact import ExactResult
from .families import BlowupGraph
from .graphs import BalancedPartition, ContractError, Graph, ParityError, VertexSet

# pentagram pairing (0-indexed): products over these index pairs give T
_STAR_PAIRS = ((0, 3), (3, 2), (2, 1), (1, 4), (4, 0))


def c5_profile_edges(a: Sequence[int]) -> int:
    """Edges induced in a C5 blow-up by taking a[i] vertices of class i."""
    if len(a) != 5:
        raise ContractError(f"profile must have 5 entries, got {len(a)}")
    return a[0] * a[1] + a[1] * a[2] + a[2] * a[3] + a[3] * a[4] + a[4] * a[0]


def star_form(b: Sequence[int]) -> int:
    """Pentagram form of a profile: pairs (1,4),(4,3),(3,2),(2,5),(5,1).

    For non-increasing b this equals the minimum of c5_profile_edges over
    all arrangements of b, and is attained by the arrangement
    (b1, b4, b3, b2, b5)."""
    if len(b) != 5:
        raise ContractError(f"profile must have 5 entries, got {len(b)}")
    return sum(b[i] * b[j] for i, j in _STAR_PAIRS)


@dataclass(frozen=True)
class FiveProfile:
    """Class counts a for a C5 blow-up plus their sorted rearrangement b."""

    a: tuple[int, int, int, int, int]

    def __post_init__(self):
        if len(self.a) != 5 or any(x < 0 for x in self.a):
            raise ContractError(f"profile needs 5 non-negative entries, got {self.a}")

    @property
    def b(self) -> tuple[int, int, int, int, int]:
        return tuple(sorted(self.a, reverse=True))

    @property
    def cycle_edges(self) -> int:
        return c5_profile_edges(self.a)

    @property
    def star(self) -> int:
        return star_form(self.b)


def min_edges_closed_form(n: int, p: int, q: int) -> int:
    """Minimum induced edge count in C5^n over pn + q vertices (closed form)."""
    if n < 1:
        raise ContractError(f"class size n must be >= 1, got {n}")
    if not 0 <= p < 5:
        raise ContractError(f"p must be in [0, 5), got {p}")
    if not 0 <= q < n:
        raise ContractError(f"q must be in [0, n), got {q}")
    if p <= 1:
        return 0
    if p == 2:
        return q * n
    if p == 3:
        return n * n + 2 * q * n
    return 3 * n * n + 2 * q * n


def target_profile(n: int, total: int) -> tuple[int, ...]:
    """The minimizing sorted profile b*: p entries n, one entry q, zeros."""
    if not 0 <= total <= 5 * n:
        raise ContractError(f"total {total} infeasible for class size {n}")
    p, q = divmod(total, n)
    b = [n] * p + ([q] if q and p < 5 else []) + [0] * 5
    return tuple(b[:5])


def transfer_delta(b: Sequence[int], i: int, j: int) -> int:
    """T(b^{ij}) - T(b) by direct evaluation, where b^{ij} moves one unit
    from position j to position i (1-indexed, i < j)."""
    if not 1 <= i < j <= 5:
        raise ContractError(f"need 1 <= i < j <= 5, got ({i}, {j})")
    moved = list(b)
    moved[i - 1] += 1
    moved[j - 1] -= 1
    return star_form(moved) - star_form(b)


# closed forms for T(b^{ij}) - T(b), keyed by 1-indexed (i, j)
TRANSFER_DELTA_FORMULAS = {
    (1, 2): lambda b: b[3] - b[2],
    (1, 3): lambda b: b[4] - b[1],
    (1, 4): lambda b: b[4] - b[2] + b[3] - b[0] - 1,
    (1, 5): lambda b: b[4] - b[1] + b[3] - b[0] - 1,
    (2, 3): lambda b: b[4] - b[3] + b[2] - b[1] - 1,
    (2, 4): lambda b: b[4] - b[0],
    (2, 5): lambda b: b[4] - b[0] + b[2] - b[1] - 1,
    (3, 4): lambda b: b[1] - b[0] + b[3] - b[2] - 1,
    (3, 5): lambda b: b[3] - b[0],
    (4, 5): lambda b: b[2] - b[1],
}


def transfer_delta_formula(b: Sequence[int], i: int, j: int) -> int:
    if not 1 <= i < j <= 5:
        raise ContractError(f"need 1 <= i < j <= 5, got ({i}, {j})")
    return TRANSFER_DELTA_FORMULAS[(i, j)](list(b))


@dataclass(frozen=True)
class TransferTrace:
    """Run record of the unit-transfer minimization loop."""

    n: int
    start: tuple[int, ...]
    target: tuple[int, ...]
    steps: tuple[tuple[tuple[int, ...], int], ...]  # (profile, T) after each move
    final_value: int

    @property
    def iterations(self) -> int:
        return len(self.steps)


def minimize_star_form(b: Sequence[int], n: int) -> TransferTrace:
    """Carry a sorted profile to b* by unit transfers, tracking T at each step.

    Input must be non-increasing with entries in [0, n].  Each iteration
    moves one unit from the last positive position to the first unfull
    one; T never increases and the loop ends at b* after exactly
    ||b - b*|| / 2 iterations.
    """
    b = tuple(b)
    if len(b) != 5:
        raise ContractError(f"profile must have 5 entries, got {len(b)}")
    if any(not 0 <= x <= n for x in b):
        raise ContractError(f"entries must lie in [0, {n}], got {b}")
    if any(b[i] < b[i + 1] for i in range(4)):
        raise ContractError(f"profile must be non-increasing, got {b}")
    target = target_profile(n, sum(b))
    cur = list(b)
    steps = []
    while tuple(cur) != target:
        xs = [k for k in range(5) if cur[k] < n]
        ys = [k for k in range(5) if cur[k] > 0]
        x, y = min(xs), max(ys)
        if x >= y:
            raise AssertionError(f"transfer loop stuck at {cur} (target {target})")
        cur[x] += 1
        cur[y] -= 1
        steps.append((tuple(cur), star_form(cur)))
    return TransferTrace(n=n, start=b, target=target,
                         steps=tuple(steps), final_value=star_form(target))


def _sorted_profiles(n: int, total: int, length: int = 5):
    """All non-increasing tuples of `length` entries in [0, n] summing to total."""
    def rec(pos: int, remaining: int, cap: int, prefix: tuple):
        if pos == length:
            if remaining == 0:
                yield prefix
            return
        hi = min(cap, remaining)
        lo_needed = remaining - cap * (length - pos - 1)
        for v in range(hi, -1, -1):
            if remaining - v > v * (length - pos - 1):
                break
            yield from rec(pos + 1, remaining - v, v, prefix + (v,))

    yield from rec(0, total, n, ())


def min_edges_profile(n: int, total: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Exhaustive minimum of induced edges over all profiles with the given
    vertex total, plus every minimizing sorted profile."""
    if not 0 <= total <= 5 * n:
        raise ContractError(f"total {total} infeasible for class size {n}")
    best: Optional[int] = None
    argmin: list[tuple[int, ...]] = []
    for b in _sorted_profiles(n, total):
        val = star_form(b)
        if best is None or val < best:
            best, argmin = val, [b]
        elif val == best:
            argmin.append(b)
    assert best is not None
    return best, tuple(sorted(argmin))


def i7c5_blowup_case_value(n: int, p: int, q: int) -> int:
    """Side-A edge lower bound in the 2n-blow-up of the 12-vertex join when
    side A holds 2pn + q cycle-part vertices: cross edges to the
    independent part plus the cycle-part closed-form minimum."""
    if n < 1:
        raise ContractError(f"n must be >= 1, got {n}")
    if p == 2:
        lo, hi = n, 2 * n
    elif p in (3, 4):
        lo, hi = 0, 2 * n
    else:
        raise ContractError(f"p must be in {{2, 3, 4}}, got {p}")
    if not lo <= q < hi:
        raise ContractError(f"q={q} outside [{lo}, {hi}) for p={p}")
    x = 2 * p * n + q
    return x * (12 * n - x) + min_edges_closed_form(2 * n, p, q)


def i7c5_blowup_optimum(n: int) -> int:
    """Balanced min-max value of the 2n-blow-up of the 12-vertex join."""
    if n < 1:
        raise ContractError(f"n must be >= 1, got {n}")
    return 37 * n * n


@dataclass(frozen=True)
class AggregatedBlowup:
    """Blow-up after merging twin base vertices into classes."""

    source: BlowupGraph
    class_graph: Graph
    class_members: tuple[tuple[int, ...], ...]  # base ids per class, ascending
    multiplicities: tuple[int, ...]


def aggregate_twins(bg: BlowupGraph) -> AggregatedBlowup:
    """Merge base vertices with identical neighborhoods (twins are never
    adjacent, so merged classes stay edge-free inside)."""
    groups: dict[int, list[int]] = {}
    for v in range(bg.base.n):
        groups.setdefault(bg.base.adj[v], []).append(v)
    classes = sorted(groups.values(), key=lambda ms: ms[0])
    index = {}
    for ci, members in enumerate(classes):
        for v in members:
            index[v] = ci
    k = len(classes)
    rows = [0] * k
    for ci, members in enumerate(classes):
        rep = members[0]
        for cj in range(k):
            if ci != cj and bg.base.has_edge(rep, classes[cj][0]):
                rows[ci] |= 1 << cj
    mults = tuple(sum(bg.multiplicities[v] for v in members) for members in classes)
    return AggregatedBlowup(bg, Graph(k, tuple(rows)),
                            tuple(tuple(ms) for ms in classes), mults)


@dataclass(frozen=True)
class CountVector:
    """Per-class occupancy of one partition side in a blow-up."""

    counts: tuple[int, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != len(self.multiplicities):
            raise ContractError("counts and multiplicities differ in length")
        for c, mult in zip(self.counts, self.multiplicities):
            if not 0 <= c <= mult:
                raise ContractError(f"count {c} outside [0, {mult}]")

    def complement(self) -> "CountVector":
        return CountVector(tuple(m - c for c, m in zip(self.counts, self.multiplicities)),
                           self.multiplicities)


def blowup_edges_from_counts(bg: BlowupGraph, cv: CountVector) -> int:
    """Edges induced by any vertex set taking cv.counts[i] copies of base
    vertex i: sum over base edges of the count product."""
    if cv.multiplicities != bg.multiplicities:
        raise ContractError("count vector bound to different multiplicities")
    return sum(cv.counts[u] * cv.counts[v] for u, v in bg.base.edges())


@dataclass(frozen=True)
class BlowupResult:
    value: int
    count_vector: tuple[int, ...]          # per aggregated class
    aggregated_classes: tuple[tuple[int, ...], ...]
    class_multiplicities: tuple[int, ...]
    base_counts: tuple[int, ...]           # distributed back to base vertices
    witness: BalancedPartition
    nodes_explored: int
    proven_optimal: bool


def _search_counts(edges_below: list[list[int]], mults: tuple[int, ...],
                   half: int, first_values: range) -> tuple[Optional[int], tuple, int]:
    """Enumerate count vectors (first coordinate restricted to first_values)
    in lexicographic order; return (best value, best counts, leaves)."""
    k = len(mults)
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] + mults[i]
    counts = [0] * k
    best: Optional[int] = None
    best_counts: tuple = ()
    leaves = 0

    def rec(i: int, need: int, e_a: int, e_b: int) -> None:
        nonlocal best, best_counts, leaves
        if best is not None and max(e_a, e_b) >= best:
            return
        if i == k:
            leaves += 1
            val = max(e_a, e_b)
            if best is None or val < best:
                best, best_counts = val, tuple(counts)
            return
        sum_a = sum(counts[j] for j in edges_below[i])
        sum_b = sum(mults[j] - counts[j] for j in edges_below[i])
        lo = max(0, need - suffix[i + 1])
        hi = min(mults[i], need)
        if i == 0:
            lo = max(lo, first_values.start)
            hi = min(hi, first_values.stop - 1)
        for c in range(lo, hi + 1):
            counts[i] = c
            rec(i + 1, need - c, e_a + c * sum_a, e_b + (mults[i] - c) * sum_b)
        counts[i] = 0

    rec(0, half, 0, 0)
    return best, best_counts, leaves


def exact_min_max_blowup(bg: BlowupGraph, workers: int = 1) -> BlowupResult:
    """Balanced min-max value of the expanded blow-up, via count vectors
    over twin-aggregated classes.  Equals exact_min_max_balanced on the
    expanded graph; the returned witness is a concrete expanded partition."""
    total = bg.total
    if total % 2:
        raise ParityError(f"blow-up total {total} is odd")
    agg = aggregate_twins(bg)
    k = agg.class_graph.n
    mults = agg.multiplicities
    edges_below = [[j for j in range(i) if agg.class_graph.has_edge(i, j)]
                   for i in range(k)]
    half = total // 2

    suffix_rest = sum(mults[1:])
    lo0 = max(0, half - suffix_rest)
    hi0 = min(mults[0], half)
    first_vals = list(range(lo0, hi0 + 1))
    chunks: list[range]
    if workers <= 1 or len(first_vals) <= 1:
        chunks = [range(lo0, hi0 + 1)]
    else:
        w = min(workers, len(first_vals))
        base, extra = divmod(len(first_vals), w)
        chunks = []
        start = lo0
        for i in range(w):
            size = base + (1 if i < extra else 0)
            chunks.append(range(start, start + size))
            start += size

    if len(chunks) == 1:
        best, best_counts, leaves = _search_counts(edges_below, mults, half, chunks[0])
        total_leaves = leaves
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            futs = [pool.submit(_search_counts, edges_below, mults, half, ch)
                    for ch in chunks]
            results = [f.result() for f in futs]
        found = [r for r in results if r[0] is not None]
        best, best_counts, _ = min(found, key=lambda r: (r[0], r[1]))
        total_leaves = sum(r[2] for r in results)
    assert best is not None

    # distribute class counts back to base-vertex blocks, ascending ids
    base_counts = [0] * bg.base.n
    for ci, members in enumerate(agg.class_members):
        c = best_counts[ci]
        for v in members:
            take = min(c, bg.multiplicities[v])
            base_counts[v] = take
            c -= take
    mask = 0
    for v in range(bg.base.n):
        start = bg.block_start(v)
        mask |= ((1 << base_counts[v]) - 1) << start
    expanded = bg.expand()
    witness = BalancedPartition.from_side(expanded, VertexSet(total, mask))
    assert witness.max_side == best, "count-vector value must match expansion"
    return BlowupResult(
        value=best,
        count_vector=best_counts,
        aggregated_classes=agg.class_members,
        class_multiplicities=mults,
        base_counts=tuple(base_counts),
        witness=witness,
        nodes_explored=total_leaves,
        proven_optimal=True,
    )


def all_optimal_count_vectors(bg: BlowupGraph) -> tuple[tuple[int, ...], ...]:
    """Every aggregated count vector attaining the balanced min-max value."""
    res = exact_min_max_blowup(bg)
    agg = aggregate_twins(bg)
    k = agg.class_graph.n
    mults = agg.multiplicities
    edges_below = [[j for j in range(i) if agg.class_graph.has_edge(i, j)]
                   for i in range(k)]
    half = bg.total // 2
    out: list[tuple[int, ...]] = []
    counts = [0] * k
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] + mults[i]

    def rec(i: int, need: int, e_a: int, e_b: int) -> None:
        if max(e_a, e_b) > res.value:
            return
        if i == k:
            if max(e_a, e_b) == res.value:
                out.append(tuple(counts))
            return
        sum_a = sum(counts[j] for j in edges_below[i])
        sum_b = sum(mults[j] - counts[j] for j in edges_below[i])
        for c in range(max(0, need - suffix[i + 1]), min(mults[i], need) + 1):
            counts[i] = c
            rec(i + 1, need - c, e_a + c * sum_a, e_b + (mults[i] - c) * sum_b)
        counts[i] = 0

    rec(0, half, 0, 0)
    return tuple(out)
