"""Independence and triangle-free-subgraph search, heavy-edge extraction.

Exact searches are bitset branch-and-bound and are only attempted up to
a configurable vertex cap; beyond the cap a deterministic greedy result
is returned and flagged non-exact.  Greedy results are always feasible
(a valid independent set / triangle-free inducing set), just possibly
not maximum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import (ContractError, Graph, NoEdgeError, VertexSet, _bits,
                     _popcount, is_independent)

INDEPENDENCE_EXACT_CAP = 40
TRIANGLE_FREE_EXACT_CAP = 24


@dataclass(frozen=True)
class SubsetSearchResult:
    witness: VertexSet
    exact: bool

    @property
    def size(self) -> int:
        return self.witness.size


def _max_clique_mask(adj: list[int], n: int) -> int:
    """Maximum clique of the graph given by bitmask rows, via greedy-coloring
    branch and bound (Tomita-style).  Returns the clique as a bit mask."""
    best_mask = 0
    best_size = 0

    def expand(r_mask: int, r_size: int, p_mask: int) -> None:
        nonlocal best_mask, best_size
        if not p_mask:
            if r_size > best_size:
                best_size, best_mask = r_size, r_mask
            return
        # Greedy coloring of the candidate set: color classes are
        # independent sets, so r can grow by at most (max color) more.
        order: list[tuple[int, int]] = []
        uncolored = p_mask
        color = 0
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                lsb = avail & -avail
                v = lsb.bit_length() - 1
                order.append((v, color))
                uncolored ^= lsb
                avail &= ~adj[v]
                avail ^= lsb
        for v, c in reversed(order):
            if r_size + c <= best_size:
                return
            bit = 1 << v
            expand(r_mask | bit, r_size + 1, p_mask & adj[v])
            p_mask ^= bit

    expand(0, 0, (1 << n) - 1)
    return best_mask


def _greedy_independent_mask(g: Graph) -> int:
    """Min-degree greedy maximal independent set (ties to lowest id)."""
    remaining = (1 << g.n) - 1
    chosen = 0
    while remaining:
        best_v = -1
        best_d = g.n + 1
        for v in _bits(remaining):
            d = _popcount(g.adj[v] & remaining)
            if d < best_d:
                best_v, best_d = v, d
        chosen |= 1 << best_v
        remaining &= ~(g.adj[best_v] | 1 << best_v)
    return chosen


def independence_number(g: Graph, exact_cap: int = INDEPENDENCE_EXACT_CAP) -> SubsetSearchResult:
    """Largest independent set; exact for n <= exact_cap, else greedy lower bound.

    Exact mode runs max-clique branch and bound on the complement graph.
    """
    if g.n > exact_cap:
        return SubsetSearchResult(VertexSet(g.n, _greedy_independent_mask(g)), exact=False)
    full = (1 << g.n) - 1
    comp = [~(g.adj[v] | 1 << v) & full for v in range(g.n)]
    mask = _max_clique_mask(comp, g.n)
    return SubsetSearchResult(VertexSet(g.n, mask), exact=True)


def _set_has_edge(adj: tuple[int, ...], mask: int) -> bool:
    for u in _bits(mask):
        if adj[u] & mask & ((1 << u) - 1):
            return True
    return False


def greedy_maximal_triangle_free(g: Graph, pool: VertexSet | None = None) -> VertexSet:
    """Ascending-id greedy: add a vertex whenever it keeps the induced
    subgraph triangle-free.  The result is maximal (non-extendable)."""
    pool_mask = pool.mask if pool is not None else (1 << g.n) - 1
    cur = 0
    for v in _bits(pool_mask):
        inside = g.adj[v] & cur
        if not _set_has_edge(g.adj, inside):
            cur |= 1 << v
    return VertexSet(g.n, cur)


def max_triangle_free_induced(g: Graph,
                              exact_cap: int = TRIANGLE_FREE_EXACT_CAP) -> SubsetSearchResult:
    """Largest vertex set inducing a triangle-free subgraph.

    Exact (branch and bound over include/exclude decisions) for
    n <= exact_cap; greedy maximal otherwise, flagged non-exact.
    """
    if g.n > exact_cap:
        return SubsetSearchResult(greedy_maximal_triangle_free(g), exact=False)

    best_mask = 0
    best_size = -1
    adj = g.adj
    n = g.n

    def dfs(v: int, cur_mask: int, cur_size: int) -> None:
        nonlocal best_mask, best_size
        if cur_size + (n - v) <= best_size:
            return
        if v == n:
            if cur_size > best_size:
                best_size, best_mask = cur_size, cur_mask
            return
        inside = adj[v] & cur_mask
        if not _set_has_edge(adj, inside):
            dfs(v + 1, cur_mask | 1 << v, cur_size + 1)
        dfs(v + 1, cur_mask, cur_size)

    dfs(0, 0, 0)
    return SubsetSearchResult(VertexSet(g.n, best_mask), exact=True)


@dataclass(frozen=True)
class HeavyEdgeDecomposition:
    """The edge v1 v2 maximizing d(v1) + d(v2) and its neighborhood split.

    n1_only = N(v1) \\ N(v2) \\ {v2},  n2_only = N(v2) \\ N(v1) \\ {v1},
    common = N(v1) & N(v2); the three sets are pairwise disjoint and a1,
    a2, c are their sizes divided by n, normalized so a1 >= a2.  In a
    K4-free graph `common` is an independent set of size at least
    d(v1) + d(v2) - n.
    """

    v1: int
    v2: int
    n1_only: VertexSet
    n2_only: VertexSet
    common: VertexSet
    a1: Fraction
    a2: Fraction
    c: Fraction
    degree_sum: int


def heavy_edge(g: Graph) -> HeavyEdgeDecomposition:
    """Edge with maximum endpoint degree sum (>= 4m/n), ties lexicographic."""
    best = None
    best_sum = -1
    degs = [g.degree(v) for v in range(g.n)]
    for u, v in g.edges():
        s = degs[u] + degs[v]
        if s > best_sum:
            best, best_sum = (u, v), s
    if best is None:
        raise NoEdgeError("heavy_edge requires at least one edge")
    v1, v2 = best
    m1 = g.adj[v1] & ~g.adj[v2] & ~(1 << v2)
    m2 = g.adj[v2] & ~g.adj[v1] & ~(1 << v1)
    if _popcount(m1) < _popcount(m2):
        v1, v2 = v2, v1
        m1, m2 = m2, m1
    common = g.adj[v1] & g.adj[v2]
    n = g.n
    return HeavyEdgeDecomposition(
        v1=v1, v2=v2,
        n1_only=VertexSet(n, m1),
        n2_only=VertexSet(n, m2),
        common=VertexSet(n, common),
        a1=Fraction(_popcount(m1), n),
        a2=Fraction(_popcount(m2), n),
        c=Fraction(_popcount(common), n),
        degree_sum=best_sum,
    )
