"""Constructive balanced-partition pipelines with case traces.

Two decision trees drive the constructions:

K4-free tree (target max side < 0.074 n^2):
  COR36       sparse graphs: plain swap search, the degree bound already
              lands under the target
  L41_C11     big independent set found, but every triangle-free inducing
              set of the rest is small: the graph is sparse, swap route
  L41_C12     big independent set I and a big triangle-free Z0: seed
              A from I and A^c from Z0
  L43_C31/32  heavy-edge neighborhood split by t = a2 + c (sparse route,
              or split N(v1) evenly across the sides)
  L43_C331    A = N(v2) plus a low-cross subset of N(v1) - N(v2)
  L43_C332_i  c in (0.22 + i/100, 0.23 + i/100]: A = N(v2) + Y1 + filler
              while reserving 0.45n of N(v1) - N(v2) for A^c

Join tree, G = I v H with H triangle-free (target (5/72) n^2):
  JOIN_C1     huge I: spread two 0.31n slices of I across the sides
  JOIN_C2     alpha in (7/12, 0.62]: sparse route, or bipartize H and
              treat (I, H1, H2) as a near-3-partite seeding
  JOIN_C3     alpha in [1/2, 7/12]: park H entirely in A^c, or the
              bipartize route
  JOIN_C4     alpha < 1/2: sparse route, or grow A from I plus the
              neighborhood of a max-degree H-vertex

Fractional thresholds are floors; whenever a branch's set arithmetic is
infeasible at the given n the pipeline falls back to plain swap search
and labels the trace FALLBACK (the guarantees behind the branches are
asymptotic, so desk-scale compliance is property-checked, not assumed).
Every branch ends with an improving-swaps-only polish.  All thresholds
are exact rationals; no floats touch any comparison.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .graphs import (BalancedPartition, ContractError, Graph, ParityError,
                     VertexSet, e_cross, e_subset, induced_subgraph,
                     is_independent, is_k4_free, induces_triangle_free)
from .localsearch import (DEFAULT_CONFIG, HeuristicConfig, LocalSearchResult,
                          adjacency_matrix, bipartize_local_search,
                          polish_partition, swap_local_search)
from .search import greedy_maximal_triangle_free, heavy_edge, independence_number

K4FREE_TARGET = Fraction(37, 500)          # 0.074
JOIN_TARGET = Fraction(5, 72)
SPARSE_EDGE_THRESHOLD = Fraction(2959, 100000)

PRESET_K4FREE = (Fraction(37, 500), Fraction(1, 100_000))
PRESET_JOIN = (Fraction(5, 72), Fraction(1, 1000))
PRESETS = {"k4free-0.074": PRESET_K4FREE, "join-5-72": PRESET_JOIN}

TRACE_QUANTITY_KEYS = {
    "COR36": {"m"},
    "L41_C11": {"m", "alpha", "z"},
    "L41_C12": {"alpha", "z"},
    "L43_C31": {"m", "a1", "a2", "c", "t"},
    "L43_C32": {"a1", "a2", "c", "t"},
    "L43_C331": {"a1", "a2", "c", "t"},
    "L43_C332_1": {"a1", "a2", "c", "t"},
    "L43_C332_2": {"a1", "a2", "c", "t"},
    "L43_C332_3": {"a1", "a2", "c", "t"},
    "L43_C332_4": {"a1", "a2", "c", "t"},
    "L43_C332_5": {"a1", "a2", "c", "t"},
    "JOIN_C1": {"alpha_join"},
    "JOIN_C2": {"alpha_join", "e0"},
    "JOIN_C3": {"alpha_join", "e0"},
    "JOIN_C4": {"alpha_join", "e0"},
    "FALLBACK": {"m"},
}


@dataclass(frozen=True)
class CaseTrace:
    """Which proof branch produced the partition, and with what numbers."""

    case_label: str
    quantities: dict[str, Fraction]
    achieved: int
    target_bound: Fraction
    compliant: bool
    notes: str = ""

    def __post_init__(self):
        if self.case_label not in TRACE_QUANTITY_KEYS:
            raise ContractError(f"unknown case label {self.case_label!r}")
        expected = TRACE_QUANTITY_KEYS[self.case_label]
        if set(self.quantities) != expected:
            raise ContractError(
                f"{self.case_label} trace must carry exactly {sorted(expected)}, "
                f"got {sorted(self.quantities)}")


def validate_trace(g: Graph, partition: BalancedPartition, trace: CaseTrace) -> None:
    """Internal-consistency check: cached scores, achieved value, and the
    compliance flag must all be recomputable from the witness."""
    if not partition.verify(g):
        raise AssertionError("partition cached scores do not recompute")
    if trace.achieved != partition.max_side:
        raise AssertionError("trace.achieved does not match the witness")
    if trace.compliant != (Fraction(trace.achieved) <= trace.target_bound):
        raise AssertionError("trace.compliant inconsistent with achieved/target")


@dataclass(frozen=True)
class SparseApplicability:
    m0: Fraction
    eps: Fraction
    edge_condition: bool      # m <= (4 m0 - eps) n^2
    n_condition: bool         # n > 1 / eps
    applicable: bool
    achieved_ok: Optional[bool]   # achieved < m0 n^2, when applicable


def sparse_partition(g: Graph, m0: Fraction, eps: Fraction,
                     cfg: HeuristicConfig = DEFAULT_CONFIG,
                     workers: int = 1) -> tuple[LocalSearchResult, SparseApplicability]:
    """Swap search plus the sparse-regime guarantee record: when
    m <= (4 m0 - eps) n^2 and n > 1/eps, a balanced partition with
    max side < m0 n^2 exists (via the degree bound), and the search
    result is checked against it."""
    if g.n % 2:
        raise ParityError(f"balanced partition needs even n, got {g.n}")
    m0 = Fraction(m0)
    eps = Fraction(eps)
    res = swap_local_search(g, "max", cfg, workers=workers)
    n = g.n
    edge_ok = Fraction(g.m) <= (4 * m0 - eps) * n * n
    n_ok = Fraction(n) > 1 / eps
    applicable = edge_ok and n_ok
    achieved_ok = (Fraction(res.partition.max_side) < m0 * n * n) if applicable else None
    return res, SparseApplicability(m0, eps, edge_ok, n_ok, applicable, achieved_ok)


def proportional_subset(g: Graph, b: VertexSet, c: VertexSet, p: int) -> VertexSet:
    """The p vertices of b with the fewest edges into c (ties by id).

    The sum of the p smallest per-vertex counts is at most p times the
    mean, so e(Y, c) |b| <= p e(b, c) holds as an integer inequality.
    """
    if not b.is_disjoint(c):
        raise ContractError("proportional_subset needs disjoint b and c")
    if not 0 <= p <= b.size:
        raise ContractError(f"p={p} outside [0, {b.size}]")
    scored = sorted((g.adj[v] & c.mask).bit_count() for v in b)
    chosen = sorted(b.members(), key=lambda v: ((g.adj[v] & c.mask).bit_count(), v))[:p]
    y = VertexSet.of(g.n, chosen)
    assert e_cross(g, y, c) * b.size <= p * e_cross(g, b, c), \
        "p-smallest selection must satisfy the proportional bound"
    assert sum(scored[:p]) == e_cross(g, y, c)
    return y


def _greedy_fill(g: Graph, adjmat: np.ndarray, base_mask: int,
                 pool_mask: int, count: int) -> int:
    """Add `count` pool vertices to base, each time the one with fewest
    neighbors in the current set (ties lowest id)."""
    if count == 0:
        return base_mask
    in_set = np.zeros(g.n, dtype=bool)
    pool = np.zeros(g.n, dtype=bool)
    for v in range(g.n):
        if base_mask >> v & 1:
            in_set[v] = True
        if pool_mask >> v & 1:
            pool[v] = True
    cross = (adjmat @ in_set.astype(np.int32)).astype(np.int64)
    mask = base_mask
    for _ in range(count):
        cand = np.where(pool, cross, np.iinfo(np.int64).max)
        v = int(np.argmin(cand))
        if not pool[v]:
            raise ContractError("fill pool exhausted")
        pool[v] = False
        mask |= 1 << v
        cross += adjmat[:, v].astype(np.int64)
    return mask


def _finish(g: Graph, side_mask: int, label: str, quantities: dict,
            target: Fraction, cfg: HeuristicConfig,
            notes: str = "") -> tuple[BalancedPartition, CaseTrace]:
    part = BalancedPartition.from_side(g, VertexSet(g.n, side_mask))
    part = polish_partition(g, part, "max", cfg)
    achieved = part.max_side
    trace = CaseTrace(label, quantities, achieved, target,
                      Fraction(achieved) <= target, notes)
    return part, trace


def _swap_route(g: Graph, label: str, quantities: dict, target: Fraction,
                cfg: HeuristicConfig, notes: str,
                workers: int = 1) -> tuple[BalancedPartition, CaseTrace]:
    res = swap_local_search(g, "max", cfg, workers=workers)
    achieved = res.partition.max_side
    trace = CaseTrace(label, quantities, achieved, target,
                      Fraction(achieved) <= target, notes)
    return res.partition, trace


def k4free_partition(g: Graph, cfg: HeuristicConfig = DEFAULT_CONFIG,
                     workers: int = 1) -> tuple[BalancedPartition, CaseTrace]:
    """K4-free decision tree; target max side <= 0.074 n^2."""
    if g.n % 2:
        raise ParityError(f"balanced partition needs even n, got {g.n}")
    if not is_k4_free(g):
        raise ContractError("k4free_partition requires a K4-free graph")
    n = g.n
    m = g.m
    target = K4FREE_TARGET * n * n
    if n == 0:
        part = BalancedPartition(VertexSet(0, 0), 0, 0)
        return part, CaseTrace("COR36", {"m": Fraction(0)}, 0, Fraction(0), True,
                               "empty graph")

    if Fraction(m) <= SPARSE_EDGE_THRESHOLD * n * n:
        res, app = sparse_partition(g, *PRESET_K4FREE, cfg, workers=workers)
        achieved = res.partition.max_side
        trace = CaseTrace("COR36", {"m": Fraction(m)}, achieved, target,
                          Fraction(achieved) <= target,
                          f"sparse route; guarantee applicable={app.applicable}")
        return res.partition, trace

    adjmat = adjacency_matrix(g)
    full = (1 << n) - 1

    # largest independent set we can get cheaply: search + heavy-edge common set
    ind = independence_number(g, exact_cap=min(30, n)).witness
    he = heavy_edge(g)
    i_set = he.common if he.common.size > ind.size else ind
    thr = 7 * n // 25                      # floor(0.28 n)

    if i_set.size >= thr and thr > 0:
        i0 = VertexSet.of(n, i_set.members()[:thr])
        alpha = Fraction(i0.size, n)
        z = greedy_maximal_triangle_free(g, i0.complement())
        z_frac = Fraction(z.size, n)
        if 20 * z.size <= 9 * n:           # |Z| <= 0.45 n
            return _swap_route(g, "L41_C11",
                               {"m": Fraction(m), "alpha": alpha, "z": z_frac},
                               target, cfg,
                               "small Z: density bound puts m in the sparse regime",
                               workers)
        z0_size = 9 * n // 20
        z0 = VertexSet.of(n, z.members()[:z0_size])
        fill_pool = full & ~i0.mask & ~z0.mask
        need = n // 2 - i0.size
        if need < 0 or fill_pool.bit_count() < need:
            return _swap_route(g, "FALLBACK", {"m": Fraction(m)}, target, cfg,
                               "L41_C12 set arithmetic infeasible at this n", workers)
        side = _greedy_fill(g, adjmat, i0.mask, fill_pool, need)
        return _finish(g, side, "L41_C12",
                       {"alpha": alpha, "z": z_frac}, target, cfg,
                       "A from independent set, A^c holds the 0.45n triangle-free block")

    # heavy-edge case split
    a1, a2, c = he.a1, he.a2, he.c
    t = a2 + c
    quantities = {"a1": a1, "a2": a2, "c": c, "t": t}
    n1 = g.neighbors(he.v1)
    n2 = g.neighbors(he.v2)
    b_set = n1.difference(n2)
    c_set = n1.intersection(n2)

    if t <= Fraction(39, 100):
        q = dict(quantities)
        q["m"] = Fraction(m)
        return _swap_route(g, "L43_C31", q, target, cfg,
                           "t <= 0.39: density bound puts m in the sparse regime",
                           workers)

    if t >= Fraction(45, 100):
        k = 9 * n // 20
        if n1.size >= 2 * k and k <= n // 2:
            mem = n1.members()
            side = 0
            for v in mem[:k]:
                side |= 1 << v
            ac_reserved = 0
            for v in mem[k:2 * k]:
                ac_reserved |= 1 << v
            pool = full & ~side & ~ac_reserved
            need = n // 2 - k
            if pool.bit_count() >= need:
                side = _greedy_fill(g, adjmat, side, pool, need)
                return _finish(g, side, "L43_C32", quantities, target, cfg,
                               "N(v1) split 0.45n/0.45n across the sides")
        return _swap_route(g, "FALLBACK", {"m": Fraction(m)}, target, cfg,
                           "L43_C32 set arithmetic infeasible at this n", workers)

    if c <= Fraction(23, 100):
        p = n // 2 - n2.size
        if 0 <= p <= b_set.size:
            y = proportional_subset(g, b_set, c_set, p)
            side = n2.mask | y.mask
            return _finish(g, side, "L43_C331", quantities, target, cfg,
                           "A = N(v2) plus low-cross subset of N(v1) - N(v2)")
        return _swap_route(g, "FALLBACK", {"m": Fraction(m)}, target, cfg,
                           "L43_C331 subset size infeasible at this n", workers)

    if c > Fraction(28, 100):
        return _swap_route(g, "FALLBACK", {"m": Fraction(m)}, target, cfg,
                           "common neighborhood larger than 0.28n at this n", workers)

    # c in (0.23, 0.28]: sub-interval index i with c <= 0.23 + i/100
    i = 1
    while c > Fraction(23, 100) + Fraction(i, 100):
        i += 1
    label = f"L43_C332_{i}"
    y1_size = (n * (50 - i)) // 100 - n2.size
    reserve_size = 9 * n // 20
    if 0 <= y1_size <= b_set.size:
        y1 = proportional_subset(g, b_set, c_set, y1_size)
        rest_b = b_set.difference(y1)
        if rest_b.size >= reserve_size:
            reserve = VertexSet.of(n, rest_b.members()[:reserve_size])
            side = n2.mask | y1.mask
            pool = full & ~side & ~reserve.mask
            need = n // 2 - side.bit_count()
            if 0 <= need <= pool.bit_count():
                side = _greedy_fill(g, adjmat, side, pool, need)
                return _finish(g, side, label, quantities, target, cfg,
                               "A = N(v2) + Y1 + filler; 0.45n of N(v1)-N(v2) "
                               "reserved for A^c")
    return _swap_route(g, "FALLBACK", {"m": Fraction(m)}, target, cfg,
                       f"{label} set arithmetic infeasible at this n", workers)


@dataclass(frozen=True)
class TripartiteResult:
    partition: BalancedPartition
    bound: Fraction               # n^2 / 16
    compliant: bool


def partition_from_parts(g: Graph, parts: list[VertexSet],
                         cfg: HeuristicConfig = DEFAULT_CONFIG) -> BalancedPartition:
    """Part-aware seeding, then polish of every candidate seed.

    Candidate seeds slice the biggest part against the rest at several
    ratios (pure swap walks cannot cross between these regimes, so one
    seed is not enough): side A holds x vertices of the biggest part and
    y of the second, y swept over an 8-step grid, plus the
    all-of-biggest and rest-together patterns.  Parts need not be
    independent here."""
    n = g.n
    if n % 2:
        raise ParityError(f"balanced partition needs even n, got {n}")
    ordered = sorted(parts, key=lambda s: (-s.size, s.mask))
    half = n // 2
    adjmat = adjacency_matrix(g)
    full = (1 << n) - 1
    mem1 = ordered[0].members()
    mem2 = ordered[1].members() if len(ordered) > 1 else ()

    seeds = []

    def add_seed(base: int, pool: int) -> None:
        need = half - base.bit_count()
        if need < 0 or (pool & ~base).bit_count() < need:
            return
        seeds.append(_greedy_fill(g, adjmat, base, pool & ~base, need))

    take1 = min(half, len(mem1))
    base = 0
    for v in mem1[:take1]:
        base |= 1 << v
    add_seed(base, full & ~ordered[0].mask)

    rest = full & ~ordered[0].mask
    if rest.bit_count() <= half:
        add_seed(rest, ordered[0].mask)

    for step in range(9):
        y = len(mem2) * step // 8
        x = half - y
        if not 0 <= x <= len(mem1):
            continue
        base = 0
        for v in mem1[:x]:
            base |= 1 << v
        for v in mem2[:y]:
            base |= 1 << v
        add_seed(base, full)

    if not seeds:
        add_seed(0, full)
    best = None
    for side in dict.fromkeys(seeds):
        part = polish_partition(
            g, BalancedPartition.from_side(g, VertexSet(n, side)), "max", cfg)
        key = (part.max_side, part.total, part.side_a.members())
        if best is None or key < best[0]:
            best = (key, part)
    return best[1]


def tripartite_partition(g: Graph, parts: list[VertexSet],
                         cfg: HeuristicConfig = DEFAULT_CONFIG) -> TripartiteResult:
    """Balanced partition of a 3-partite graph; compliance target n^2/16."""
    if len(parts) != 3:
        raise ContractError(f"need exactly 3 parts, got {len(parts)}")
    union = 0
    total = 0
    for pt in parts:
        if pt.n != g.n:
            raise ContractError("part bound to a different graph order")
        if not is_independent(g, pt):
            raise ContractError("tripartite parts must be independent sets")
        union |= pt.mask
        total += pt.size
    if union != (1 << g.n) - 1 or total != g.n:
        raise ContractError("parts must partition the vertex set")
    part = partition_from_parts(g, parts, cfg)
    bound = Fraction(g.n * g.n, 16)
    return TripartiteResult(part, bound, Fraction(part.max_side) <= bound)


def _join_bipartize_route(g: Graph, i_set: VertexSet, h_set: VertexSet,
                          label: str, quantities: dict, target: Fraction,
                          cfg: HeuristicConfig) -> tuple[BalancedPartition, CaseTrace]:
    h_sub, hmap = induced_subgraph(g, h_set)
    bip = bipartize_local_search(h_sub, cfg)
    h1 = VertexSet.of(g.n, (hmap[v] for v in bip.partition.side_a))
    h2 = h_set.difference(h1)
    part = partition_from_parts(g, [i_set, h1, h2], cfg)
    achieved = part.max_side
    trace = CaseTrace(label, quantities, achieved, target,
                      Fraction(achieved) <= target,
                      f"bipartize branch; {bip.deleted} edges inside the H parts")
    return part, trace


def join_partition(i_set: VertexSet, g: Graph,
                   cfg: HeuristicConfig = DEFAULT_CONFIG,
                   workers: int = 1) -> tuple[BalancedPartition, CaseTrace]:
    """Join decision tree for G = I v H, H triangle-free; target (5/72) n^2."""
    n = g.n
    if n % 2:
        raise ParityError(f"balanced partition needs even n, got {n}")
    if i_set.n != n:
        raise ContractError("independent block bound to a different graph order")
    if not is_independent(g, i_set):
        raise ContractError("independent block has internal edges")
    h_set = i_set.complement()
    if not induces_triangle_free(g, h_set):
        raise ContractError("the non-independent block must induce a triangle-free graph")
    if e_cross(g, i_set, h_set) != i_set.size * h_set.size:
        raise ContractError("not a join: some I-H pair is missing its edge")

    alpha = Fraction(i_set.size, n)
    h_sub, _ = induced_subgraph(g, h_set)
    e_h = h_sub.m
    e0 = Fraction(e_h, n * n)
    target = JOIN_TARGET * n * n
    adjmat = adjacency_matrix(g)
    full = (1 << n) - 1

    if alpha > Fraction(62, 100):
        k = 31 * n // 100
        mem = i_set.members()
        if k >= 1 and 2 * k <= len(mem) and k <= n // 2:
            side = 0
            for v in mem[:k]:
                side |= 1 << v
            reserved = 0
            for v in mem[k:2 * k]:
                reserved |= 1 << v
            pool = full & ~side & ~reserved
            need = n // 2 - k
            if pool.bit_count() >= need:
                side = _greedy_fill(g, adjmat, side, pool, need)
                return _finish(g, side, "JOIN_C1", {"alpha_join": alpha}, target,
                               cfg, "two 0.31n slices of I split across the sides")
        return _swap_route(g, "FALLBACK", {"m": Fraction(g.m)}, target, cfg,
                           "JOIN_C1 slice arithmetic infeasible at this n", workers)

    if alpha > Fraction(7, 12):
        q = {"alpha_join": alpha, "e0": e0}
        if Fraction(e_h) <= Fraction(4, 25) * h_set.size ** 2:
            res, app = sparse_partition(g, *PRESET_JOIN, cfg, workers=workers)
            achieved = res.partition.max_side
            return res.partition, CaseTrace(
                "JOIN_C2", q, achieved, target, Fraction(achieved) <= target,
                f"sparse branch; guarantee applicable={app.applicable}")
        return _join_bipartize_route(g, i_set, h_set, "JOIN_C2", q, target, cfg)

    if alpha >= Fraction(1, 2):
        q = {"alpha_join": alpha, "e0": e0}
        if e0 < JOIN_TARGET - (1 - alpha) * (alpha - Fraction(1, 2)):
            side = 0
            for v in i_set.members()[:n // 2]:
                side |= 1 << v
            return _finish(g, side, "JOIN_C3", q, target, cfg,
                           "H parked entirely in A^c")
        return _join_bipartize_route(g, i_set, h_set, "JOIN_C3", q, target, cfg)

    # alpha < 1/2
    q = {"alpha_join": alpha, "e0": e0}
    h_size = h_set.size
    if (Fraction(e_h) <= (Fraction(5, 18) - Fraction(1, 1000)) * n * n
            - h_size * (n - h_size)):
        res, app = sparse_partition(g, *PRESET_JOIN, cfg, workers=workers)
        achieved = res.partition.max_side
        return res.partition, CaseTrace(
            "JOIN_C4", q, achieved, target, Fraction(achieved) <= target,
            f"sparse branch; guarantee applicable={app.applicable}")

    # neighborhood of a max-degree H vertex is independent (H triangle-free)
    best_v = None
    best_d = -1
    for v in h_set:
        d = (g.adj[v] & h_set.mask).bit_count()
        if d > best_d:
            best_v, best_d = v, d
    i0_full = VertexSet(n, g.adj[best_v] & h_set.mask)
    want = Fraction(553, 1000) * n * n / h_size + 2 * h_size - 2 * n
    i0_size = max(0, min(i0_full.size, int(want) if want >= 0 else 0))
    i0 = VertexSet.of(n, i0_full.members()[:i0_size])
    combined = i_set.union(i0)
    half = n // 2
    if combined.size > half:
        side = i_set.mask
        need = half - i_set.size
        for v in i0.members()[:need]:
            side |= 1 << v
        return _finish(g, side, "JOIN_C4", q, target, cfg,
                       "I plus part of the independent H-neighborhood fills A")
    side = _greedy_fill(g, adjmat, combined.mask, full & ~combined.mask,
                        half - combined.size)
    return _finish(g, side, "JOIN_C4", q, target, cfg,
                   "A grown from I plus the independent H-neighborhood")
