"""Exact 2-partition solvers by enumeration and branch-and-bound.

Objectives (A ranges over one side of a 2-partition):
  minmax   min over balanced partitions of max{e(A), e(A^c)}
  minsum   min over balanced partitions of e(A) + e(A^c)
  d2       min over all 2-partitions of e(A) + e(A^c); equals the number
           of edges whose removal makes the graph bipartite

The search assigns vertices 0..n-1 to side A or side B in order, with
vertex 0 pinned to A (complement symmetry), tracking both sides' inside
edge counts incrementally via one AND + popcount per step.  Pruning uses
the monotone objective value of the partial assignment.  Since the
A-branch is explored first, the first optimum found is the witness whose
sorted vertex list is lexicographically smallest, and ties never replace
it; that makes results deterministic and worker-count independent.

A worker count splits the assignment tree by first-k-vertex prefixes
into contiguous chunks; each worker searches its chunks with a private
incumbent and the reduce takes the (value, witness) minimum, so the
result is identical for any worker count or schedule.  Workers are
threads: the kernels are pure Python, so this is about a deterministic
splitting contract, not wall-clock speedup.  nodes_explored is a
per-schedule diagnostic and does vary with the worker count.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

from .graphs import (BalancedPartition, Bipartition, Graph, ParityError,
                     VertexSet, e_subset)

ENUMERATE_CAP = 28
BRANCH_AND_BOUND_CAP = 36
D2_CAP = 30


class SizeCapError(ValueError):
    """Instance exceeds the exact-solver cap; use heuristics or, for
    blow-ups, the count-vector solver."""


@dataclass(frozen=True)
class ExactResult:
    objective: str
    value: int
    witness: Union[BalancedPartition, Bipartition]
    nodes_explored: int
    proven_optimal: bool


def _chunk_slices(count: int, workers: int) -> list[tuple[int, int]]:
    """Split range(count) into <= workers contiguous near-equal slices."""
    workers = max(1, min(workers, count)) if count else 1
    base, extra = divmod(count, workers)
    slices = []
    start = 0
    for w in range(workers):
        size = base + (1 if w < extra else 0)
        if size:
            slices.append((start, start + size))
        start += size
    return slices or [(0, 0)]


def _prefixes(adj: tuple[int, ...], depth: int, half: Optional[int]) -> list[tuple]:
    """All feasible assignments of vertices 0..depth-1 (vertex 0 on side A),
    in DFS order.  Entries are (mask_a, mask_b, e_a, e_b)."""
    out: list[tuple] = []

    def rec(v: int, mask_a: int, mask_b: int, e_a: int, e_b: int) -> None:
        if v == depth:
            out.append((mask_a, mask_b, e_a, e_b))
            return
        bit = 1 << v
        if half is None or mask_a.bit_count() < half:
            rec(v + 1, mask_a | bit, mask_b, e_a + (adj[v] & mask_a).bit_count(), e_b)
        if v and (half is None or mask_b.bit_count() < half):
            rec(v + 1, mask_a, mask_b | bit, e_a, e_b + (adj[v] & mask_b).bit_count())

    rec(0, 0, 0, 0, 0)
    return out


def _search_balanced(g: Graph, objective: str,
                     prefixes: list[tuple], depth: int) -> tuple[int, int, int]:
    """Branch-and-bound over balanced completions of the given prefixes.

    Returns (best value, best side-A mask, nodes).  Incumbent starts
    fresh so results compose across any prefix chunking.
    """
    n, half = g.n, g.n // 2
    adj = g.adj
    use_max = objective == "minmax"
    best_val = None
    best_mask = 0
    nodes = 0

    def complete_onto(mask: int, e: int, v: int) -> tuple[int, int]:
        # one side is full; vertices v..n-1 are forced onto the other side
        for u in range(v, n):
            e += (adj[u] & mask).bit_count()
            mask |= 1 << u
        return mask, e

    def rec(v: int, mask_a: int, mask_b: int, e_a: int, e_b: int) -> None:
        nonlocal best_val, best_mask, nodes
        nodes += 1
        bound = max(e_a, e_b) if use_max else e_a + e_b
        if best_val is not None and bound >= best_val:
            return
        if v == n:
            if best_val is None or bound < best_val:
                best_val, best_mask = bound, mask_a
            return
        if mask_a.bit_count() == half:
            _, e_b = complete_onto(mask_b, e_b, v)
            val = max(e_a, e_b) if use_max else e_a + e_b
            if best_val is None or val < best_val:
                best_val, best_mask = val, mask_a
            return
        if mask_b.bit_count() == half:
            mask_a, e_a = complete_onto(mask_a, e_a, v)
            val = max(e_a, e_b) if use_max else e_a + e_b
            if best_val is None or val < best_val:
                best_val, best_mask = val, mask_a
            return
        bit = 1 << v
        rec(v + 1, mask_a | bit, mask_b, e_a + (adj[v] & mask_a).bit_count(), e_b)
        rec(v + 1, mask_a, mask_b | bit, e_a, e_b + (adj[v] & mask_b).bit_count())

    for mask_a, mask_b, e_a, e_b in prefixes:
        rec(depth, mask_a, mask_b, e_a, e_b)
    assert best_val is not None
    return best_val, best_mask, nodes


def _run_chunked(g: Graph, objective: str, workers: int,
                 half_constrained: bool) -> tuple[int, int, int]:
    n = g.n
    half = n // 2 if half_constrained else None
    if workers <= 1:
        prefixes = [(0, 0, 0, 0)]
        depth = 0
        chunks = [(0, 1)]
    else:
        depth = 1
        while depth < n and 1 << (depth - 1) < 4 * workers:
            depth += 1
        prefixes = _prefixes(g.adj, depth, half)
        chunks = _chunk_slices(len(prefixes), workers)
    search = _search_balanced if half_constrained else _search_free
    if len(chunks) == 1:
        return search(g, objective, prefixes, depth)
    results = []
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        futs = [pool.submit(search, g, objective, prefixes[a:b], depth)
                for a, b in chunks]
        results = [f.result() for f in futs]
    best_val, best_mask, _ = min(
        results, key=lambda r: (r[0], tuple(VertexSet(n, r[1]).members())))
    return best_val, best_mask, sum(r[2] for r in results)


def _search_free(g: Graph, objective: str,
                 prefixes: list[tuple], depth: int) -> tuple[int, int, int]:
    """Branch-and-bound over all (unbalanced) 2-partitions, sum objective."""
    n = g.n
    adj = g.adj
    best_val = None
    best_mask = 0
    nodes = 0

    def rec(v: int, mask_a: int, mask_b: int, e_a: int, e_b: int) -> None:
        nonlocal best_val, best_mask, nodes
        nodes += 1
        if best_val is not None and e_a + e_b >= best_val:
            return
        if v == n:
            best_val, best_mask = e_a + e_b, mask_a
            return
        bit = 1 << v
        rec(v + 1, mask_a | bit, mask_b, e_a + (adj[v] & mask_a).bit_count(), e_b)
        if v:
            rec(v + 1, mask_a, mask_b | bit, e_a, e_b + (adj[v] & mask_b).bit_count())

    for mask_a, mask_b, e_a, e_b in prefixes:
        rec(depth, mask_a, mask_b, e_a, e_b)
    assert best_val is not None
    return best_val, best_mask, nodes


def _check_balanced_pre(g: Graph, cap: int) -> None:
    if g.n % 2:
        raise ParityError(f"balanced objectives need even n, got {g.n}")
    if g.n > cap:
        raise SizeCapError(
            f"n={g.n} exceeds cap {cap}; use partition heuristics, or the "
            f"count-vector solver for blow-ups")


def _enumerate_balanced(g: Graph, objective: str) -> tuple[int, int, int]:
    """Plain enumeration oracle: every balanced side A containing vertex 0,
    edge counts recomputed from scratch per subset."""
    n, half = g.n, g.n // 2
    if n == 0:
        return 0, 0, 1
    best_val = None
    best_mask = 0
    nodes = 0
    full = (1 << n) - 1
    for rest in itertools.combinations(range(1, n), half - 1):
        mask = 1
        for v in rest:
            mask |= 1 << v
        e_a = e_subset(g, VertexSet(n, mask))
        e_b = e_subset(g, VertexSet(n, full ^ mask))
        val = max(e_a, e_b) if objective == "minmax" else e_a + e_b
        nodes += 1
        if best_val is None or val < best_val:
            best_val, best_mask = val, mask
    return best_val, best_mask, nodes


def _balanced_result(g: Graph, objective: str, value: int, mask: int,
                     nodes: int) -> ExactResult:
    witness = BalancedPartition.from_side(g, VertexSet(g.n, mask))
    assert (witness.max_side if objective == "minmax" else witness.total) == value
    return ExactResult(objective, value, witness, nodes, proven_optimal=True)


def exact_min_max_balanced(g: Graph, cap: Optional[int] = None,
                           method: str = "bnb", workers: int = 1) -> ExactResult:
    """Minimum over balanced partitions of max{e(A), e(A^c)}."""
    cap = cap if cap is not None else (BRANCH_AND_BOUND_CAP if method == "bnb"
                                       else ENUMERATE_CAP)
    _check_balanced_pre(g, cap)
    if g.n == 0:
        return ExactResult("minmax", 0, BalancedPartition(VertexSet(0, 0), 0, 0), 1, True)
    if method == "enumerate":
        val, mask, nodes = _enumerate_balanced(g, "minmax")
    else:
        val, mask, nodes = _run_chunked(g, "minmax", workers, half_constrained=True)
    return _balanced_result(g, "minmax", val, mask, nodes)


def exact_min_sum_balanced(g: Graph, cap: Optional[int] = None,
                           method: str = "bnb", workers: int = 1) -> ExactResult:
    """Minimum over balanced partitions of e(A) + e(A^c)."""
    cap = cap if cap is not None else (BRANCH_AND_BOUND_CAP if method == "bnb"
                                       else ENUMERATE_CAP)
    _check_balanced_pre(g, cap)
    if g.n == 0:
        return ExactResult("minsum", 0, BalancedPartition(VertexSet(0, 0), 0, 0), 1, True)
    if method == "enumerate":
        val, mask, nodes = _enumerate_balanced(g, "minsum")
    else:
        val, mask, nodes = _run_chunked(g, "minsum", workers, half_constrained=True)
    return _balanced_result(g, "minsum", val, mask, nodes)


def exact_d2(g: Graph, cap: int = D2_CAP, workers: int = 1) -> ExactResult:
    """Minimum over all 2-partitions of e(A) + e(A^c) (bipartization number)."""
    if g.n > cap:
        raise SizeCapError(f"n={g.n} exceeds cap {cap}; use bipartize_local_search")
    if g.n == 0:
        return ExactResult("d2", 0, Bipartition(VertexSet(0, 0), 0, 0), 1, True)
    val, mask, nodes = _run_chunked(g, "d2", workers, half_constrained=False)
    witness = Bipartition.from_side(g, VertexSet(g.n, mask))
    assert witness.total == val
    return ExactResult("d2", val, witness, nodes, proven_optimal=True)
