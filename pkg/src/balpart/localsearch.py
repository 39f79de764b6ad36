"""Swap local search for balanced partitions and max-cut style bipartization.

The balanced search walks the space of balanced partitions by (u, v)
pair swaps across the two sides (the only neighborhood that preserves
balance), improving a lexicographic objective: (max side, sum) for the
min-max objective, (sum, max side) for the min-sum one.  Each applied
swap strictly improves the key, so the walk terminates; termination is
certified by one full O(|A||B|) vectorized scan finding no improving
pair, with cheap score-based shortlists doing the work in between.

Bipartization is plain max-cut local search: single-vertex moves first
(balance is not required there), then improving pair swaps.

Everything is integer arithmetic on numpy arrays; given the same config
the walk is fully deterministic, and restart reduction is by
(value, witness) so results do not depend on scheduling or worker
count.  The per-restart RNG is random.Random seeded with a string,
which CPython hashes via SHA-512, stable across platforms.
"""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import exact
from .graphs import (BalancedPartition, Bipartition, Graph, ParityError,
                     VertexSet, degree_stats, is_triangle_free)

SHORTLIST = 24


@dataclass(frozen=True)
class HeuristicConfig:
    seed: int = 0
    restarts: int = 3
    max_swaps: int = 200_000
    exact_fallback_cap: int = 12

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")


DEFAULT_CONFIG = HeuristicConfig()


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Dense 0/1 adjacency as uint8, rows little-endian-unpacked bit rows."""
    if g.n == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    nbytes = (g.n + 7) // 8
    buf = b"".join(row.to_bytes(nbytes, "little") for row in g.adj)
    arr = np.frombuffer(buf, dtype=np.uint8).reshape(g.n, nbytes)
    return np.unpackbits(arr, axis=1, bitorder="little")[:, :g.n]


def _mask_to_bool(mask: int, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=bool)
    for v in range(n):
        if mask >> v & 1:
            out[v] = True
    return out


def _bool_to_mask(arr: np.ndarray) -> int:
    mask = 0
    for v in np.flatnonzero(arr):
        mask |= 1 << int(v)
    return mask


class _BalancedWalk:
    """Mutable swap-walk state over one graph; integer numpy throughout."""

    SCAN_CHUNK = 96

    def __init__(self, g: Graph, adjmat: np.ndarray, side_mask: int, objective: str):
        self.n = g.n
        self.adj = adjmat
        self.objective = objective
        self.in_a = _mask_to_bool(side_mask, g.n)
        ind = self.in_a.astype(np.int32)
        self.d_a = adjmat @ ind                 # uint8 @ int32 promotes to int32
        self.d_b = adjmat @ (1 - ind)
        self.e_a = int(self.d_a[self.in_a].sum()) // 2
        self.e_b = int(self.d_b[~self.in_a].sum()) // 2

    def key(self):
        if self.objective == "max":
            return (max(self.e_a, self.e_b), self.e_a + self.e_b)
        return (self.e_a + self.e_b, max(self.e_a, self.e_b))

    def _pick(self, us: np.ndarray, vs: np.ndarray):
        """Best improving swap within us x vs, ties by (key, u, v); or None."""
        if len(us) == 0 or len(vs) == 0:
            return None
        sub = self.adj[np.ix_(us, vs)].astype(np.int32)
        ea = self.e_a - self.d_a[us, None] + self.d_a[None, vs] - sub
        eb = self.e_b + self.d_b[us, None] - self.d_b[None, vs] - sub
        mx = np.maximum(ea, eb)
        sm = ea + eb
        p, s = (mx, sm) if self.objective == "max" else (sm, mx)
        p_min = int(p.min())
        cur = self.key()
        if p_min > cur[0]:
            return None
        sel = p == p_min
        s_min = int(s[sel].min())
        if (p_min, s_min) >= cur:
            return None
        sel &= s == s_min
        flat = int(np.flatnonzero(sel.ravel())[0])
        iu, iv = divmod(flat, len(vs))
        return int(us[iu]), int(vs[iv]), int(ea[iu, iv]), int(eb[iu, iv])

    def _scan(self):
        """First-improvement scan: u rows in ascending chunks, all v columns.
        Returns the best swap of the first chunk containing an improvement,
        so the walk's move sequence is deterministic; None means locally
        optimal."""
        idx_a = np.flatnonzero(self.in_a)
        idx_b = np.flatnonzero(~self.in_a)
        for lo in range(0, len(idx_a), self.SCAN_CHUNK):
            found = self._pick(idx_a[lo:lo + self.SCAN_CHUNK], idx_b)
            if found is not None:
                return found
        return None

    def _shortlist(self):
        idx_a = np.flatnonzero(self.in_a)
        idx_b = np.flatnonzero(~self.in_a)
        if self.objective == "max" and self.e_b > self.e_a:
            score_u = self.d_b[idx_a] - self.d_a[idx_a]
            score_v = self.d_b[idx_b]
            us = idx_a[np.argsort(-score_u, kind="stable")[:SHORTLIST]]
            vs = idx_b[np.argsort(-score_v, kind="stable")[:SHORTLIST]]
        else:
            score_u = self.d_a[idx_a] - self.d_b[idx_a]
            score_v = self.d_a[idx_b]
            us = idx_a[np.argsort(-score_u, kind="stable")[:SHORTLIST]]
            vs = idx_b[np.argsort(score_v, kind="stable")[:SHORTLIST]]
        return np.sort(us), np.sort(vs)

    def _apply(self, u: int, v: int, e_a: int, e_b: int) -> None:
        col_u = self.adj[:, u].astype(np.int32)
        col_v = self.adj[:, v].astype(np.int32)
        self.d_a += col_v - col_u
        self.d_b += col_u - col_v
        self.in_a[u] = False
        self.in_a[v] = True
        self.e_a, self.e_b = e_a, e_b

    def run(self, max_swaps: int) -> tuple[int, bool]:
        """Swap until locally optimal or the budget runs out.
        Returns (swaps applied, converged)."""
        swaps = 0
        while swaps < max_swaps:
            found = self._pick(*self._shortlist())
            if found is None:
                found = self._scan()
                if found is None:
                    return swaps, True
            self._apply(*found)
            swaps += 1
        return swaps, self._scan() is None

    def side_mask(self) -> int:
        return _bool_to_mask(self.in_a)


def _greedy_balanced_mask(g: Graph, adjmat: np.ndarray, order: list[int]) -> int:
    """Place vertices in the given order on the side with the smaller
    internal-edge increase, respecting the n/2 capacities."""
    n = g.n
    half = n // 2
    in_a = np.zeros(n, dtype=bool)
    in_b = np.zeros(n, dtype=bool)
    cnt_a = cnt_b = 0
    for v in order:
        row = adjmat[v]
        da = int(row[in_a].sum())
        db = int(row[in_b].sum())
        to_a = (da, cnt_a) <= (db, cnt_b) if cnt_a < half else False
        if cnt_b >= half:
            to_a = True
        if to_a:
            in_a[v] = True
            cnt_a += 1
        else:
            in_b[v] = True
            cnt_b += 1
    return _bool_to_mask(in_a)


def _start_order(g: Graph, seed: int, restart: int) -> list[int]:
    if restart == 0:
        return sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    rng = random.Random(f"swap-start:{seed}:{restart}")
    order = list(range(g.n))
    rng.shuffle(order)
    return order


@dataclass(frozen=True)
class LocalSearchResult:
    partition: BalancedPartition
    objective: str
    xu_bound: Fraction
    xu_compliant: bool
    restarts_used: int
    swaps: int
    converged: bool
    exact_fallback: bool


def xu_degree_bound(g: Graph) -> Fraction:
    """(m + max degree - min degree) / 4, the guaranteed min-max target."""
    dmax, dmin, m = degree_stats(g)
    return Fraction(m + dmax - dmin, 4)


def _objective_key(objective: str, p: BalancedPartition):
    if objective == "max":
        return (p.max_side, p.total)
    return (p.total, p.max_side)


def _one_restart(g: Graph, adjmat: np.ndarray, objective: str,
                 cfg: HeuristicConfig, restart: int) -> tuple[int, int, bool]:
    order = _start_order(g, cfg.seed, restart)
    mask = _greedy_balanced_mask(g, adjmat, order)
    walk = _BalancedWalk(g, adjmat, mask, objective)
    swaps, converged = walk.run(cfg.max_swaps)
    return walk.side_mask(), swaps, converged


def swap_local_search(g: Graph, objective: str = "max",
                      cfg: HeuristicConfig = DEFAULT_CONFIG,
                      workers: int = 1) -> LocalSearchResult:
    """Best swap-locally-optimal balanced partition over seeded restarts.

    Reports compliance against the (m + Delta - delta)/4 degree bound.
    For n at or below cfg.exact_fallback_cap the exact solver is used
    instead (its optimum is locally optimal in every neighborhood).
    """
    if g.n % 2:
        raise ParityError(f"balanced search needs even n, got {g.n}")
    bound = xu_degree_bound(g)
    if g.n <= cfg.exact_fallback_cap:
        res = (exact.exact_min_max_balanced(g) if objective == "max"
               else exact.exact_min_sum_balanced(g))
        part = res.witness
        return LocalSearchResult(part, objective, bound, part.max_side <= bound,
                                 restarts_used=0, swaps=0, converged=True,
                                 exact_fallback=True)
    adjmat = adjacency_matrix(g)
    runs = []
    if workers > 1 and cfg.restarts > 1:
        with ThreadPoolExecutor(max_workers=min(workers, cfg.restarts)) as pool:
            futs = [pool.submit(_one_restart, g, adjmat, objective, cfg, r)
                    for r in range(cfg.restarts)]
            runs = [f.result() for f in futs]
    else:
        runs = [_one_restart(g, adjmat, objective, cfg, r)
                for r in range(cfg.restarts)]
    parts = [(BalancedPartition.from_side(g, VertexSet(g.n, mask)), swaps, conv)
             for mask, swaps, conv in runs]
    best, swaps, converged = min(
        parts, key=lambda t: (_objective_key(objective, t[0]), t[0].side_a.members()))
    total_swaps = sum(s for _, s, _ in parts)
    return LocalSearchResult(best, objective, bound, best.max_side <= bound,
                             restarts_used=cfg.restarts, swaps=total_swaps,
                             converged=all(c for _, _, c in parts),
                             exact_fallback=False)


def polish_partition(g: Graph, partition: BalancedPartition,
                     objective: str = "max",
                     cfg: HeuristicConfig = DEFAULT_CONFIG) -> BalancedPartition:
    """Improving-swaps-only walk from the given partition; never worsens it."""
    adjmat = adjacency_matrix(g)
    walk = _BalancedWalk(g, adjmat, partition.side_a.mask, objective)
    walk.run(cfg.max_swaps)
    out = BalancedPartition.from_side(g, VertexSet(g.n, walk.side_mask()))
    assert _objective_key(objective, out) <= _objective_key(objective, partition)
    return out


@dataclass(frozen=True)
class BipartizeResult:
    partition: Bipartition
    deleted: int
    cut: int
    triangle_free: bool
    tf_bound: Optional[Fraction]          # m - 4 m^2 / n^2 when triangle-free
    tf_compliant: Optional[bool]
    dense_bound: Optional[Fraction]       # n^2 / 25 when m >= 0.3197 C(n,2)
    dense_compliant: Optional[bool]
    exact_fallback: bool


def _maxcut_walk(adjmat: np.ndarray, n: int, in_a: np.ndarray,
                 max_steps: int) -> np.ndarray:
    """Single-vertex moves then pair swaps, maximizing the cut."""
    ind = in_a.astype(np.int32)
    d_a = (adjmat @ ind).astype(np.int64)
    d_b = (adjmat @ (1 - ind)).astype(np.int64)
    steps = 0
    while steps < max_steps:
        # move gains: for u in A it's d_a[u] - d_b[u]; symmetric for B
        gain = np.where(in_a, d_a - d_b, d_b - d_a)
        u = int(np.argmax(gain))
        if gain[u] > 0:
            col = adjmat[:, u].astype(np.int64)
            if in_a[u]:
                d_a -= col
                d_b += col
                in_a[u] = False
            else:
                d_a += col
                d_b -= col
                in_a[u] = True
            steps += 1
            continue
        idx_a = np.flatnonzero(in_a)
        idx_b = np.flatnonzero(~in_a)
        if len(idx_a) == 0 or len(idx_b) == 0:
            break
        sub = adjmat[np.ix_(idx_a, idx_b)].astype(np.int64)
        sw = ((d_a - d_b)[idx_a][:, None] + (d_b - d_a)[None, idx_b] + 2 * sub)
        best = int(sw.max())
        if best <= 0:
            break
        flat = int(np.flatnonzero((sw == best).ravel())[0])
        iu, iv = divmod(flat, len(idx_b))
        u, v = int(idx_a[iu]), int(idx_b[iv])
        col_u = adjmat[:, u].astype(np.int64)
        col_v = adjmat[:, v].astype(np.int64)
        d_a += col_v - col_u
        d_b += col_u - col_v
        in_a[u] = False
        in_a[v] = True
        steps += 1
    return in_a


def bipartize_local_search(g: Graph,
                           cfg: HeuristicConfig = DEFAULT_CONFIG,
                           workers: int = 1) -> BipartizeResult:
    """Max-cut local search; deleted = e(A) + e(A^c) is what bipartization
    must remove.  Reports the triangle-free deletion target
    m - 4m^2/n^2 and, for dense graphs, the n^2/25 target (informational)."""
    n = g.n
    dmax, dmin, m = degree_stats(g)
    exact_fb = n <= cfg.exact_fallback_cap
    if exact_fb:
        res = exact.exact_d2(g)
        part = res.witness
    else:
        adjmat = adjacency_matrix(g)
        cands = []
        for r in range(cfg.restarts):
            if r == 0:
                in_a = np.zeros(n, dtype=bool)
                in_a[: (n + 1) // 2] = True
            else:
                rng = random.Random(f"bipartize-start:{cfg.seed}:{r}")
                in_a = np.array([rng.random() < 0.5 for _ in range(n)], dtype=bool)
            in_a = _maxcut_walk(adjmat, n, in_a, cfg.max_swaps)
            mask = _bool_to_mask(in_a)
            cand = Bipartition.from_side(g, VertexSet(n, mask))
            cands.append(cand)
        part = min(cands, key=lambda p: (p.total, p.side_a.members()))
    deleted = part.total
    cut = m - deleted
    tf = is_triangle_free(g)
    tf_bound = Fraction(m) - Fraction(4 * m * m, n * n) if tf and n else None
    dense = n >= 2 and Fraction(m) >= Fraction(3197, 10000) * Fraction(n * (n - 1), 2)
    dense_bound = Fraction(n * n, 25) if dense else None
    return BipartizeResult(
        partition=part,
        deleted=deleted,
        cut=cut,
        triangle_free=tf,
        tf_bound=tf_bound,
        tf_compliant=(Fraction(deleted) <= tf_bound) if tf_bound is not None else None,
        dense_bound=dense_bound,
        dense_compliant=(Fraction(deleted) <= dense_bound) if dense_bound is not None else None,
        exact_fallback=exact_fb,
    )
