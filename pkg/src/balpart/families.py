"""Deterministic graph builders and seeded random generators.

Builders cover the families the partitioning machinery is exercised on:
independent sets, cycles, complete multipartite graphs, joins, blow-ups,
and the 12-vertex join of a 7-vertex independent set with a 5-cycle
(`i7c5`) together with its even blow-ups, whose balanced min-max value
exceeds n^2/16.

Vertex numbering is block-contiguous everywhere: join(g1, g2) puts g1
first; a blow-up lays out the copies of base vertex 0, then base vertex
1, and so on.  Tests rely on this ordering.

Random generators use random.Random (Mersenne Twister), which is fixed
across platforms, so a seed pins the corpus byte-for-byte.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .graphs import ContractError, Graph, find_k4, find_triangle


def independent_set(k: int) -> Graph:
    if k < 0:
        raise ContractError(f"independent_set needs k >= 0, got {k}")
    return Graph(k, (0,) * k)


def cycle(m: int) -> Graph:
    if m < 3:
        raise ContractError(f"cycle needs m >= 3, got {m}")
    return Graph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def path(k: int) -> Graph:
    if k < 1:
        raise ContractError(f"path needs k >= 1, got {k}")
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def complete(k: int) -> Graph:
    return Graph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def complete_multipartite(sizes: list[int]) -> Graph:
    if not sizes or any(s <= 0 for s in sizes):
        raise ContractError(f"complete_multipartite needs positive sizes, got {sizes}")
    n = sum(sizes)
    starts = []
    acc = 0
    for s in sizes:
        starts.append(acc)
        acc += s
    edges = []
    for a in range(len(sizes)):
        for b in range(a + 1, len(sizes)):
            for u in range(starts[a], starts[a] + sizes[a]):
                for v in range(starts[b], starts[b] + sizes[b]):
                    edges.append((u, v))
    return Graph.from_edges(n, edges)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union of g1 and g2 plus all edges between them; g1 block first."""
    n = g1.n + g2.n
    rows = []
    high = ((1 << g2.n) - 1) << g1.n
    low = (1 << g1.n) - 1
    for v in range(g1.n):
        rows.append(g1.adj[v] | high)
    for v in range(g2.n):
        rows.append(g2.adj[v] << g1.n | low)
    return Graph(n, tuple(rows))


@dataclass(frozen=True)
class BlowupGraph:
    """A base graph with per-vertex multiplicities.

    The expanded graph replaces base vertex i by multiplicities[i] twin
    copies; copies of i and j are adjacent iff ij is a base edge (no
    edges inside a class).  Copies are numbered block-contiguously in
    base-vertex order.
    """

    base: Graph
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.multiplicities) != self.base.n:
            raise ContractError("one multiplicity per base vertex required")
        if any(mult < 1 for mult in self.multiplicities):
            raise ContractError(f"multiplicities must be >= 1, got {self.multiplicities}")

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    def block_start(self, i: int) -> int:
        return sum(self.multiplicities[:i])

    def expand(self) -> Graph:
        starts = [self.block_start(i) for i in range(self.base.n)]
        n = self.total
        rows = [0] * n
        for i in range(self.base.n):
            row = 0
            for j in range(self.base.n):
                if self.base.has_edge(i, j):
                    row |= ((1 << self.multiplicities[j]) - 1) << starts[j]
            for c in range(self.multiplicities[i]):
                rows[starts[i] + c] = row
        return Graph(n, tuple(rows))

    def expanded_edge_count(self) -> int:
        return sum(self.multiplicities[u] * self.multiplicities[v]
                   for u, v in self.base.edges())


def blowup(base: Graph, mult: int) -> BlowupGraph:
    if mult < 1:
        raise ContractError(f"blow-up multiplicity must be >= 1, got {mult}")
    return BlowupGraph(base, (mult,) * base.n)


def i7c5() -> Graph:
    """The 12-vertex join of I_7 (vertices 0..6) and C_5 (vertices 7..11)."""
    return join(independent_set(7), cycle(5))


def i7c5_blowup(n: int) -> BlowupGraph:
    """The 2n-blow-up of i7c5(), a 24n-vertex graph with min-max value 37 n^2."""
    if n < 1:
        raise ContractError(f"blow-up parameter must be >= 1, got {n}")
    return blowup(i7c5(), 2 * n)


def _rng(seed) -> random.Random:
    # str seeds hash via SHA-512 in CPython, stable across platforms/runs
    return random.Random(str(seed))


def erdos_renyi(n: int, p: float, seed) -> Graph:
    if not 0 <= p <= 1:
        raise ContractError(f"edge probability must be in [0, 1], got {p}")
    rng = _rng(("er", n, p, seed))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_tripartite(n: int, p: float, seed) -> Graph:
    """Random 3-partite graph, near-equal part sizes, cross pairs kept with prob p."""
    if not 0 <= p <= 1:
        raise ContractError(f"edge probability must be in [0, 1], got {p}")
    rng = _rng(("tri", n, p, seed))
    sizes = [n // 3 + (1 if r < n % 3 else 0) for r in range(3)]
    part = []
    for idx, s in enumerate(sizes):
        part.extend([idx] * s)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if part[u] != part[v] and rng.random() < p]
    return Graph.from_edges(n, edges)


def random_triangle_free(n: int, seed, density: float = 0.5) -> Graph:
    """Seeded triangle-free graph.

    Small n: random pair insertion, rejecting any edge that closes a
    triangle.  Large n: random bipartite-template graph (always
    triangle-free) to keep generation linear in the pair count tried.
    """
    rng = _rng(("k3free", n, seed, density))
    if n <= 400:
        rows = [0] * n
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        keep = int(len(pairs) * density)
        for u, v in pairs[:keep]:
            if not rows[u] & rows[v]:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return Graph(n, tuple(rows))
    split = rng.randrange(n // 3, 2 * n // 3 + 1)
    edges = [(u, v) for u in range(split) for v in range(split, n)
             if rng.random() < density]
    return Graph.from_edges(n, edges)


def random_k4_free(n: int, seed, density: float = 0.5) -> Graph:
    """Seeded K4-free graph.

    Small n: random pair insertion with K4 rejection.  Large n: one of
    three K4-free templates chosen by the seed: random tripartite, a
    blow-up of a small triangle-free graph joined with an independent
    set, or a plain blow-up of a random small K4-free graph.
    """
    rng = _rng(("k4free", n, seed, density))
    if n <= 120:
        rows = [0] * n
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        keep = int(len(pairs) * density)
        for u, v in pairs[:keep]:
            common = rows[u] & rows[v]
            closes = False
            x = common
            while x:
                lsb = x & -x
                w = lsb.bit_length() - 1
                if rows[w] & common & (lsb - 1):
                    closes = True
                    break
                x ^= lsb
            if not closes:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return Graph(n, tuple(rows))
    style = rng.randrange(3)
    if style == 0:
        return random_tripartite(n, density, ("inner", seed))
    if style == 1:
        i_frac = rng.uniform(0.3, 0.65)
        i_size = max(1, int(n * i_frac))
        h = random_triangle_free(n - i_size, ("inner", seed), density)
        return join(independent_set(i_size), h)
    base_n = rng.randrange(6, 13)
    base = random_k4_free(base_n, ("base", seed), density)
    mult, rem = divmod(n, base_n)
    mults = tuple(mult + (1 if i < rem else 0) for i in range(base_n))
    return BlowupGraph(base, mults).expand()


FAMILY_BUILDERS = {
    "independent-set": lambda a: independent_set(a["n"]),
    "cycle": lambda a: cycle(a["n"]),
    "path": lambda a: path(a["n"]),
    "complete": lambda a: complete(a["n"]),
    "complete-multipartite": lambda a: complete_multipartite(a["sizes"]),
    "paper-h": lambda a: i7c5(),
    "paper-h-blowup": lambda a: i7c5_blowup(a["mult"]).expand(),
    "c5-blowup": lambda a: blowup(cycle(5), a["mult"]).expand(),
    "erdos-renyi": lambda a: erdos_renyi(a["n"], a["p"], a["seed"]),
    "random-tripartite": lambda a: random_tripartite(a["n"], a["p"], a["seed"]),
    "random-triangle-free": lambda a: random_triangle_free(a["n"], a["seed"], a["p"]),
    "random-k4-free": lambda a: random_k4_free(a["n"], a["seed"], a["p"]),
}


def build_family(name: str, **params) -> Graph:
    if name not in FAMILY_BUILDERS:
        raise ContractError(f"unknown family {name!r}; choose from {sorted(FAMILY_BUILDERS)}")
    return FAMILY_BUILDERS[name](params)
