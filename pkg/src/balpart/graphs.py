"""Core graph types and edge-counting primitives.

Graphs are simple, undirected, unweighted, on vertices 0..n-1.  The
adjacency structure is one Python int per vertex used as a dense bit
vector (bit u of adj[v] set iff uv is an edge), which makes edge-count
increments during enumeration a single AND + popcount.  Everything here
is an immutable value: graphs and vertex sets can be shared freely
across workers and all operations are pure functions.

Conventions:
  n, m        vertex / edge counts
  e(S)        edges with both endpoints in S
  e(S, T)     edges between disjoint S and T
  Delta/delta max / min degree

Tie-breaking is lexicographic on vertex ids everywhere, so witness
triples, K4s etc. are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional


class ContractError(ValueError):
    """A documented precondition was violated by the caller."""


class ParityError(ContractError):
    """An operation requiring an even vertex count got an odd one."""


class NoEdgeError(ValueError):
    """An operation requiring at least one edge got an edgeless graph."""


def _popcount(x: int) -> int:
    return x.bit_count()


def _bits(x: int) -> Iterator[int]:
    """Yield set bit positions of x in increasing order."""
    while x:
        lsb = x & -x
        yield lsb.bit_length() - 1
        x ^= lsb


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with bit-vector adjacency rows."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ContractError(f"adjacency length {len(self.adj)} != n={self.n}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ContractError(f"adjacency row {v} has bits outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ContractError(f"self-loop at vertex {v}")
        for v, row in enumerate(self.adj):
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ContractError(f"asymmetric adjacency between {u} and {v}")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ContractError(f"self-loop {u}-{v}")
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge {u}-{v} outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    def degree(self, v: int) -> int:
        return _popcount(self.adj[v])

    @property
    def m(self) -> int:
        return sum(_popcount(row) for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges (u, v) with u < v, lexicographic order."""
        for u in range(self.n):
            for v in _bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def neighbors(self, v: int) -> "VertexSet":
        return VertexSet(self.n, self.adj[v])

    def full_set(self) -> "VertexSet":
        return VertexSet(self.n, (1 << self.n) - 1)

    def vertex_set(self, members: Iterable[int]) -> "VertexSet":
        return VertexSet.of(self.n, members)


@dataclass(frozen=True)
class VertexSet:
    """Subset of 0..n-1 of a specific graph order, stored as a bit mask."""

    n: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise ContractError(f"mask has bits outside 0..{self.n - 1}")

    @staticmethod
    def of(n: int, members: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in members:
            if not 0 <= v < n:
                raise ContractError(f"vertex {v} outside 0..{n - 1}")
            mask |= 1 << v
        return VertexSet(n, mask)

    @property
    def size(self) -> int:
        return _popcount(self.mask)

    def members(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    def __iter__(self) -> Iterator[int]:
        return _bits(self.mask)

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ((1 << self.n) - 1) ^ self.mask)

    def union(self, other: "VertexSet") -> "VertexSet":
        self._check_width(other)
        return VertexSet(self.n, self.mask | other.mask)

    def intersection(self, other: "VertexSet") -> "VertexSet":
        self._check_width(other)
        return VertexSet(self.n, self.mask & other.mask)

    def difference(self, other: "VertexSet") -> "VertexSet":
        self._check_width(other)
        return VertexSet(self.n, self.mask & ~other.mask)

    def is_disjoint(self, other: "VertexSet") -> bool:
        self._check_width(other)
        return not self.mask & other.mask

    def _check_width(self, other: "VertexSet") -> None:
        if self.n != other.n:
            raise ContractError(f"vertex sets bound to different orders {self.n} != {other.n}")


def _check_bound(g: Graph, s: VertexSet) -> None:
    if s.n != g.n:
        raise ContractError(f"vertex set of width {s.n} used with graph of order {g.n}")


def e_subset(g: Graph, s: VertexSet) -> int:
    """Number of edges of g with both endpoints in s."""
    _check_bound(g, s)
    return sum(_popcount(g.adj[v] & s.mask) for v in _bits(s.mask)) // 2


def e_cross(g: Graph, s: VertexSet, t: VertexSet) -> int:
    """Number of edges of g with one endpoint in s and the other in t."""
    _check_bound(g, s)
    _check_bound(g, t)
    if s.mask & t.mask:
        raise ContractError("e_cross requires disjoint vertex sets")
    return sum(_popcount(g.adj[v] & t.mask) for v in _bits(s.mask))


def degree_stats(g: Graph) -> tuple[int, int, int]:
    """(max degree, min degree, edge count); (0, 0, 0) for the empty graph."""
    if g.n == 0:
        return (0, 0, 0)
    degs = [_popcount(row) for row in g.adj]
    return (max(degs), min(degs), sum(degs) // 2)


def find_triangle(g: Graph) -> Optional[tuple[int, int, int]]:
    """First triangle (u < v < w) in lexicographic order, or None."""
    adj = g.adj
    for u in range(g.n):
        row_u = adj[u]
        rest = row_u >> (u + 1) << (u + 1)
        while rest:
            lsb = rest & -rest
            rest ^= lsb
            v = lsb.bit_length() - 1
            common = row_u & adj[v] >> (v + 1) << (v + 1)
            if common:
                w = (common & -common).bit_length() - 1
                return (u, v, w)
    return None


def find_k4(g: Graph) -> Optional[tuple[int, int, int, int]]:
    """First K4 (u < v < w < x) in lexicographic order, or None."""
    adj = g.adj
    for u in range(g.n):
        row_u = adj[u]
        rest = row_u >> (u + 1) << (u + 1)
        while rest:
            lsb = rest & -rest
            rest ^= lsb
            v = lsb.bit_length() - 1
            common = row_u & adj[v] >> (v + 1) << (v + 1)
            scan = common
            while scan:
                lsb2 = scan & -scan
                scan ^= lsb2
                w = lsb2.bit_length() - 1
                deeper = common & adj[w] & -(lsb2 << 1)
                if deeper:
                    x = (deeper & -deeper).bit_length() - 1
                    return (u, v, w, x)
    return None


def is_triangle_free(g: Graph) -> bool:
    return find_triangle(g) is None


def is_k4_free(g: Graph) -> bool:
    """Witness-free K4 test; one word-AND per (edge, common-neighbor) pair,
    which is what makes dense instances tolerable (cost ~ triangle count)."""
    adj = g.adj
    for u in range(g.n):
        row_u = adj[u]
        rest = row_u >> (u + 1) << (u + 1)
        while rest:
            lsb = rest & -rest
            rest ^= lsb
            v = lsb.bit_length() - 1
            scan = row_u & adj[v] >> (v + 1) << (v + 1)
            acc = 0
            while scan:
                lsb2 = scan & -scan
                scan ^= lsb2
                if adj[lsb2.bit_length() - 1] & acc:
                    return False
                acc |= lsb2
    return True


def is_independent(g: Graph, s: VertexSet) -> bool:
    _check_bound(g, s)
    return all(not g.adj[v] & s.mask for v in _bits(s.mask))


def induces_triangle_free(g: Graph, s: VertexSet) -> bool:
    """Does s induce a triangle-free subgraph of g?"""
    _check_bound(g, s)
    for v in _bits(s.mask):
        inside = g.adj[v] & s.mask
        for u in _bits(inside):
            if u >= v:
                break
            if g.adj[u] & inside & ((1 << u) - 1):
                return False
    return True


def induced_subgraph(g: Graph, s: VertexSet) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on s plus the new-id -> old-id vertex map (ascending)."""
    _check_bound(g, s)
    old = s.members()
    index = {v: i for i, v in enumerate(old)}
    rows = [0] * len(old)
    for i, v in enumerate(old):
        for u in _bits(g.adj[v] & s.mask):
            rows[i] |= 1 << index[u]
    return Graph(len(old), tuple(rows)), old


@dataclass(frozen=True)
class Bipartition:
    """A 2-partition of V(G) given by side A, with cached inside-edge counts."""

    side_a: VertexSet
    e_a: int
    e_ac: int

    @staticmethod
    def from_side(g: Graph, side_a: VertexSet) -> "Bipartition":
        _check_bound(g, side_a)
        return Bipartition(side_a, e_subset(g, side_a), e_subset(g, side_a.complement()))

    @property
    def max_side(self) -> int:
        return max(self.e_a, self.e_ac)

    @property
    def total(self) -> int:
        return self.e_a + self.e_ac

    def verify(self, g: Graph) -> bool:
        """Recompute both cached counts from scratch."""
        return (self.e_a == e_subset(g, self.side_a)
                and self.e_ac == e_subset(g, self.side_a.complement()))


@dataclass(frozen=True)
class BalancedPartition(Bipartition):
    """A 2-partition with |A| = |A^c| = n/2 (n even)."""

    def __post_init__(self):
        if self.side_a.n % 2:
            raise ParityError(f"balanced partition needs even order, got {self.side_a.n}")
        if self.side_a.size != self.side_a.n // 2:
            raise ContractError(
                f"side A has {self.side_a.size} vertices, expected {self.side_a.n // 2}")

    @staticmethod
    def from_side(g: Graph, side_a: VertexSet) -> "BalancedPartition":
        _check_bound(g, side_a)
        return BalancedPartition(side_a, e_subset(g, side_a),
                                 e_subset(g, side_a.complement()))
