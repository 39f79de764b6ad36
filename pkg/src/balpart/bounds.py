"""Edge upper bounds from triangle-free / independent witnesses.

Each bound takes a witness set (a triangle-free inducing set z and/or an
independent set i) and returns an exact-rational upper bound on e(G),
together with an applicability flag for its precondition.  All values
are Fractions; no floating point enters any comparison.

Bounds implemented (G of order n, K4-free unless noted):
  tf-degree-cap      e <= min(|Z| n / 2, |Z| (n - 3|Z|/4)), Z maximal
                     triangle-free inducing set of G
  tf-size            e <= |Z0| (n - 3|Z0|/4) for any triangle-free
                     inducing Z0 with |Z0| >= 2n/3
  independent-half   e <= |I0| (n - |I0|) for triangle-free G with an
                     independent I0, |I0| >= n/2
  tf-minus-i         e <= min(|Z| (n + |I|) / 2, |Z| (n - 3|Z|/4)) for
                     independent I and Z a largest triangle-free
                     inducing set of G - I
  large-independent  e <= (n - |I|)(n + 3|I|) / 4 for independent I
                     with |I| > n/3
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graphs import (ContractError, Graph, VertexSet, _bits,
                     induces_triangle_free, is_independent, is_k4_free,
                     is_triangle_free)
from .search import _set_has_edge


@dataclass(frozen=True)
class BoundEntry:
    bound_id: str
    applicable: bool
    value: Optional[Fraction]
    note: str


@dataclass(frozen=True)
class BoundReport:
    m: int
    entries: tuple[BoundEntry, ...]

    def applicable(self) -> tuple[BoundEntry, ...]:
        return tuple(e for e in self.entries if e.applicable)

    def get(self, bound_id: str) -> BoundEntry:
        for e in self.entries:
            if e.bound_id == bound_id:
                return e
        raise KeyError(bound_id)


def _is_maximal_tf(g: Graph, z_mask: int, pool_mask: int) -> bool:
    """No vertex of pool - z can be added to z without creating a triangle."""
    for v in _bits(pool_mask & ~z_mask):
        if not _set_has_edge(g.adj, g.adj[v] & z_mask):
            return False
    return True


def edge_upper_bounds(g: Graph,
                      z: Optional[VertexSet] = None,
                      i: Optional[VertexSet] = None) -> BoundReport:
    """Evaluate every edge bound the supplied witnesses allow.

    z must induce a triangle-free subgraph and i must be independent
    (contract violations otherwise); per-bound preconditions beyond that
    are checked and reported via the `applicable` flag.
    """
    n = g.n
    m = g.m
    if z is not None and not induces_triangle_free(g, z):
        raise ContractError("z does not induce a triangle-free subgraph")
    if i is not None and not is_independent(g, i):
        raise ContractError("i is not an independent set")
    k4_free = is_k4_free(g)
    k3_free = is_triangle_free(g)
    full = (1 << n) - 1
    entries = []

    if z is not None:
        zs = z.size
        val = min(Fraction(zs * n, 2), Fraction(zs) * (Fraction(n) - Fraction(3 * zs, 4)))
        ok = k4_free and _is_maximal_tf(g, z.mask, full)
        entries.append(BoundEntry(
            "tf-degree-cap", ok, val if ok else None,
            "needs K4-free g and maximal triangle-free z"))

        ok = k4_free and 3 * zs >= 2 * n
        val = Fraction(zs) * (Fraction(n) - Fraction(3 * zs, 4))
        entries.append(BoundEntry(
            "tf-size", ok, val if ok else None,
            "needs K4-free g and |z| >= 2n/3"))
    else:
        entries.append(BoundEntry("tf-degree-cap", False, None, "no z supplied"))
        entries.append(BoundEntry("tf-size", False, None, "no z supplied"))

    if i is not None:
        isz = i.size
        ok = k3_free and 2 * isz >= n
        val = Fraction(isz * (n - isz))
        entries.append(BoundEntry(
            "independent-half", ok, val if ok else None,
            "needs triangle-free g and |i| >= n/2"))

        ok = k4_free and 3 * isz > n
        val = Fraction((n - isz) * (n + 3 * isz), 4)
        entries.append(BoundEntry(
            "large-independent", ok, val if ok else None,
            "needs K4-free g and |i| > n/3"))
    else:
        entries.append(BoundEntry("independent-half", False, None, "no i supplied"))
        entries.append(BoundEntry("large-independent", False, None, "no i supplied"))

    if z is not None and i is not None:
        ok = (k4_free and z.is_disjoint(i)
              and _is_maximal_tf(g, z.mask, full & ~i.mask))
        zs = z.size
        isz = i.size
        val = min(Fraction(zs * (n + isz), 2),
                  Fraction(zs) * (Fraction(n) - Fraction(3 * zs, 4)))
        entries.append(BoundEntry(
            "tf-minus-i", ok, val if ok else None,
            "needs K4-free g, z disjoint from i, z a largest triangle-free "
            "inducing set of g - i (non-extendability checked)"))
    else:
        entries.append(BoundEntry("tf-minus-i", False, None, "needs both z and i"))

    return BoundReport(m=m, entries=tuple(entries))
