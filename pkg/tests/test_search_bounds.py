"""Independence / triangle-free search, heavy edge, edge upper bounds."""
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from balpart import ContractError, NoEdgeError, VertexSet, is_k4_free
from balpart.bounds import edge_upper_bounds
from balpart.families import (complete, cycle, erdos_renyi, i7c5,
                              independent_set, join, random_triangle_free)
from balpart.graphs import Graph, induces_triangle_free, is_independent
from balpart.search import (greedy_maximal_triangle_free, heavy_edge,
                            independence_number, max_triangle_free_induced)
from tests.test_graphs import graphs


def brute_independence(g):
    best = 0
    for mask in range(1 << g.n):
        s = VertexSet(g.n, mask)
        if is_independent(g, s):
            best = max(best, s.size)
    return best


def brute_max_tf(g):
    best = 0
    for mask in range(1 << g.n):
        s = VertexSet(g.n, mask)
        if induces_triangle_free(g, s):
            best = max(best, s.size)
    return best


class TestIndependence:
    def test_cycle5(self):
        assert independence_number(cycle(5)).size == 2

    def test_join12(self):
        res = independence_number(i7c5())
        assert res.size == 7 and res.exact
        assert res.witness.members() == tuple(range(7))

    def test_k4(self):
        assert independence_number(complete(4)).size == 1

    def test_witness_always_independent(self):
        g = erdos_renyi(30, 0.5, 3)
        res = independence_number(g)
        assert is_independent(g, res.witness)

    def test_greedy_mode_flagged(self):
        g = erdos_renyi(30, 0.5, 3)
        res = independence_number(g, exact_cap=10)
        assert not res.exact
        assert is_independent(g, res.witness)
        assert res.size <= independence_number(g).size

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_brute_force(self, seed):
        g = erdos_renyi(11, 0.2 + 0.07 * seed, seed)
        assert independence_number(g).size == brute_independence(g)

    def test_brute_force_n14(self):
        g = erdos_renyi(14, 0.45, 99)
        assert independence_number(g).size == brute_independence(g)


class TestMaxTriangleFree:
    def test_k4(self):
        assert max_triangle_free_induced(complete(4)).size == 2

    def test_cycle5_whole(self):
        assert max_triangle_free_induced(cycle(5)).size == 5

    def test_join12(self):
        res = max_triangle_free_induced(i7c5())
        assert res.size == 9 and res.exact

    def test_greedy_maximal_is_maximal(self):
        g = erdos_renyi(30, 0.5, 5)
        z = greedy_maximal_triangle_free(g)
        assert induces_triangle_free(g, z)
        for v in z.complement():
            grown = VertexSet(g.n, z.mask | 1 << v)
            assert not induces_triangle_free(g, grown)

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_brute_force(self, seed):
        g = erdos_renyi(10, 0.3 + 0.08 * seed, ("tf", seed))
        assert max_triangle_free_induced(g).size == brute_max_tf(g)


class TestHeavyEdge:
    def test_cycle_regular(self):
        he = heavy_edge(cycle(5))
        assert he.degree_sum == 4
        assert 5 * he.degree_sum >= 4 * 5  # 4m/n with m = n

    def test_star(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        he = heavy_edge(g)
        assert he.degree_sum == 4

    def test_join12(self):
        he = heavy_edge(i7c5())
        assert he.degree_sum == 18
        assert (he.v1, he.v2) in {(7, 8), (8, 7)}
        assert he.common.mask == (1 << 7) - 1  # exactly the independent block
        assert he.common.size >= he.degree_sum - 12

    def test_edgeless(self):
        with pytest.raises(NoEdgeError):
            heavy_edge(independent_set(3))

    @given(graphs(12))
    def test_degree_sum_dominates_average(self, g):
        if g.m == 0:
            return
        he = heavy_edge(g)
        assert he.degree_sum * g.n >= 4 * g.m
        assert he.a1 >= he.a2
        for s, t in ((he.n1_only, he.n2_only), (he.n1_only, he.common),
                     (he.n2_only, he.common)):
            assert s.is_disjoint(t)
        if is_k4_free(g):
            assert is_independent(g, he.common)


class TestEdgeUpperBounds:
    def test_cycle5_whole_witness(self):
        g = cycle(5)
        rep = edge_upper_bounds(g, z=g.full_set())
        entry = rep.get("tf-degree-cap")
        assert entry.applicable
        assert entry.value == min(Fraction(25, 2), Fraction(25, 4))
        assert entry.value >= g.m

    def test_large_independent_formula(self):
        # placement n=100, |I|=28 gives (72)(184)/4 = 3312
        g = join(independent_set(28), independent_set(72))
        rep = edge_upper_bounds(g, i=g.vertex_set(range(28)))
        hold = rep.get("large-independent")
        assert not hold.applicable  # 3*28 = 84 < 100: precondition gate
        g2 = join(independent_set(36), independent_set(64))
        rep2 = edge_upper_bounds(g2, i=g2.vertex_set(range(36)))
        entry = rep2.get("large-independent")
        assert entry.applicable and entry.value == Fraction(64 * 208, 4)
        assert Fraction(1, 4) * 72 * 184 == 3312

    def test_single_edge_independent_half(self):
        g = complete(2)
        rep = edge_upper_bounds(g, i=g.vertex_set([0]))
        entry = rep.get("independent-half")
        # |I0| = 1 = n/2 meets the non-strict bound from the statement
        assert entry.applicable and entry.value == 1 >= g.m

    def test_rejects_bad_witnesses(self):
        g = complete(3)
        with pytest.raises(ContractError):
            edge_upper_bounds(g, z=g.full_set())
        with pytest.raises(ContractError):
            edge_upper_bounds(g, i=g.vertex_set([0, 1]))

    def test_applicable_bounds_dominate_edges(self):
        checked = 0
        for seed in range(1000):
            n = 4 + seed % 11
            g = erdos_renyi(n, (0.2, 0.4, 0.6)[seed % 3], ("bounds", seed))
            if not is_k4_free(g):
                continue
            z = max_triangle_free_induced(g).witness
            i = independence_number(g).witness
            rep = edge_upper_bounds(g, z=z, i=i)
            for entry in rep.applicable():
                assert entry.value >= g.m, (seed, entry)
                checked += 1
        assert checked > 400
