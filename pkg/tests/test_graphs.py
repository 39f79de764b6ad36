"""Graph core: edge counting, predicates, partitions."""
import pytest
from hypothesis import given, strategies as st

from balpart import (BalancedPartition, Bipartition, ContractError, Graph,
                     ParityError, VertexSet, degree_stats, e_cross, e_subset,
                     find_k4, find_triangle, induced_subgraph, is_k4_free,
                     is_triangle_free)
from balpart.families import (complete, cycle, erdos_renyi, i7c5,
                              independent_set, join, path)
from balpart.graphs import induces_triangle_free, is_independent


def graphs(max_n=12):
    """Random simple graphs as a hypothesis strategy."""
    @st.composite
    def build(draw):
        n = draw(st.integers(0, max_n))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        return Graph.from_edges(n, edges)
    return build()


class TestGraphConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(ContractError):
            Graph.from_edges(2, [(0, 0)])

    def test_rejects_asymmetric_rows(self):
        with pytest.raises(ContractError):
            Graph(2, (0b10, 0b00))

    def test_rejects_out_of_range(self):
        with pytest.raises(ContractError):
            Graph.from_edges(2, [(0, 5)])

    def test_edges_sorted(self):
        g = Graph.from_edges(4, [(2, 3), (0, 1), (1, 3)])
        assert list(g.edges()) == [(0, 1), (1, 3), (2, 3)]


class TestEdgeCounts:
    def test_path_inner_edge(self):
        g = path(3)
        assert e_subset(g, g.vertex_set([0, 1])) == 1

    def test_k4_whole(self):
        g = complete(4)
        assert e_subset(g, g.full_set()) == 6

    def test_join12_cycle_block(self):
        h = i7c5()
        assert e_subset(h, h.vertex_set(range(7, 12))) == 5

    def test_cross_path_endpoints(self):
        g = path(3)
        assert e_cross(g, g.vertex_set([0]), g.vertex_set([2])) == 0

    def test_join12_cross_full(self):
        h = i7c5()
        assert e_cross(h, h.vertex_set(range(7)), h.vertex_set(range(7, 12))) == 35

    def test_join12_cross_three_cycle_vertices(self):
        h = i7c5()
        assert e_cross(h, h.vertex_set([7, 8, 9]), h.vertex_set(range(7))) == 21

    def test_cross_requires_disjoint(self):
        g = path(3)
        with pytest.raises(ContractError):
            e_cross(g, g.vertex_set([0, 1]), g.vertex_set([1, 2]))

    def test_width_mismatch(self):
        with pytest.raises(ContractError):
            e_subset(path(3), VertexSet.of(4, [0]))

    @given(graphs())
    def test_subset_additivity(self, g):
        if g.n < 2:
            return
        s = g.vertex_set(range(0, g.n, 2))
        t = s.complement()
        assert (e_subset(g, s.union(t))
                == e_subset(g, s) + e_subset(g, t) + e_cross(g, s, t))


class TestDegreeStats:
    def test_cycle(self):
        assert degree_stats(cycle(5)) == (2, 2, 5)

    def test_join12(self):
        assert degree_stats(i7c5()) == (9, 5, 40)

    def test_single_vertex(self):
        assert degree_stats(independent_set(1)) == (0, 0, 0)

    def test_empty(self):
        assert degree_stats(independent_set(0)) == (0, 0, 0)


class TestForbiddenSubgraphs:
    def test_cycle5_triangle_free(self):
        assert is_triangle_free(cycle(5))

    def test_join12(self):
        h = i7c5()
        assert not is_triangle_free(h)
        assert is_k4_free(h)
        u, v, w = find_triangle(h)
        assert h.has_edge(u, v) and h.has_edge(v, w) and h.has_edge(u, w)

    def test_k4(self):
        assert not is_k4_free(complete(4))
        assert find_k4(complete(4)) == (0, 1, 2, 3)

    def test_k4_witness_lexicographic(self):
        g = join(independent_set(2), complete(4))
        assert find_k4(g) == (0, 2, 3, 4)

    @given(graphs(10))
    def test_predicates_agree_with_witnesses(self, g):
        assert is_triangle_free(g) == (find_triangle(g) is None)
        assert is_k4_free(g) == (find_k4(g) is None)

    @given(graphs(12))
    def test_mantel_and_turan(self, g):
        n, m = g.n, g.m
        if is_triangle_free(g):
            assert 4 * m <= n * n
        if is_k4_free(g):
            assert 3 * m <= n * n


class TestInducedAndIndependence:
    def test_induced_map(self):
        h = i7c5()
        sub, mapping = induced_subgraph(h, h.vertex_set([0, 7, 8]))
        assert mapping == (0, 7, 8)
        assert sub.m == 3  # 0-7, 0-8 join edges plus the 7-8 cycle edge

    def test_independent(self):
        h = i7c5()
        assert is_independent(h, h.vertex_set(range(7)))
        assert not is_independent(h, h.vertex_set([7, 8]))

    def test_induces_triangle_free(self):
        h = i7c5()
        assert induces_triangle_free(h, h.vertex_set(range(7, 12)))
        assert not induces_triangle_free(h, h.vertex_set([0, 7, 8]))


class TestPartitions:
    def test_balance_enforced(self):
        g = path(4)
        with pytest.raises(ContractError):
            BalancedPartition.from_side(g, g.vertex_set([0]))

    def test_parity_enforced(self):
        g = path(3)
        with pytest.raises(ParityError):
            BalancedPartition.from_side(g, g.vertex_set([0]))

    def test_cached_counts_verify(self):
        g = cycle(6)
        p = BalancedPartition.from_side(g, g.vertex_set([0, 1, 2]))
        assert p.e_a == 2 and p.e_ac == 2 and p.verify(g)
        assert not Bipartition(g.vertex_set([0, 1, 2]), 5, 0).verify(g)
