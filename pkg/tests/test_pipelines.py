"""Case pipelines: routing, traces, contracts."""
from fractions import Fraction

import pytest

from balpart import ContractError, ParityError
from balpart.exact import exact_min_max_balanced
from balpart.families import (blowup, complete, complete_multipartite, cycle,
                              erdos_renyi, i7c5, independent_set, join,
                              random_k4_free, random_triangle_free,
                              random_tripartite)
from balpart.graphs import Graph, VertexSet, e_cross
from balpart.localsearch import HeuristicConfig
from balpart.pipelines import (CaseTrace, PRESET_JOIN, PRESET_K4FREE,
                               join_partition, k4free_partition,
                               partition_from_parts, proportional_subset,
                               sparse_partition, tripartite_partition,
                               validate_trace)

CFG = HeuristicConfig(seed=0, restarts=2)


class TestSparsePartition:
    def test_k4_gate(self):
        res, app = sparse_partition(complete(4), *PRESET_K4FREE, CFG)
        assert not app.n_condition and not app.applicable

    def test_empty_graph_applicable_shape(self):
        g = independent_set(200)
        res, app = sparse_partition(g, Fraction(37, 500), Fraction(1, 100), CFG)
        assert app.edge_condition and app.n_condition and app.applicable
        assert app.achieved_ok and res.partition.max_side == 0

    def test_moderate_sparse_graph(self):
        g = erdos_renyi(200, 0.04, 3)
        res, app = sparse_partition(g, Fraction(37, 500), Fraction(1, 100), CFG)
        assert app.applicable
        assert res.partition.max_side < Fraction(37, 500) * 200 * 200


class TestProportionalSubset:
    def test_picks_smallest_cross_degrees(self):
        # B-vertex degrees into C are (3, 1, 0, 2)
        g = Graph.from_edges(8, [(0, 4), (0, 5), (0, 6), (1, 4), (3, 6), (3, 7)])
        b = g.vertex_set([0, 1, 2, 3])
        c = g.vertex_set([4, 5, 6, 7])
        y = proportional_subset(g, b, c, 2)
        assert y.members() == (1, 2)
        assert e_cross(g, y, c) == 1 <= Fraction(2, 4) * 6

    def test_extremes(self):
        g = erdos_renyi(10, 0.5, 0)
        b = g.vertex_set(range(5))
        c = g.vertex_set(range(5, 10))
        assert proportional_subset(g, b, c, 0).size == 0
        assert proportional_subset(g, b, c, 5) == b

    def test_domain_error(self):
        g = erdos_renyi(6, 0.5, 0)
        with pytest.raises(ContractError):
            proportional_subset(g, g.vertex_set([0]), g.vertex_set([1]), 2)


class TestTripartite:
    def test_equality_cases(self):
        for sizes, want in (([4, 2, 2], 4), ([6, 3, 3], 9)):
            g = complete_multipartite(sizes)
            bounds = [0]
            for s in sizes:
                bounds.append(bounds[-1] + s)
            parts = [g.vertex_set(range(bounds[k], bounds[k + 1])) for k in range(3)]
            res = tripartite_partition(g, parts, CFG)
            assert res.partition.max_side == want
            assert res.compliant

    def test_rejects_non_independent_part(self):
        g = complete(6)
        parts = [g.vertex_set([0, 1]), g.vertex_set([2, 3]), g.vertex_set([4, 5])]
        with pytest.raises(ContractError):
            tripartite_partition(g, parts, CFG)

    def test_rejects_non_partition(self):
        g = complete_multipartite([2, 2, 2])
        parts = [g.vertex_set([0, 1]), g.vertex_set([2, 3]), g.vertex_set([3, 4])]
        with pytest.raises(ContractError):
            tripartite_partition(g, parts, CFG)

    def test_empty_tripartition(self):
        g = independent_set(6)
        parts = [g.vertex_set([0, 1]), g.vertex_set([2, 3]), g.vertex_set([4, 5])]
        assert tripartite_partition(g, parts, CFG).partition.max_side == 0


class TestK4FreePipeline:
    def test_requires_k4_free(self):
        with pytest.raises(ContractError):
            k4free_partition(complete(4), CFG)

    def test_requires_even(self):
        with pytest.raises(ParityError):
            k4free_partition(independent_set(5), CFG)

    def test_empty_sparse_route(self):
        part, trace = k4free_partition(independent_set(1000), CFG)
        assert trace.case_label == "COR36"
        assert trace.achieved == 0 and trace.compliant

    def test_tripartite_240(self):
        g = random_tripartite(240, 0.4, 3)
        part, trace = k4free_partition(g, CFG)
        validate_trace(g, part, trace)
        assert Fraction(trace.achieved) <= Fraction(37, 500) * 240 * 240
        assert Fraction(trace.achieved) <= Fraction(240 * 240, 16)

    def test_complete_tripartite_equality_shape(self):
        g = complete_multipartite([120, 60, 60])
        part, trace = k4free_partition(g, CFG)
        validate_trace(g, part, trace)
        assert trace.achieved == 3600  # n^2/16 at the extremal class sizes
        assert trace.compliant

    def test_dense_small_uses_heavy_edge_branches(self):
        g = random_k4_free(60, 12, 0.62)
        part, trace = k4free_partition(g, CFG)
        validate_trace(g, part, trace)
        assert part.side_a.size == 30

    def test_small_instances_not_worse_than_exact_plus_polish(self):
        for seed in range(6):
            g = random_k4_free(12, ("small", seed), 0.5)
            part, trace = k4free_partition(g, CFG)
            ex = exact_min_max_balanced(g)
            assert trace.achieved >= ex.value
            validate_trace(g, part, trace)


class TestJoinPipeline:
    def test_case1_large_independent(self):
        g = join(independent_set(13), cycle(7))
        part, trace = join_partition(g.vertex_set(range(13)), g, CFG)
        validate_trace(g, part, trace)
        assert trace.case_label in ("JOIN_C1", "FALLBACK")
        assert trace.compliant

    def test_case3_edgeless(self):
        g = join(independent_set(6), independent_set(6))
        part, trace = join_partition(g.vertex_set(range(6)), g, CFG)
        assert trace.case_label == "JOIN_C3"
        assert trace.achieved == 0

    def test_case3_blowup_boundary(self):
        g = join(independent_set(35), blowup(cycle(5), 5).expand())
        part, trace = join_partition(g.vertex_set(range(35)), g, CFG)
        validate_trace(g, part, trace)
        assert trace.case_label == "JOIN_C3"
        assert Fraction(trace.achieved) <= Fraction(5, 72) * 60 * 60

    def test_case4_small_independent(self):
        h = random_triangle_free(40, 4, 0.5)
        g = join(independent_set(20), h)
        part, trace = join_partition(g.vertex_set(range(20)), g, CFG)
        validate_trace(g, part, trace)
        assert trace.case_label == "JOIN_C4"
        assert trace.compliant

    def test_rejects_missing_join_edges(self):
        g = independent_set(12)
        with pytest.raises(ContractError):
            join_partition(g.vertex_set(range(6)), g, CFG)

    def test_rejects_dependent_block(self):
        g = join(cycle(4), independent_set(4))
        with pytest.raises(ContractError):
            join_partition(g.vertex_set(range(4)), g, CFG)

    def test_rejects_triangle_in_h(self):
        g = join(independent_set(3), complete(3))
        with pytest.raises(ContractError):
            join_partition(g.vertex_set(range(3)), g, CFG)


class TestTraceContracts:
    def test_quantity_manifest_enforced(self):
        with pytest.raises(ContractError):
            CaseTrace("COR36", {"m": Fraction(1), "z": Fraction(1)}, 0,
                      Fraction(1), True)
        with pytest.raises(ContractError):
            CaseTrace("NOT_A_CASE", {}, 0, Fraction(1), True)

    def test_validate_trace_detects_mismatch(self):
        g = random_tripartite(24, 0.5, 1)
        part, trace = k4free_partition(g, CFG)
        doctored = CaseTrace(trace.case_label, trace.quantities,
                             trace.achieved + 1, trace.target_bound,
                             trace.compliant, trace.notes)
        with pytest.raises(AssertionError):
            validate_trace(g, part, doctored)

    def test_partition_from_parts_balances(self):
        g = random_tripartite(30, 0.5, 2)
        sizes = [10, 10, 10]
        parts = [g.vertex_set(range(10 * k, 10 * k + 10)) for k in range(3)]
        part = partition_from_parts(g, parts, CFG)
        assert part.side_a.size == 15
