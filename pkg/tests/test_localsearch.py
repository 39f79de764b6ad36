"""Swap local search and bipartization."""
from fractions import Fraction

import pytest

from balpart import ParityError
from balpart.exact import exact_d2, exact_min_max_balanced
from balpart.families import (complete, cycle, erdos_renyi, i7c5,
                              independent_set, path, random_tripartite)
from balpart.graphs import BalancedPartition, Graph
from balpart.localsearch import (HeuristicConfig, bipartize_local_search,
                                 polish_partition, swap_local_search,
                                 xu_degree_bound)

CFG = HeuristicConfig(seed=0, restarts=3)
NO_FALLBACK = HeuristicConfig(seed=0, restarts=3, exact_fallback_cap=0)


class TestSwapSearch:
    def test_path4(self):
        res = swap_local_search(path(4), "max", CFG)
        assert res.partition.max_side == 0
        assert res.xu_bound == 1 and res.xu_compliant

    def test_k4(self):
        res = swap_local_search(complete(4), "max", CFG)
        assert res.partition.max_side == 1
        assert res.xu_bound == Fraction(3, 2)

    def test_join12_without_fallback(self):
        res = swap_local_search(i7c5(), "max", NO_FALLBACK)
        assert not res.exact_fallback
        assert res.partition.max_side == 10
        assert res.xu_bound == 11 and res.xu_compliant

    def test_sum_objective(self):
        res = swap_local_search(complete(4), "sum", CFG)
        assert res.partition.total == 2

    def test_odd_rejected(self):
        with pytest.raises(ParityError):
            swap_local_search(cycle(5), "max", CFG)

    def test_deterministic(self):
        g = erdos_renyi(30, 0.4, 5)
        a = swap_local_search(g, "max", CFG)
        b = swap_local_search(g, "max", CFG)
        assert a.partition == b.partition

    def test_worker_independence(self):
        g = erdos_renyi(30, 0.4, 5)
        runs = [swap_local_search(g, "max", CFG, workers=w) for w in (1, 2, 8)]
        assert len({r.partition.side_a.mask for r in runs}) == 1

    @pytest.mark.parametrize("seed", range(10))
    def test_degree_bound_sample(self, seed):
        n = 16 + 2 * (seed % 10)
        g = erdos_renyi(n, 0.2 + 0.06 * seed, ("xu-sample", seed))
        res = swap_local_search(g, "max", CFG)
        assert Fraction(res.partition.max_side) <= res.xu_bound


class TestPolish:
    def test_never_worsens_exact_witness(self):
        g = erdos_renyi(14, 0.5, 2)
        ex = exact_min_max_balanced(g)
        out = polish_partition(g, ex.witness, "max", CFG)
        assert out.max_side == ex.value

    def test_improves_bad_start(self):
        g = cycle(8)
        bad = BalancedPartition.from_side(g, g.vertex_set([0, 1, 2, 3]))
        out = polish_partition(g, bad, "max", CFG)
        assert out.max_side <= bad.max_side


class TestBipartize:
    def test_c5_tight(self):
        res = bipartize_local_search(cycle(5), CFG)
        assert res.deleted == 1 and res.tf_bound == 1 and res.tf_compliant

    def test_c4(self):
        res = bipartize_local_search(cycle(4), CFG)
        assert res.deleted == 0

    def test_petersen(self):
        pet = Graph.from_edges(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                                    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                                    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)])
        res = bipartize_local_search(pet, CFG)
        assert res.deleted == exact_d2(pet).value == 3
        assert res.tf_bound == 6

    def test_dense_target_reported(self):
        g = complete(10)
        res = bipartize_local_search(g, CFG)
        assert res.dense_bound == Fraction(100, 25)
        assert res.tf_bound is None

    def test_beats_search_floor_on_tripartite(self):
        g = random_tripartite(40, 0.5, 9)
        res = bipartize_local_search(g, CFG)
        assert res.partition.verify(g)
        assert res.deleted + res.cut == g.m


def test_xu_degree_bound_formula():
    assert xu_degree_bound(i7c5()) == Fraction(40 + 9 - 5, 4)
    assert xu_degree_bound(independent_set(4)) == 0
