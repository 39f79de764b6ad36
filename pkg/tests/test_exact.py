"""Exact solvers: examples, oracle agreement, invariants."""
import math
from fractions import Fraction

import pytest

from balpart import (ParityError, SizeCapError, exact_d2,
                     exact_min_max_balanced, exact_min_sum_balanced,
                     is_triangle_free)
from balpart.families import (complete, complete_multipartite, cycle,
                              erdos_renyi, i7c5, random_triangle_free)
from balpart.graphs import Graph


class TestMinMaxBalanced:
    def test_join12(self):
        res = exact_min_max_balanced(i7c5())
        assert res.value == 10
        assert res.proven_optimal
        assert res.witness.verify(i7c5())

    def test_c4(self):
        assert exact_min_max_balanced(cycle(4)).value == 0

    def test_multipartite_422(self):
        assert exact_min_max_balanced(complete_multipartite([4, 2, 2])).value == 4

    def test_witness_contains_vertex_zero(self):
        res = exact_min_max_balanced(erdos_renyi(10, 0.5, 1))
        assert 0 in res.witness.side_a

    def test_odd_order_rejected(self):
        with pytest.raises(ParityError):
            exact_min_max_balanced(cycle(5))

    def test_cap_enforced(self):
        with pytest.raises(SizeCapError):
            exact_min_max_balanced(erdos_renyi(38, 0.1, 0))

    def test_empty_graph(self):
        assert exact_min_max_balanced(Graph(0, ())).value == 0


class TestMinSumBalanced:
    def test_c4(self):
        assert exact_min_sum_balanced(cycle(4)).value == 0

    def test_k4(self):
        assert exact_min_sum_balanced(complete(4)).value == 2

    def test_join12_vs_minmax(self):
        v = exact_min_sum_balanced(i7c5()).value
        assert v <= 2 * 10


class TestD2:
    def test_odd_cycle(self):
        assert exact_d2(cycle(5)).value == 1

    def test_k4(self):
        assert exact_d2(complete(4)).value == 2

    def test_bipartite(self):
        assert exact_d2(cycle(4)).value == 0

    def test_cap(self):
        with pytest.raises(SizeCapError):
            exact_d2(erdos_renyi(32, 0.1, 0))


def _mixed_sizes(count):
    pattern = [8, 10, 12, 8, 10, 12, 8, 10, 14, 16]
    return [pattern[i % len(pattern)] for i in range(count)]


class TestOracleAgreement:
    def test_bnb_equals_enumeration_500(self):
        for i, n in enumerate(_mixed_sizes(500)):
            g = erdos_renyi(n, (0.2, 0.45, 0.7)[i % 3], ("oracle", i))
            a = exact_min_max_balanced(g, method="bnb")
            b = exact_min_max_balanced(g, method="enumerate")
            assert a.value == b.value, (i, n)
            assert a.witness == b.witness, (i, n)

    def test_minsum_bnb_equals_enumeration(self):
        for i in range(60):
            g = erdos_renyi(10, 0.5, ("oracle-sum", i))
            a = exact_min_sum_balanced(g, method="bnb")
            b = exact_min_sum_balanced(g, method="enumerate")
            assert (a.value, a.witness) == (b.value, b.witness)


class TestInvariants:
    @pytest.mark.parametrize("seed", range(25))
    def test_minmax_vs_half_minsum(self, seed):
        g = erdos_renyi(12, 0.4 + 0.02 * seed, ("inv", seed))
        mm = exact_min_max_balanced(g).value
        ms = exact_min_sum_balanced(g).value
        assert mm >= math.ceil(ms / 2)
        assert exact_d2(g).value <= ms

    @pytest.mark.parametrize("seed", range(15))
    def test_triangle_free_d2_bound(self, seed):
        n = 8 + 2 * (seed % 7)
        g = random_triangle_free(n, ("tfd2", seed), 0.45)
        assert is_triangle_free(g)
        m = g.m
        assert Fraction(exact_d2(g).value) <= Fraction(m) - Fraction(4 * m * m, n * n)

    def test_worker_counts_agree(self):
        g = erdos_renyi(16, 0.5, "workers")
        runs = [exact_min_max_balanced(g, workers=w) for w in (1, 2, 8)]
        assert len({(r.value, r.witness.side_a.mask) for r in runs}) == 1
        d2runs = [exact_d2(g, workers=w) for w in (1, 2, 8)]
        assert len({(r.value, r.witness.side_a.mask) for r in d2runs}) == 1
