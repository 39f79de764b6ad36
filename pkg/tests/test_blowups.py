"""Count-vector solver and the C5-profile machinery."""
import itertools

import pytest
from hypothesis import given, strategies as st

from balpart import ContractError, ParityError, e_subset
from balpart.blowups import (CountVector, FiveProfile, aggregate_twins,
                             all_optimal_count_vectors, blowup_edges_from_counts,
                             c5_profile_edges, exact_min_max_blowup,
                             i7c5_blowup_case_value, i7c5_blowup_optimum,
                             min_edges_closed_form, min_edges_profile,
                             minimize_star_form, star_form, transfer_delta,
                             transfer_delta_formula)
from balpart.exact import exact_min_max_balanced
from balpart.families import (BlowupGraph, blowup, cycle, erdos_renyi, i7c5,
                              i7c5_blowup, independent_set)
from balpart.graphs import VertexSet


class TestProfileForms:
    def test_all_equal(self):
        p = FiveProfile((1, 1, 1, 1, 1))
        assert p.cycle_edges == 5 and p.star == 5

    def test_two_full_one_partial(self):
        # sorted (n, n, q, 0, 0) with n=3, q=2 has pentagram value q*n
        assert star_form((3, 3, 2, 0, 0)) == 6

    def test_mixed(self):
        assert c5_profile_edges((3, 0, 2, 1, 0)) == 2
        assert star_form((3, 2, 1, 0, 0)) == 2

    def test_exhaustive_lower_bound(self):
        for n in range(1, 5):
            for a in itertools.product(range(n + 1), repeat=5):
                prof = FiveProfile(a)
                assert prof.cycle_edges >= prof.star, a

    def test_rearrangement_claim_exhaustive(self):
        for x1 in range(11):
            for x2 in range(x1 + 1):
                for y1 in range(11):
                    for y2 in range(y1 + 1):
                        assert x1 * y1 + x2 * y2 >= x1 * y2 + x2 * y1


class TestClosedForm:
    @pytest.mark.parametrize("n,p,q,want", [
        (2, 3, 1, 8), (5, 1, 4, 0), (2, 2, 1, 2),
        (3, 0, 0, 0), (3, 2, 0, 0), (2, 4, 1, 16),
    ])
    def test_values(self, n, p, q, want):
        assert min_edges_closed_form(n, p, q) == want

    def test_domain_errors(self):
        with pytest.raises(ContractError):
            min_edges_closed_form(2, 5, 0)
        with pytest.raises(ContractError):
            min_edges_closed_form(2, 2, 2)

    def test_exhaustive_match_and_uniqueness(self):
        for n in range(1, 5):
            for p in range(5):
                for q in range(n):
                    best, argmin = min_edges_profile(n, p * n + q)
                    assert best == min_edges_closed_form(n, p, q)
                    assert (n, n, q, 0, 0)[:5] in argmin or p != 2 or q == 0
                    if p == 2 and 0 < q < n:
                        assert argmin == ((n, n, q, 0, 0),)

    def test_profile_examples(self):
        assert min_edges_profile(2, 5) == (2, ((2, 2, 1, 0, 0),))
        assert min_edges_profile(2, 10)[0] == 20
        assert min_edges_profile(3, 3)[0] == 0


class TestTransferDeltas:
    def test_table_examples(self):
        assert transfer_delta((3, 2, 2, 1, 0), 1, 2) == -1          # b4 - b3
        assert transfer_delta((2, 2, 2, 2, 2), 4, 5) == 0           # b3 - b2
        assert transfer_delta((3, 3, 1, 1, 0), 2, 3) == -4

    def test_index_errors(self):
        with pytest.raises(ContractError):
            transfer_delta((1, 1, 1, 1, 1), 3, 3)
        with pytest.raises(ContractError):
            transfer_delta_formula((1, 1, 1, 1, 1), 2, 1)

    @given(st.tuples(*[st.integers(0, 8)] * 5))
    def test_formula_matches_direct_evaluation(self, raw):
        b = tuple(sorted(raw, reverse=True))
        for i in range(1, 6):
            for j in range(i + 1, 6):
                assert (transfer_delta(b, i, j)
                        == transfer_delta_formula(b, i, j)), (b, i, j)

    @given(st.tuples(*[st.integers(0, 6)] * 5), st.integers(1, 6))
    def test_sorted_transfers_never_increase(self, raw, n):
        b = tuple(sorted((min(x, n) for x in raw), reverse=True))
        for i in range(1, 6):
            for j in range(i + 1, 6):
                moved = list(b)
                moved[i - 1] += 1
                moved[j - 1] -= 1
                if moved[j - 1] < 0 or moved[i - 1] > n:
                    continue
                if all(moved[k] >= moved[k + 1] for k in range(4)):
                    assert transfer_delta(b, i, j) <= 0, (b, i, j)


class TestTransferLoop:
    def test_hand_simulated(self):
        # ||b - b*|| = |2-3| + |1-0| = 2, so exactly one unit transfer
        trace = minimize_star_form((3, 2, 1, 0, 0), 3)
        assert trace.target == (3, 3, 0, 0, 0)
        assert trace.iterations == 1
        assert trace.steps == (((3, 3, 0, 0, 0), 0),)
        assert trace.final_value == 0

    def test_already_minimal(self):
        trace = minimize_star_form((3, 3, 2, 0, 0), 3)
        assert trace.iterations == 0
        assert trace.final_value == 6

    def test_near_full(self):
        trace = minimize_star_form((2, 2, 2, 2, 1), 2)
        assert trace.final_value == 16 == min_edges_closed_form(2, 4, 1)

    def test_rejects_unsorted(self):
        with pytest.raises(ContractError):
            minimize_star_form((1, 2, 0, 0, 0), 2)

    @given(st.tuples(*[st.integers(0, 6)] * 5), st.integers(1, 6))
    def test_trace_contract(self, raw, n):
        b = tuple(sorted((min(x, n) for x in raw), reverse=True))
        trace = minimize_star_form(b, n)
        dist = sum(abs(x - y) for x, y in zip(b, trace.target))
        assert trace.iterations == dist // 2
        values = [star_form(b)] + [t for _, t in trace.steps]
        assert all(values[k + 1] <= values[k] for k in range(len(values) - 1))
        p, q = divmod(sum(b), n)
        want = 5 * n * n if p == 5 else min_edges_closed_form(n, p, q)
        assert trace.final_value == want


class TestCountVectors:
    def test_whole_c5(self):
        bg = blowup(cycle(5), 1)
        cv = CountVector((1, 1, 1, 1, 1), bg.multiplicities)
        assert blowup_edges_from_counts(bg, cv) == 5

    def test_partial_c5_double(self):
        bg = blowup(cycle(5), 2)
        cv = CountVector((2, 0, 2, 1, 0), bg.multiplicities)
        assert blowup_edges_from_counts(bg, cv) == 2
        # oracle: expanded subset with matching per-block counts
        g = bg.expand()
        side = VertexSet.of(10, [0, 1, 4, 5, 6])
        assert e_subset(g, side) == 2

    def test_independent_block_only(self):
        bg = i7c5_blowup(1)
        counts = (2,) * 7 + (0,) * 5
        assert blowup_edges_from_counts(bg, CountVector(counts, bg.multiplicities)) == 0

    def test_count_cap_enforced(self):
        bg = blowup(cycle(5), 2)
        with pytest.raises(ContractError):
            CountVector((3, 0, 0, 0, 0), bg.multiplicities)


class TestAggregation:
    def test_join12_classes(self):
        agg = aggregate_twins(i7c5_blowup(1))
        assert agg.class_graph.n == 6
        assert agg.multiplicities == (14, 2, 2, 2, 2, 2)
        assert agg.class_members[0] == tuple(range(7))

    def test_no_twins(self):
        bg = blowup(cycle(5), 3)
        agg = aggregate_twins(bg)
        assert agg.class_graph.n == 5


class TestBlowupSolver:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_i7c5_values(self, n):
        res = exact_min_max_blowup(i7c5_blowup(n))
        assert res.value == i7c5_blowup_optimum(n) == 37 * n * n
        assert res.witness.verify(i7c5_blowup(n).expand())

    def test_c5_double(self):
        assert exact_min_max_blowup(blowup(cycle(5), 2)).value == 2

    def test_odd_total_rejected(self):
        with pytest.raises(ParityError):
            exact_min_max_blowup(blowup(cycle(5), 1))

    def test_matches_expanded_solver(self):
        for seed in range(20):
            base = erdos_renyi(4 + seed % 4, 0.5, ("bu", seed))
            mults = tuple(1 + (seed + v) % 3 for v in range(base.n))
            if sum(mults) % 2:
                mults = (mults[0] + 1,) + mults[1:]
            bg = BlowupGraph(base, mults)
            if bg.total > 14:
                continue
            assert (exact_min_max_blowup(bg).value
                    == exact_min_max_balanced(bg.expand()).value)

    def test_equality_structure(self):
        vectors = all_optimal_count_vectors(i7c5_blowup(1))
        base = (2, 0, 1, 2, 0)
        orbit = {tuple(base[(k + r) % 5] for k in range(5)) for r in range(5)}
        orbit |= {tuple(reversed(v)) for v in orbit}
        assert vectors and all(tuple(v[1:]) in orbit for v in vectors)

    def test_worker_determinism(self):
        bg = i7c5_blowup(2)
        runs = [exact_min_max_blowup(bg, workers=w) for w in (1, 2, 8)]
        assert len({(r.value, r.count_vector) for r in runs}) == 1


class TestCaseValues:
    def test_examples(self):
        assert i7c5_blowup_case_value(1, 2, 1) == 37
        assert i7c5_blowup_case_value(1, 3, 0) == 40
        assert i7c5_blowup_optimum(3) == 333

    def test_domain(self):
        with pytest.raises(ContractError):
            i7c5_blowup_case_value(1, 2, 0)       # p=2 needs q >= n
        with pytest.raises(ContractError):
            i7c5_blowup_case_value(1, 5, 0)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_grid_minimum_at_2n(self, n):
        vals = []
        for p, qlo in ((2, n), (3, 0), (4, 0)):
            for q in range(qlo, 2 * n):
                vals.append(((p, q), i7c5_blowup_case_value(n, p, q)))
        best = min(v for _, v in vals)
        assert best == 37 * n * n
        assert [pq for pq, v in vals if v == best] == [(2, n)]
