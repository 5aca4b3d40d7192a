import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cycleturan.cycles import CycleFamily, copy_edge_sets, count_cycles, is_family_free
from cycleturan.errors import BudgetExceeded, TooLarge, TooManyCopies, ValidationError
from cycleturan.hypergraph import Hypergraph, complete_hypergraph, gen_gnrp, gen_with_edge_count, make_rng
from cycleturan.turan import (
    ExBound,
    best_star,
    construction_deletion,
    construction_middle,
    construction_star,
    construction_subsample,
    count_free_subgraphs,
    exact_random_turan,
    greedy_free_subgraph,
    greedy_turan_lower,
    middle_range_p_prime,
)

C4 = CycleFamily.linear(2, 4)
C34 = CycleFamily.linear(3, 4)


@st.composite
def small_hosts(draw):
    r = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(4, 7))
    m = draw(st.integers(0, min(14, math.comb(n, r))))
    return gen_with_edge_count(n, r, m, draw(st.integers(0, 2**32)))


def copies_of(H, fam):
    return [tuple(s) for s in copy_edge_sets(H, fam)]


def star_of(H, v):
    return H.subgraph(i for i, e in enumerate(H.edges) if v in e)


class TestExact:
    def test_star_is_its_own_answer(self):
        S = star_of(complete_hypergraph(7, 3), 0)
        assert exact_random_turan(S, C34).value == len(S)

    def test_canonical_host(self, c34):
        assert exact_random_turan(c34, C34).value == 3

    def test_k5(self, k5):
        res = exact_random_turan(k5, C4)
        assert res.value == 6 == oracles.max_free(10, copies_of(k5, C4))
        assert is_family_free(k5.subgraph(res.witness), C4)

    def test_k6_brute_force(self):
        K = complete_hypergraph(6, 2)
        assert exact_random_turan(K, C4).value == oracles.max_free(15, copies_of(K, C4)) == 7

    @pytest.mark.parametrize("n,ex", [(7, 9), (8, 11)])
    def test_known_graph_values(self, n, ex):
        assert exact_random_turan(complete_hypergraph(n, 2), C4).value == ex

    def test_budget_gives_interval(self):
        res = exact_random_turan(complete_hypergraph(8, 2), C4, budget=5)
        assert res.lower <= 11 <= res.upper
        if not res.exact:
            with pytest.raises(BudgetExceeded):
                res.value

    def test_copy_cap(self):
        with pytest.raises(TooManyCopies):
            exact_random_turan(complete_hypergraph(8, 2), C4, copy_cap=10)

    def test_uniformity_mismatch(self, k5):
        with pytest.raises(ValidationError):
            exact_random_turan(k5, C34)

    def test_json(self):
        assert ExBound(3, 5).to_json()["exact"] is False

    @settings(max_examples=80, deadline=None)
    @given(small_hosts(), st.integers(0, 2**16))
    def test_sandwich_against_oracle(self, H, seed):
        fam = CycleFamily.linear(H.r, 4)
        res = exact_random_turan(H, fam, seed=seed)
        assert res.exact
        assert res.value == oracles.max_free(len(H), copies_of(H, fam))
        assert greedy_turan_lower(H, fam, seed) <= res.value <= len(H)
        assert len(res.witness) == res.value
        assert is_family_free(H.subgraph(res.witness), fam)

    @settings(max_examples=40, deadline=None)
    @given(small_hosts(), st.integers(0, 2**16))
    def test_monotone_under_edge_addition(self, H, seed):
        fam = CycleFamily.linear(H.r, 4)
        missing = sorted(complete_hypergraph(H.n, H.r).edge_set() - H.edge_set())
        if not missing:
            return
        e = missing[int(make_rng(seed).integers(len(missing)))]
        assert exact_random_turan(H.with_edges([e]), fam).value >= exact_random_turan(H, fam).value

    @settings(max_examples=30, deadline=None)
    @given(small_hosts())
    def test_independent_of_search_order(self, H):
        fam = CycleFamily.linear(H.r, 4)
        vals = {exact_random_turan(H, fam, seed=s).value for s in range(3)}
        assert len(vals) == 1


class TestGreedy:
    def test_free_host(self):
        S = star_of(complete_hypergraph(6, 3), 2)
        assert greedy_turan_lower(S, C34, 4) == len(S)

    def test_canonical_host_always_three(self, c34):
        assert {greedy_turan_lower(c34, C34, s) for s in range(20)} == {3}

    def test_k5_best_of_hundred(self, k5):
        assert max(greedy_turan_lower(k5, C4, s) for s in range(100)) == 6

    def test_reproducible(self):
        H = gen_gnrp(9, 3, 0.4, 2)
        assert greedy_turan_lower(H, C34, 11) == greedy_turan_lower(H, C34, 11)

    def test_masks_and_search_agree(self):
        H = gen_gnrp(8, 3, 0.5, 1)
        masks = [sum(1 << i for i in s) for s in copy_edge_sets(H, C34)]
        assert greedy_free_subgraph(H, C34, 5) == greedy_free_subgraph(H, C34, 5, masks=masks)

    def test_start_is_kept(self, k5):
        got = greedy_free_subgraph(k5, C4, 0, start=[0, 1])
        assert {0, 1} <= set(got)
        assert is_family_free(k5.subgraph(got), C4)


class TestConstructions:
    def test_deletion_on_free_host(self):
        S = star_of(complete_hypergraph(6, 3), 0)
        assert construction_deletion(S, C34) == S

    def test_deletion_on_canonical_host(self, c34):
        out = construction_deletion(c34, C34)
        assert len(out) == 3 and out.edge_set() < c34.edge_set()

    def test_deletion_random_sparse(self):
        n = 12
        for seed in range(5):
            H = gen_gnrp(n, 3, n ** (-3 + 1.3), seed)
            out = construction_deletion(H, C34)
            assert is_family_free(out, C34)
            assert len(out) >= len(H) - count_cycles(H, C34)

    def test_deletion_cap(self):
        with pytest.raises(TooManyCopies):
            construction_deletion(complete_hypergraph(8, 2), C4, cap=5)

    @pytest.mark.parametrize("pp,expect", [(1.0, 120), (0.0, 0)])
    def test_subsample_extremes(self, pp, expect):
        assert len(construction_subsample(complete_hypergraph(10, 3), pp, 3)) == expect

    def test_subsample_rejects(self):
        with pytest.raises(ValidationError):
            construction_subsample(complete_hypergraph(5, 2), 1.5, 0)

    def test_subsample_mean(self):
        counts = [len(construction_subsample(complete_hypergraph(10, 3), 0.3, s)) for s in range(200)]
        se = math.sqrt(120 * 0.3 * 0.7 / 200)
        assert abs(sum(counts) / 200 - 36) <= 4 * se

    def test_subsample_composition(self):
        N, p, pp = math.comb(10, 3), 0.5, 0.4
        counts = [len(construction_subsample(gen_gnrp(10, 3, p, s), pp, s + 1000)) for s in range(200)]
        se = math.sqrt(N * p * pp * (1 - p * pp) / 200)
        assert abs(sum(counts) / 200 - N * p * pp) <= 4 * se

    def test_star_isolated(self):
        H = Hypergraph(6, 3, [(1, 2, 3)])
        assert len(construction_star(H, 0)) == 0

    def test_star_k36(self):
        S = construction_star(complete_hypergraph(6, 3), 0)
        assert len(S) == 10 and is_family_free(S, C34)

    def test_star_rejects_vertex(self, k5):
        with pytest.raises(ValidationError):
            construction_star(k5, 5)

    def test_best_star_degree(self):
        n, p = 14, 0.5
        mean = p * math.comb(n - 1, 2)
        sd = math.sqrt(math.comb(n - 1, 2) * p * (1 - p))
        for seed in range(20):
            S = best_star(gen_gnrp(n, 3, p, seed))
            assert len(S) >= mean - 4 * sd
            assert is_family_free(S, CycleFamily.linear(3, 6))

    def test_middle_is_free(self):
        n, p = 12, 12 ** -1.5
        H = gen_gnrp(n, 3, p, 0)
        assert is_family_free(construction_middle(H, C34, 2, p, 1), C34)

    def test_middle_rate(self):
        assert middle_range_p_prime(10, 3, 2, 1.0) == pytest.approx(10 ** (-2 + 1 / 3))
        assert middle_range_p_prime(10, 3, 2, 1e-6) == 1.0


class TestCounting:
    def test_empty_count(self, c34):
        assert count_free_subgraphs(c34, C34, 0) == 1

    @pytest.mark.parametrize("m,expect", [(4, 0), (3, 4)])
    def test_canonical_host(self, c34, m, expect):
        assert count_free_subgraphs(c34, C34, m) == expect

    def test_k4(self, k4):
        assert count_free_subgraphs(k4, C4, 4) == 12 == math.comb(6, 4) - 3

    def test_cap(self):
        with pytest.raises(TooLarge):
            count_free_subgraphs(complete_hypergraph(8, 2), C4, 10, cap=1000)

    @settings(max_examples=40, deadline=None)
    @given(small_hosts())
    def test_consistency(self, H):
        fam = CycleFamily.linear(H.r, 4)
        copies = copies_of(H, fam)
        counts = [count_free_subgraphs(H, fam, m) for m in range(len(H) + 1)]
        assert counts == [oracles.count_free(len(H), copies, m) for m in range(len(H) + 1)]
        assert sum(counts) == sum(1 for _ in oracles.free_subsets(len(H), copies))
        ex = exact_random_turan(H, fam).value
        assert counts[ex] >= 1
        assert ex == len(H) or counts[ex + 1] == 0


class TestMarkovHarness:
    def test_frequency_below_mean(self):
        n, p, m, seeds = 7, 0.5, 8, 120
        hits, total = 0, 0
        for s in range(seeds):
            H = gen_gnrp(n, 2, p, s)
            x = count_free_subgraphs(H, C4, m)
            hits += x >= 1
            total += x
        freq, mean = hits / seeds, total / seeds
        # P[X >= 1] <= E[X]; allow 3 binomial standard errors on the frequency
        assert freq <= mean + 3 * math.sqrt(0.25 / seeds)
