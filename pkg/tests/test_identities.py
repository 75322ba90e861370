from collections import Counter
from itertools import permutations

import pytest

from signedstats.identities import (
    IDENTITY_IDS, DistributionSpec, Verdict, a_poly_recursive, ascent_telescope,
    d_i, descent_telescope, distribution, distribution_by_elements, insert_value,
    insertion_block_closed_form, insertion_block_sum, insertion_prediction,
    insertion_stats, s_poly_product, s_poly_recursive, verify, verify_many,
)
from signedstats.polyring import BiPoly, Discrepancy, evaluate
from signedstats.signed_perm import RankCapError, from_window, group_order
from signedstats.statistics import STAT_NAMES, full_stats

from conftest import all_signed

W = from_window
A3 = "1 + 2*t*q + 2*t*q^2 + t^2*q^3"
S1 = "1 + t*q"
S2 = "1 + 2*t*q + t*q^2 + t^2*q^2 + 2*t^2*q^3 + t^3*q^4"


def brute_distribution(group, n, t_stat, q_stat) -> BiPoly:
    elems = all_signed(n) if group == "B" else (W(p) for p in permutations(range(1, n + 1)))
    counts = Counter()
    for p in elems:
        r = full_stats(p).as_dict()
        counts[(r[q_stat] if q_stat else 0, r[t_stat] if t_stat else 0)] += 1
    return BiPoly(counts)


class TestDistribution:
    def test_goldens(self):
        assert str(distribution(DistributionSpec("S", 3, "des_A", "maj_A"))) == A3
        assert str(distribution(DistributionSpec("B", 1, "fdes", "fmaj"))) == S1
        assert str(distribution(DistributionSpec("B", 2, "fdes", "fmaj"))) == S2
        assert str(distribution(DistributionSpec("B", 1, "ndes", "nmaj"))) == S1

    @pytest.mark.parametrize("n", range(1, 5))
    @pytest.mark.parametrize("group", ["S", "B"])
    def test_kernel_matches_scalar_route(self, group, n):
        for t_stat in STAT_NAMES:
            for q_stat in ("maj_A", "length", "nmaj", "fmaj", None):
                spec = DistributionSpec(group, n, t_stat, q_stat)
                fast = distribution(spec)
                assert fast == brute_distribution(group, n, t_stat, q_stat)
                assert fast == distribution_by_elements(spec)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_mass(self, n):
        for group in "SB":
            p = distribution(DistributionSpec(group, n, "des_A", "maj_A"))
            assert evaluate(p, 1, 1) == group_order(n, group)

    @pytest.mark.parametrize("workers", [1, 2, 3, 8])
    def test_worker_count_independent(self, workers):
        spec = DistributionSpec("B", 6, "fdes", "fmaj")
        assert distribution(spec, workers=workers) == distribution(spec, workers=1)

    def test_spec_validation(self):
        with pytest.raises(ValueError, match="at least one"):
            DistributionSpec("B", 2)
        with pytest.raises(ValueError, match="unknown statistic"):
            DistributionSpec("B", 2, "foo")
        with pytest.raises(ValueError):
            DistributionSpec("C", 2, "fdes")
        with pytest.raises(RankCapError):
            distribution(DistributionSpec("B", 10, "fdes"))
        with pytest.raises(RankCapError):
            distribution(DistributionSpec("B", 5, "fdes"), rank_cap=4)


class TestRecursions:
    def test_seeds_and_goldens(self):
        assert a_poly_recursive(0) == 1 and s_poly_recursive(0) == 1
        assert a_poly_recursive(1) == 1
        assert str(a_poly_recursive(3)) == A3
        assert str(s_poly_recursive(1)) == S1
        assert str(s_poly_recursive(2)) == S2
        assert str(s_poly_product(1)) == S1
        assert str(s_poly_product(2)) == S2

    def test_product_mass(self):
        assert evaluate(s_poly_product(3), 1, 1) == 48

    @pytest.mark.parametrize("n", range(1, 8))
    def test_triple_and_double_agreement(self, n):
        s = distribution(DistributionSpec("B", n, "fdes", "fmaj"))
        assert s == s_poly_recursive(n) == s_poly_product(n)
        assert distribution(DistributionSpec("S", n, "des_A", "maj_A")) == a_poly_recursive(n)

    def test_negative_rank(self):
        with pytest.raises(ValueError):
            a_poly_recursive(-1)
        with pytest.raises(ValueError):
            s_poly_product(0)


class TestInsertion:
    def test_examples(self):
        sigma = W([1])
        assert insert_value(sigma, 1, 1) == W([2, 1])
        assert insertion_stats(sigma, 1, 1) == (2, 1)
        assert insertion_stats(sigma, 2, 1) == (0, 0)
        assert insert_value(sigma, 2, -1) == W([1, -2])
        assert insertion_stats(sigma, 2, -1) == (2, 1)

    def test_bad_position(self):
        with pytest.raises(ValueError):
            insertion_stats(W([1, 2]), 4, 1)
        with pytest.raises(ValueError):
            insertion_stats(W([1, 2]), 0, -1)

    def test_d_i(self):
        sigma = W([-3, 1, -6, 2, -4, -5])  # descents at 2, 4, 5
        assert [d_i(sigma, i) for i in range(1, 7)] == [3, 3, 2, 2, 1, 0]

    @pytest.mark.parametrize("n", range(2, 6))
    def test_closed_form_increments(self, n):
        for sigma in all_signed(n - 1):
            for i in range(1, n + 1):
                for sign in (1, -1):
                    assert insertion_stats(sigma, i, sign) == insertion_prediction(sigma, i, sign)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_telescopes(self, n):
        for sigma in all_signed(n - 1):
            lhs, rhs = descent_telescope(sigma)
            assert lhs == rhs
            lhs, rhs = ascent_telescope(sigma)
            assert lhs == rhs

    @pytest.mark.parametrize("n", range(2, 6))
    def test_block_closed_form(self, n):
        for sigma in all_signed(n - 1):
            assert insertion_block_sum(sigma) == insertion_block_closed_form(sigma)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_blocks_sum_to_distribution(self, n):
        total = BiPoly()
        for sigma in all_signed(n - 1):
            total = total + insertion_block_sum(sigma)
        assert total == distribution(DistributionSpec("B", n, "fdes", "fmaj"))


class TestVerify:
    def test_thm23_rank_one(self):
        v = verify("thm23", 1, 10)
        assert v.passed and v.order == 10 and v.first_discrepancy is None

    def test_cor44_rank_two(self):
        v = verify("cor44", 2)
        assert v.passed and str(v.lhs) == str(v.rhs) == S2
        assert v.order is None

    def test_macmahon_rank_three(self):
        v = verify("macmahon", 3)
        brute = Counter(full_stats(W(p)).inv for p in permutations((1, 2, 3)))
        assert v.passed and v.lhs == BiPoly({(k, 0): c for k, c in brute.items()})
        assert str(v.lhs) == "1 + 2*q + 2*q^2 + q^3"

    def test_thm42_small_order(self):
        assert verify("thm42", 2, 5).passed

    @pytest.mark.parametrize("ident", [i for i in IDENTITY_IDS if i != "thm21"])
    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_but_thm21(self, ident, n):
        v = verify(ident, n, 20)
        assert v.passed, v

    def test_thm21_rank_one(self):
        assert verify("thm21", 1).passed

    def test_thm21_reports_witness(self):
        v = verify("thm21", 2)
        assert not v.passed
        assert v.witness == "-1,-2"
        assert v.first_discrepancy == Discrepancy(2, 2, 2, 1)

    def test_unknown_id(self):
        with pytest.raises(ValueError, match="valid ids: macmahon"):
            verify("nosuch", 2)

    def test_length27_limit(self):
        with pytest.raises(ValueError, match="n <= 6"):
            verify("length27", 7)
        out = verify_many(["length27", "prop31"], [6, 7], skip_out_of_range=True)
        assert [(v.identity_id, v.n) for v in out] == [("length27", 6), ("prop31", 6), ("prop31", 7)]

    def test_detects_a_false_identity(self):
        # a deliberately broken comparison must fail with a localized discrepancy
        from signedstats import identities as ids
        lhs = distribution(DistributionSpec("B", 2, "ndes", "nmaj"))
        found, *_ = ids._poly_check(lhs, lhs + BiPoly.monomial(3, 1))
        assert found == Discrepancy(1, 3, 0, 1)

    def test_verdict_invariant(self):
        with pytest.raises(ValueError):
            Verdict("x", 1, None, True, Discrepancy(0, 0, 1, 2))
        with pytest.raises(ValueError):
            Verdict("x", 1, None, False, None)

    def test_ids(self):
        assert len(IDENTITY_IDS) == 13
