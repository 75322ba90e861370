import math
from functools import reduce
from itertools import product

import pytest
from hypothesis import given, strategies as st

from signedstats.signed_perm import (
    FlagExponents, RankCapError, SignedPermutation, chunk_ranges, compose,
    compose_from_exponents, doubled_window, element_t, enumerate_group,
    enumerate_range, factor_parabolic, flag_decompose, format_window, from_window,
    generator, identity, inverse, parse_window, reflection_eta, unrank,
)
from signedstats.statistics import seq_des, seq_inv, seq_maj, neg_sum

from conftest import all_signed, signed_perms

W = from_window
EXAMPLE = (-3, 1, -6, 2, -4, -5)


def brute_force_flags(n):
    """Every product t_{n-1}^{k_{n-1}} ... t_0^{k_0}, built from repeated compose."""
    out = {}
    ts = [element_t(n, i) for i in range(n)]
    for ks in product(*[range(2 * i + 2) for i in range(n)]):
        p = identity(n)
        for i in range(n - 1, -1, -1):
            for _ in range(ks[i]):
                p = compose(p, ts[i])
        out.setdefault(p, []).append(ks)
    return out


class TestConstruction:
    def test_worked_example_is_valid(self):
        p = W(EXAMPLE)
        assert p.n == 6 and p.window == EXAMPLE

    def test_identity(self):
        assert W([1, 2, 3]) == identity(3)

    @pytest.mark.parametrize("values, pos, fragment", [
        ([2, 2, -1], 2, "duplicate absolute value 2"),
        ([1, 0], 2, "zero"),
        ([1, 3], 2, "exceeds rank 2"),
        ([1, -1], 2, "duplicate absolute value 1"),
    ])
    def test_rejects_with_position(self, values, pos, fragment):
        with pytest.raises(ValueError) as exc:
            W(values)
        assert f"position {pos}" in str(exc.value)
        assert fragment in str(exc.value)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            W([])

    def test_odd_extension(self):
        p = W(EXAMPLE)
        for i in range(1, 7):
            assert p(-i) == -p(i)
        with pytest.raises(ValueError):
            p(0)

    def test_text_round_trip(self):
        assert format_window(W(EXAMPLE)) == "-3,1,-6,2,-4,-5"
        assert parse_window("-3,1,-6,2,-4,-5") == W(EXAMPLE)
        with pytest.raises(ValueError, match="position 2"):
            parse_window("1,x,3")

    @given(signed_perms())
    def test_window_round_trip(self, p):
        assert from_window(p.window) == p
        assert parse_window(format_window(p)) == p


class TestComposition:
    def test_convention(self):
        assert compose(W([2, 1, 3]), W([1, 3, 2])) == W([2, 3, 1])

    def test_s0_involution(self):
        assert compose(W([-1, 2]), W([-1, 2])) == W([1, 2])

    def test_rank_mismatch(self):
        with pytest.raises(ValueError, match="rank mismatch"):
            compose(W([1]), W([1, 2]))

    @pytest.mark.parametrize("w, inv", [
        ([2, 3, 1], [3, 1, 2]), ([-1, 2], [-1, 2]), ([1, -2], [1, -2]),
    ])
    def test_inverse_examples(self, w, inv):
        assert inverse(W(w)) == W(inv)

    def test_inverse_of_1_neg2_by_direct_evaluation(self):
        x = W([1, -2])
        assert [x(x(i)) for i in (1, 2)] == [1, 2]

    @given(st.data())
    def test_group_axioms(self, data):
        n = data.draw(st.integers(1, 6))
        a, b, c = (data.draw(signed_perms(n=n)) for _ in range(3))
        assert compose(a, compose(b, c)) == compose(compose(a, b), c)
        assert compose(a, inverse(a)) == identity(n) == compose(inverse(a), a)
        assert compose(identity(n), a) == a == compose(a, identity(n))
        for i in range(1, n + 1):
            assert compose(a, b)(i) == a(b(i))


class TestGenerators:
    def test_examples(self):
        assert generator(3, 0) == W([-1, 2, 3])
        assert generator(3, 1) == W([2, 1, 3])
        assert generator(2, 1) == W([2, 1])
        assert reflection_eta(3, 2) == W([1, -2, 3])
        assert reflection_eta(2, 1) == W([-1, 2]) == generator(2, 0)

    @pytest.mark.parametrize("bad", [-1, 3])
    def test_out_of_range(self, bad):
        with pytest.raises(ValueError):
            generator(3, bad)
        with pytest.raises(ValueError):
            element_t(3, bad)

    def test_eta_out_of_range(self):
        with pytest.raises(ValueError):
            reflection_eta(3, 0)
        with pytest.raises(ValueError):
            reflection_eta(3, 4)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_involutions(self, n):
        for i in range(n):
            assert compose(generator(n, i), generator(n, i)) == identity(n)
        for i in range(1, n + 1):
            assert compose(reflection_eta(n, i), reflection_eta(n, i)) == identity(n)

    def test_t_examples(self):
        assert element_t(2, 1) == W([-2, 1])
        assert element_t(3, 2) == W([-3, 1, 2])
        for n in range(1, 5):
            assert element_t(n, 0) == generator(n, 0)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_t_is_generator_product(self, n):
        for i in range(n):
            word = [generator(n, j) for j in range(i, -1, -1)]
            assert element_t(n, i) == reduce(compose, word)


class TestFlagExponents:
    def test_examples(self):
        assert flag_decompose(identity(4)).ks == (0, 0, 0, 0)
        assert flag_decompose(W([1, -2])).ks == (1, 2)
        assert compose_from_exponents((0, 0, 0)) == identity(3)
        assert compose_from_exponents((1,)) == W([-1])
        assert compose_from_exponents((1, 2)) == W([1, -2])

    def test_bounds(self):
        with pytest.raises(ValueError):
            FlagExponents((2,))
        with pytest.raises(ValueError):
            compose_from_exponents((0, 4))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_products_are_a_bijection(self, n):
        table = brute_force_flags(n)
        assert len(table) == 2 ** n * math.factorial(n)
        for p, kss in table.items():
            assert len(kss) == 1
            assert flag_decompose(p).ks == kss[0]

    def test_worked_example_exponents(self):
        # peeling agrees with the brute-force product on this element
        p = W(EXAMPLE)
        e = flag_decompose(p)
        assert compose_from_exponents(e) == p
        assert e.ks == (0, 3, 1, 5, 0, 7)
        assert e.total() == 16
        rebuilt = identity(6)
        for i in range(5, -1, -1):
            for _ in range(e.ks[i]):
                rebuilt = compose(rebuilt, element_t(6, i))
        assert rebuilt == p

    @pytest.mark.parametrize("n", range(1, 6))
    def test_round_trips_exhaustive(self, n):
        for p in all_signed(n):
            e = flag_decompose(p)
            assert compose_from_exponents(e) == p
            assert flag_decompose(compose_from_exponents(e)) == e


class TestParabolic:
    def test_worked_example(self):
        f = factor_parabolic(W(EXAMPLE))
        assert f.sigma == W([-6, -5, -4, -3, 1, 2])
        assert f.u == W([4, 5, 1, 6, 3, 2])
        assert f.product() == W(EXAMPLE)

    @given(signed_perms())
    def test_unsigned_and_increasing_cases(self, p):
        u = W(sorted(abs(a) for a in p.window))  # identity
        f = factor_parabolic(p)
        assert factor_parabolic(f.u).sigma == u and factor_parabolic(f.u).u == f.u
        assert factor_parabolic(f.sigma).sigma == f.sigma
        assert factor_parabolic(f.sigma).u == identity(p.n)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_decomposition_exhaustive(self, n):
        seen = set()
        for p in all_signed(n):
            f = factor_parabolic(p)
            assert seq_des(f.sigma.window) == 0 and f.u.is_unsigned
            assert compose(f.sigma, f.u) == p
            seen.add((f.sigma, f.u))
        assert len(seen) == 2 ** n * math.factorial(n)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_coset_property(self, n):
        increasing = [p for p in all_signed(n) if seq_des(p.window) == 0]
        assert len(increasing) == 2 ** n
        unsigned = list(enumerate_group(n, "S"))
        for sigma in increasing:
            for u in unsigned:
                p = compose(sigma, u)
                assert seq_des(p.window) == seq_des(u.window)
                assert seq_maj(p.window) == seq_maj(u.window)
                assert seq_inv(p.window) == seq_inv(u.window)
                assert neg_sum(p) == neg_sum(sigma)


class TestDoubledWindow:
    def test_examples(self):
        assert doubled_window(W([1, 2])) == (-2, -1, 1, 2)
        assert doubled_window(W([-1])) == (1, -1)
        assert doubled_window(W(EXAMPLE)) == (5, 4, -2, 6, -1, 3, -3, 1, -6, 2, -4, -5)

    @given(signed_perms())
    def test_matches_odd_extension(self, p):
        n = p.n
        assert doubled_window(p) == tuple(p(i) for i in list(range(-n, 0)) + list(range(1, n + 1)))


class TestEnumeration:
    @pytest.mark.parametrize("n, which, count", [(2, "B", 8), (3, "S", 6), (3, "B", 48), (1, "B", 2)])
    def test_counts(self, n, which, count):
        elems = list(enumerate_group(n, which))
        assert len(elems) == count == len(set(elems))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_covers_group(self, n):
        assert set(enumerate_group(n, "B")) == set(all_signed(n))
        assert all(p.is_unsigned for p in enumerate_group(n, "S"))

    def test_order(self):
        s3 = [p.window for p in enumerate_group(3, "S")]
        assert s3 == sorted(s3)
        b2 = [format_window(p) for p in enumerate_group(2, "B")]
        assert b2[:2] == ["1,2", "2,1"] and b2[-2:] == ["-1,-2", "-2,-1"]

    def test_unrank_matches_stream(self):
        for which in "SB":
            for g, p in enumerate(enumerate_group(4, which)):
                assert unrank(4, which, g) == p

    @pytest.mark.parametrize("chunks", [1, 3, 7, 48, 100])
    def test_chunks_partition_stream(self, chunks):
        full = list(enumerate_group(3, "B"))
        ranges = chunk_ranges(3, "B", chunks)
        pieces = [list(enumerate_range(3, "B", r.start, r.stop)) for r in ranges]
        assert sum(pieces, []) == full
        assert all(pieces)

    def test_rank_cap(self):
        with pytest.raises(RankCapError, match="rank cap 9"):
            enumerate_group(10, "B")
        with pytest.raises(RankCapError):
            enumerate_group(4, "S", rank_cap=3)
        assert sum(1 for _ in enumerate_group(4, "S", rank_cap=4)) == 24

    def test_bad_group(self):
        with pytest.raises(ValueError):
            enumerate_group(2, "D")

    def test_elements_are_immutable(self):
        p = W([1, -2])
        with pytest.raises(AttributeError):
            p.window = (1, 2)
        assert isinstance(hash(p), int)
        assert isinstance(p, SignedPermutation)
