import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binomfactor import (DomainError, OutOfRangeError, binom_exponent,
                         canonical_integer_form, decompose, equivalence_check,
                         prime_divides, verify_disjoint)
from binomfactor.decomposition import (_integer_root_vec, _level_range_arrays,
                                       integer_membership_mask)


def canonical_level1_pairs(n, k, count=None):
    dec = decompose(n, k)
    rows = canonical_integer_form(dec)[1]
    pairs = [(c.lower, c.upper) for c in rows]
    return pairs[:count] if count else pairs


class TestShowcaseDecompositions:
    def test_2000_1000_prefix(self):
        assert canonical_level1_pairs(2000, 1000, 4) == [
            (1000, 2000), (500, 666), (333, 400), (250, 285)]

    def test_2000_800_prefix(self):
        assert canonical_level1_pairs(2000, 800, 6) == [
            (1200, 2000), (800, 1000), (600, 666), (400, 500), (300, 333), (266, 285)]

    def test_2000_800_exact_endpoints(self):
        dec = decompose(2000, 800)
        top = dec.levels[1][:3]
        assert (top[0].lower, top[0].upper) == (Fraction(1200), Fraction(2000))
        assert (top[1].lower, top[1].upper) == (Fraction(800), Fraction(1000))
        assert (top[2].lower, top[2].upper) == (Fraction(600), Fraction(2000, 3))

    def test_membership_1999(self, table_small):
        dec = decompose(2000, 1000)
        assert prime_divides(dec, 1999)
        assert binom_exponent(1999, 2000, 1000) > 0

    def test_membership_997_excluded(self, table_small):
        dec = decompose(2000, 1000)
        assert not prime_divides(dec, 997)
        assert binom_exponent(997, 2000, 1000) == 0

    def test_small_membership_at_higher_level(self):
        dec = decompose(4, 2)
        # 2 | C(4,2) = 6, witnessed by 2^1 in some interval
        assert prime_divides(dec, 2)
        assert prime_divides(dec, 3)
        assert not prime_divides(dec, 5)


class TestDegenerateInputs:
    def test_diagonal_empty(self):
        dec = decompose(5, 5)
        assert dec.all_intervals() == []
        assert dec.max_root_index == 0

    def test_k_zero_empty(self):
        assert decompose(7, 0).all_intervals() == []

    def test_k_above_n_rejected(self):
        with pytest.raises(DomainError):
            decompose(5, 6)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            decompose(5, -1)


class TestCanonicalForm:
    def test_floored_endpoint(self):
        dec = decompose(2000, 1000)
        # the 2000/3 endpoint displays as 666
        second = canonical_integer_form(dec)[1][1]
        assert second.upper == 666
        assert dec.levels[1][1].upper == Fraction(2000, 3)

    def test_integer_endpoints_unchanged(self):
        first = canonical_integer_form(decompose(2000, 1000))[1][0]
        assert (first.lower, first.upper) == (1000, 2000)

    def test_degenerate_flagged(self):
        # hunt a degenerate floored interval in a few decompositions
        found = False
        for n, k in [(50, 21), (101, 43), (211, 90), (499, 201)]:
            for rows in canonical_integer_form(decompose(n, k)).values():
                for c in rows:
                    if c.empty:
                        assert c.lower == c.upper
                        found = True
        assert found

    def test_membership_equivalent(self, table_small):
        # floored intervals hold exactly the same primes as the rationals
        dec = decompose(997, 401)
        rows = canonical_integer_form(dec)[1]
        ivs = dec.levels[1]
        for p in table_small.primes_up_to(997).tolist():
            exact = any(iv.lower < p <= iv.upper for iv in ivs)
            floored = any(c.lower < p <= c.upper for c in rows)
            assert exact == floored


class TestDisjointness:
    @pytest.mark.parametrize("n,k", [(2000, 1000), (2000, 800), (977, 333), (144, 89)])
    def test_levels_disjoint(self, n, k):
        dec = decompose(n, k)
        for i in dec.levels:
            assert verify_disjoint(dec, i) is None

    def test_single_interval_trivially_disjoint(self):
        dec = decompose(3, 2)
        assert verify_disjoint(dec, 1) is None


class TestBranchOrderings:
    """The endpoint chains that decide which branch an index pair takes."""

    @pytest.mark.parametrize("n,k", [(2000, 800), (100, 37), (541, 108), (60, 25)])
    def test_branch_a_chain(self, n, k):
        dec = decompose(n, k)
        for iv in dec.levels[1]:
            if iv.branch != "A":
                continue
            j, f = iv.j, iv.f
            a1 = Fraction(k, j)
            b1 = Fraction(n, f + j + 1)
            c1 = Fraction(n - k, f + 1)
            assert a1 <= b1 <= c1
            assert iv.lower == c1

    @pytest.mark.parametrize("n,k", [(2000, 800), (100, 37), (541, 108), (60, 25)])
    def test_branch_b_chain(self, n, k):
        dec = decompose(n, k)
        for iv in dec.levels[1]:
            if iv.branch != "B":
                continue
            j = iv.j
            t = (n * j) // k
            a1 = Fraction(k, j)
            b1 = Fraction(n, t + 1)
            c1 = Fraction(n - k, t - j + 1)
            assert c1 < b1 < a1
            assert iv.lower == a1
            assert (n * j) % k != 0


class TestCentralSpecialisation:
    def test_central_coefficients(self):
        # n = 2k: level 1 is exactly {(k/j, 2k/(2j-1)]} and branch B is empty
        for k in list(range(1, 200)) + [512, 777, 1000]:
            dec = decompose(2 * k, k)
            ivs = dec.levels.get(1, ())
            assert all(iv.branch == "A" for iv in ivs)
            expected = []
            j = 1
            while 2 * k >= 2 * (2 * j - 1):
                expected.append((Fraction(k, j), Fraction(2 * k, 2 * j - 1)))
                j += 1
            assert [(iv.lower, iv.upper) for iv in ivs] == expected


class TestTruncationSoundness:
    @pytest.mark.parametrize("n,k", [(2, 1), (100, 37), (2000, 800), (4096, 1)])
    def test_no_power_beyond_max_level(self, n, k):
        dec = decompose(n, k)
        assert 2 ** (dec.max_root_index + 1) > n

    def test_max_level_has_integer_content(self):
        dec = decompose(2000, 1000)
        top = dec.levels[dec.max_root_index]
        assert any(
            iv.upper.numerator // iv.upper.denominator >= 2
            and iv.upper.numerator // iv.upper.denominator
            > iv.lower.numerator // iv.lower.denominator
            for iv in top)


class TestFastPathAgreesWithIntervals:
    @pytest.mark.parametrize("n,k", [(60, 25), (100, 37), (541, 108), (2000, 800)])
    def test_level_arrays_match_materialised(self, n, k):
        dec = decompose(n, k)
        for i, ivs in dec.levels.items():
            lo, hi = _level_range_arrays(n, k, i)
            got = sorted(zip(lo.tolist(), hi.tolist()))
            want = sorted(
                (iv.lower.numerator // iv.lower.denominator,
                 iv.upper.numerator // iv.upper.denominator)
                for iv in ivs)
            assert got == want

    @pytest.mark.parametrize("n,k", [(100, 37), (400, 123)])
    def test_mask_matches_prime_divides(self, n, k, table_small):
        mask = integer_membership_mask(n, k)
        dec = decompose(n, k)
        for p in table_small.primes_up_to(n).tolist():
            assert mask[p] == prime_divides(dec, p)

    @given(st.integers(2, 60))
    @settings(max_examples=60, deadline=None)
    def test_integer_root_vec_exact(self, i):
        arr = np.array([0, 1, 2, 3, 7, 8, 9, 63, 64, 65, 10**6, 10**12], dtype=np.int64)
        r = _integer_root_vec(arr.copy(), i)
        for x, v in zip(arr.tolist(), r.tolist()):
            assert v**i <= x < (v + 1) ** i


class TestEquivalence:
    def test_showcase_pairs(self, table_small):
        assert equivalence_check(2000, 1000, table_small) is None
        assert equivalence_check(2000, 800, table_small) is None

    def test_small_exhaustive(self, table_small):
        for n in range(1, 120):
            for k in range(n + 1):
                assert equivalence_check(n, k, table_small) is None, (n, k)

    def test_random_midsize(self, table_medium):
        rng = random.Random(4242)
        for _ in range(60):
            n = rng.randint(2, 100_000)
            k = rng.randint(1, n)
            assert equivalence_check(n, k, table_medium) is None, (n, k)

    def test_out_of_range(self, table_small):
        with pytest.raises(OutOfRangeError):
            equivalence_check(30_000, 10, table_small)

    def test_oracle_count_matches_decomposition_count(self, table_small):
        from binomfactor import omega_binom_oracle
        count, primes = omega_binom_oracle(table_small, 2000, 1000)
        mask = integer_membership_mask(2000, 1000)
        assert count == 208
        assert int(mask[table_small.primes_up_to(2000)].sum()) == count


class TestJsonShape:
    def test_schema(self):
        doc = decompose(12, 5).to_json_dict()
        assert set(doc) == {"n", "k", "levels"}
        assert doc["n"] == 12 and doc["k"] == 5
        for level in doc["levels"]:
            assert set(level) == {"i", "intervals"}
            for iv in level["intervals"]:
                assert {"lower", "upper", "branch", "j"} <= set(iv)
                assert set(iv["lower"]) == {"num", "den"}
                if iv["branch"] == "A":
                    assert "f" in iv
                else:
                    assert "f" not in iv

    def test_endpoints_in_lowest_terms(self):
        doc = decompose(2000, 800).to_json_dict()
        for level in doc["levels"]:
            for iv in level["intervals"]:
                assert math.gcd(iv["lower"]["num"], iv["lower"]["den"]) == 1
                assert math.gcd(iv["upper"]["num"], iv["upper"]["den"]) == 1
