from fractions import Fraction
from itertools import combinations
from math import comb

from hypothesis import given, strategies as st

from splitcode.admissibility import (block_count, divisibility_ok, divisibility_terms,
                                     elementary_symmetric, known_nonexistent, qualifying_count,
                                     rank_subset, subsets_per_block, unrank_subset)

from oracles import qualifies


def test_divisibility_3x2_is_exactly_2_mod_8():
    for v in range(6, 201):
        assert bool(divisibility_ok(3, v, 3, 2, 1)) == (v % 8 == 2), v


def test_divisibility_reports_first_failing_s():
    res = divisibility_ok(3, 12, 3, 2)
    assert not res and res.failing_s is not None
    assert divisibility_ok(2, 151, 3, 5, 1)


@given(st.integers(1, 4), st.integers(0, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 9))
def test_s_equals_t_term_has_modulus_one(t, dk, c, lam, dv):
    k = t + dk
    terms = list(divisibility_terms(t, k * c + dv, k, c, lam))
    assert [s for s, _, _ in terms] == list(range(t + 1))
    assert terms[-1][2] == 1


def test_known_nonexistent():
    assert known_nonexistent(2, 9, 3, 2, 1)
    assert known_nonexistent(2, 10, 2, 3, 1)
    assert known_nonexistent(2, 13, 4, 2, 1)
    assert known_nonexistent(2, 97, 4, 2, 1) is None
    assert known_nonexistent(3, 9, 3, 2, 1) is None


def test_block_count_values():
    assert block_count(3, 10, 3, 2) == 15
    assert block_count(2, 151, 3, 5) == 151
    assert block_count(2, 385, 4, 2) == 3080
    assert block_count(2, 10, 3, 2) == Fraction(45, 12)
    assert subsets_per_block(2, 3, 5) == 75


def test_elementary_symmetric():
    assert elementary_symmetric([8, 8, 8], 3) == 512
    assert elementary_symmetric([1, 2, 3], 2) == 11


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.integers(0, 2), st.integers(2, 3))
def test_qualifying_count_matches_enumeration(sizes, s, t):
    groups, x = [], 0
    for g in sizes:
        groups.append(tuple(range(x, x + g)))
        x += g
    stem = tuple(range(x, x + s))
    v = x + s
    brute = sum(qualifies(T, groups, set(stem), True) for T in combinations(range(v), t))
    assert qualifying_count(t, v, groups, stem, True) == brute
    if not s:
        brute = sum(qualifies(T, groups, set(), False) for T in combinations(range(v), t))
        assert qualifying_count(t, v, groups) == brute


def test_candelabra_lemma_count():
    groups = [tuple(range(0, 16, 2)), tuple(range(1, 16, 2))]
    assert qualifying_count(3, 18, groups, (16, 17), True) == 576 == comb(18, 3) - 2 * comb(10, 3)
    assert qualifying_count(3, 16, groups, (), True) == 448


@given(st.integers(1, 5), st.data())
def test_rank_unrank_round_trip(t, data):
    v = data.draw(st.integers(t, 30))
    subset = tuple(sorted(data.draw(st.sets(st.integers(0, v - 1), min_size=t, max_size=t))))
    r = rank_subset(subset)
    assert 0 <= r < comb(v, t)
    assert unrank_subset(r, t, v) == subset
    assert unrank_subset(r, t) == subset


def test_ranks_are_a_bijection():
    ranks = sorted(rank_subset(s) for s in combinations(range(9), 3))
    assert ranks == list(range(comb(9, 3)))
