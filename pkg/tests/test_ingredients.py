import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from splitcode.design import GroupType
from splitcode.errors import CannotSupplyMols, InadmissibleOrder, NotPrime, UnsupportedOrder
from splitcode.ingredients.classical import gdd_admissible, sts, td, weight_gdd
from splitcode.ingredients.fields import IRREDUCIBLE, gf, is_irreducible, prime_power
from splitcode.ingredients.mols import (MolsSet, are_orthogonal, is_latin, mols_from_field,
                                        mols_ladder, mols_product, trivial_mols)
from splitcode.verify import verify

import oracles


# -- fields -------------------------------------------------------------------

def test_gf2():
    F = gf(2, 1)
    assert F.order == 2 and F.mul[1, 1] == 1 and F.add[1, 1] == 0


def test_gf16_frobenius():
    F = gf(2, 4)
    rng = random.Random(1)
    for x in (rng.randrange(16) for _ in range(20)):
        assert F.power(x, 16) == x


def test_gf3_inverses():
    F = gf(3)
    assert {x: F.inverse(x) for x in (1, 2)} == {1: 1, 2: 2}


@pytest.mark.parametrize("pe", sorted(IRREDUCIBLE))
def test_every_table_polynomial_is_irreducible_and_field_is_sound(pe):
    p, e = pe
    assert is_irreducible(IRREDUCIBLE[pe], p)
    F = gf(p, e)
    q = p ** e
    for x in range(q):
        assert F.power(x, q) == x
    for x in range(1, q):
        assert F.mul[x, F.inverse(x)] == 1


def test_reducible_polynomial_detected():
    assert not is_irreducible((1, 0, 1), 2)  # x^2 + 1 = (x + 1)^2


def test_field_errors():
    with pytest.raises(NotPrime):
        gf(4)
    with pytest.raises(UnsupportedOrder):
        gf(2, 7)
    assert prime_power(48) is None and prime_power(49) == (7, 2)


# -- MOLS ---------------------------------------------------------------------

def _oracle_orthogonal(a, b):
    n = len(a)
    return len({(a[i][j], b[i][j]) for i in range(n) for j in range(n)}) == n * n


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_mols_from_field(q):
    m = mols_from_field(q)
    assert len(m) == q - 1
    sq = [s.tolist() for s in m.squares]
    for s in sq:
        assert all(sorted(r) == list(range(q)) for r in s)
        assert all(sorted(col) == list(range(q)) for col in zip(*s))
    for a, b in combinations(sq, 2):
        assert _oracle_orthogonal(a, b)


def test_mols_product_16_by_3():
    m = mols_product(mols_from_field(16), mols_from_field(3))
    assert m.order == 48 and len(m) == 2
    a, b = (s.tolist() for s in m.squares)
    assert _oracle_orthogonal(a, b)


def test_mols_product_3_by_3_and_identity():
    m = mols_product(mols_from_field(3), mols_from_field(3))
    assert m.order == 9 and len(m) == 2
    one = mols_product(trivial_mols(2), mols_from_field(5))
    assert one.order == 5 and all(np.array_equal(x, y) for x, y in
                                  zip(one.squares, mols_from_field(5).squares))


def test_mols_ladder_failure_has_trace():
    with pytest.raises(CannotSupplyMols) as exc:
        mols_ladder(6, 2)  # GF(2) supplies a single square
    assert exc.value.trace
    assert len(mols_ladder(6, 1)[0]) == 1
    with pytest.raises(CannotSupplyMols):
        mols_ladder(10, 2)


def test_mols_check_catches_non_latin():
    with pytest.raises(ValueError):
        MolsSet(2, (np.array([[0, 0], [1, 1]]),)).check()
    assert is_latin(np.array([[0, 1], [1, 0]]))
    assert not are_orthogonal(np.array([[0, 1], [1, 0]]), np.array([[0, 1], [1, 0]]))


# -- transversal designs and STS ------------------------------------------------

@pytest.mark.parametrize("k,n", [(3, 30), (4, 48), (2, 5), (3, 1), (5, 4)])
def test_td(k, n):
    g = td(k, n)
    assert g.num_blocks == n * n and g.group_type == GroupType.uniform(n, k)
    assert verify(g)


def test_td_small_matches_oracle():
    g = td(3, 4)
    assert oracles.is_valid(g.split_blocks(), g.v, 2, g.groups)


@pytest.mark.parametrize("n,b", [(7, 7), (9, 12), (13, 26), (1, 0), (3, 1)])
def test_sts_counts(n, b):
    s = sts(n)
    assert s.num_blocks == b and verify(s)


def test_sts_small_matches_oracle():
    for n in (7, 9, 13):
        s = sts(n)
        assert oracles.is_splitting_design(s.split_blocks(), n, 2)


@pytest.mark.parametrize("n", range(1, 40))
def test_sts_all_orders(n):
    if n % 6 in (1, 3):
        assert sts(n).num_blocks == n * (n - 1) // 6
    else:
        with pytest.raises(InadmissibleOrder):
            sts(n)


def test_weighted_sts_30_7():
    g = weight_gdd(sts(7), 30)
    assert g.group_type == GroupType.uniform(30, 7) and g.num_blocks == 6300 and verify(g)


def test_gdd_admissibility_table():
    assert gdd_admissible(3, GroupType.uniform(30, 4))[0]
    assert not gdd_admissible(3, GroupType.uniform(2, 5))[0]
    assert not gdd_admissible(4, GroupType.uniform(2, 4))[0]
    assert not gdd_admissible(4, GroupType.uniform(6, 4))[0]
    assert gdd_admissible(4, GroupType.uniform(48, 4))[0]
    assert not gdd_admissible(3, GroupType.uniform(5, 2))[0]


@given(st.integers(1, 12), st.integers(3, 12))
def test_gdd_admissibility_matches_counting_for_k3(g, n):
    ok, _ = gdd_admissible(3, GroupType.uniform(g, n))
    counting = (n - 1) * g % 2 == 0 and n * (n - 1) * g * g % 6 == 0
    assert ok == counting
