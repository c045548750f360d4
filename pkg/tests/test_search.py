import pytest

from splitcode.design import GroupType
from splitcode.errors import BudgetExhausted, Inadmissible, UnsupportedClass
from splitcode.ingredients.classical import td
from splitcode.ingredients.search import (_IndexedSet, exact_cover, hill_climb_gdd,
                                          search_cyclic_splitting_design)
from splitcode.verify import verify

import oracles


def test_hill_climb_6_4():
    out = hill_climb_gdd(2, 3, "6^4", seed=1)
    assert out and out.design.num_blocks == 72
    assert out.design.group_type == GroupType.uniform(6, 4)
    assert oracles.is_valid(out.design.split_blocks(), 24, 2, out.design.groups)


def test_hill_climb_2_3_agrees_with_td_branch():
    searched = hill_climb_gdd(2, 3, "2^3", seed=0).design
    direct = td(3, 2)
    assert searched.num_blocks == direct.num_blocks == 4
    assert verify(searched) and verify(direct)


def test_hill_climb_inadmissible_before_search():
    with pytest.raises(Inadmissible):
        hill_climb_gdd(2, 3, "2^5")


def test_hill_climb_unsupported_class():
    with pytest.raises(UnsupportedClass):
        hill_climb_gdd(3, 4, "2^4")


def test_hill_climb_is_deterministic():
    a = hill_climb_gdd(2, 3, "6^4", seed=5)
    b = hill_climb_gdd(2, 3, "6^4", seed=5)
    assert a.design == b.design and a.stats == b.stats


def test_hill_climb_budget_exhaustion_reports_stats():
    out = hill_climb_gdd(2, 3, "30^4", seed=0, budget=100)
    assert not out and out.stats["moves"] <= 100


def test_indexed_set():
    s = _IndexedSet([1, 2, 3])
    s.discard(2)
    s.add(4)
    s.add(4)
    assert sorted(s.items) == [1, 3, 4] and 4 in s and 2 not in s and len(s) == 3


def test_exact_cover_small():
    rows = [("a", "b"), ("c",), ("a",), ("b", "c")]
    chosen, _ = exact_cover(rows, 100)
    covered = sorted(x for i in chosen for x in rows[i])
    assert covered == ["a", "b", "c"]
    assert exact_cover([("a", "b"), ("b", "c")], 100)[0] is None


def test_search_97():
    out = search_cyclic_splitting_design(2, 97, 4, 2, seed=0)
    assert len(out.base.blocks) == 2 and out.base.d == 1
    assert out.design.num_blocks == 194 and verify(out.design)


def test_search_10():
    out = search_cyclic_splitting_design(3, 10, 3, 2, seed=0)
    assert out.design.num_blocks == 15
    assert oracles.is_splitting_design(out.design.blocks, 10, 3)


def test_search_10_other_seed():
    assert search_cyclic_splitting_design(3, 10, 3, 2, seed=7).design.num_blocks == 15


def test_search_rejects_nonexistent_and_nondivisible():
    with pytest.raises(Inadmissible):
        search_cyclic_splitting_design(2, 9, 3, 2)
    with pytest.raises(Inadmissible):
        search_cyclic_splitting_design(3, 12, 3, 2)


def test_search_budget_exhausted():
    with pytest.raises(BudgetExhausted) as exc:
        search_cyclic_splitting_design(2, 97, 4, 2, seed=0, budget=5)
    assert exc.value.stats["budget"] == 5


def test_search_hill_climb_strategy_small():
    out = search_cyclic_splitting_design(2, 25, 3, 2, strategy="hill-climb", seed=0)
    assert out.design.num_blocks == 25 and verify(out.design)


def test_search_is_deterministic():
    a = search_cyclic_splitting_design(3, 10, 3, 2, seed=3)
    b = search_cyclic_splitting_design(3, 10, 3, 2, seed=3)
    assert a.design == b.design
