from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from splitcode.acode import (ACode, DeceptionReport, acode_to_design, design_to_acode,
                             evaluate_deception, huber_pd_bound, huber_rule_bound, is_optimal)
from splitcode.combinators import (example_151_design, family_3_3x2, trivial_splitting_gdd)
from splitcode.design import SplittingDesign, dumps
from splitcode.errors import InvalidDesign, NonUniformSplitting, TooLargeForExact

import oracles


@pytest.fixture(scope="module")
def code10():
    return design_to_acode(family_3_3x2(10))


def test_pd_bound_values():
    assert huber_pd_bound(0, 3, 2, 10) == Fraction(3, 5)
    assert huber_pd_bound(1, 3, 2, 10) == Fraction(4, 9)
    assert huber_pd_bound(2, 3, 2, 10) == Fraction(1, 4)
    assert huber_pd_bound(3, 3, 2, 10) == 0
    with pytest.raises(ValueError):
        huber_pd_bound(4, 3, 2, 10)


def test_rule_bound_values():
    assert huber_rule_bound(3, 10, 3, 2) == 15
    assert huber_rule_bound(2, 151, 3, 5) == 151
    assert huber_rule_bound(1, 6, 3, 2) == 1
    assert huber_rule_bound(2, 10, 3, 2) == Fraction(15, 4)


def test_design_to_acode_counts():
    ac = design_to_acode(example_151_design())
    assert len(ac.rules) == 151 and ac.k == 3 and ac.messages == 151 and ac.splitting() == 5
    one = design_to_acode(SplittingDesign(1, 6, 3, 2, [[[0, 1], [2, 3], [4, 5]]]))
    assert len(one.rules) == 1


def test_design_to_acode_rejects_invalid():
    d = example_151_design()
    with pytest.raises(InvalidDesign):
        design_to_acode(SplittingDesign(2, 151, 3, 5, d.blocks[1:]))
    with pytest.raises(InvalidDesign):
        design_to_acode(trivial_splitting_gdd(2, 3, 2))


@pytest.mark.parametrize("make", [example_151_design, lambda: family_3_3x2(10),
                                  lambda: family_3_3x2(18)])
def test_round_trip(make):
    d = make()
    ac = design_to_acode(d)
    back = acode_to_design(ac, d.t)
    assert dumps(back) == dumps(SplittingDesign(d.t, d.v, d.k, d.c, d.blocks))
    assert design_to_acode(back) == ac


def test_disjointness_violation():
    with pytest.raises(InvalidDesign):
        ACode(4, [[[0, 1], [2, 3]], [[0, 1], [1, 2]]])


def test_non_uniform_splitting():
    ac = ACode(5, [[[0, 1], [2]], [[3], [4]]])
    assert ac.splitting() is None
    with pytest.raises(NonUniformSplitting):
        acode_to_design(ac, 1)
    with pytest.raises(NonUniformSplitting):
        evaluate_deception(ac, 0)


def test_is_optimal():
    d = example_151_design()
    assert is_optimal(d)
    assert is_optimal(family_3_3x2(18))
    dup = SplittingDesign(2, 151, 3, 5, list(d.blocks) + [d.blocks[0]])
    with pytest.raises(InvalidDesign):
        is_optimal(dup)
    assert dup.num_blocks == 152 and not is_optimal(dup, check=False)


@pytest.mark.parametrize("i,p", [(0, Fraction(3, 5)), (1, Fraction(4, 9)), (2, Fraction(1, 4))])
def test_deception_10_code(code10, i, p):
    rep = evaluate_deception(code10, i)
    assert rep.probability == p and rep.bound == p and rep.tight
    assert rep.probability == oracles.deception(code10.rules, 10, i)


def test_deception_151_code():
    ac = design_to_acode(example_151_design())
    r0, r1 = evaluate_deception(ac, 0), evaluate_deception(ac, 1)
    assert r0.probability == Fraction(15, 151) and r0.tight
    assert r1.probability == Fraction(1, 15) and r1.tight


def test_single_rule_code_is_certain():
    ac = ACode(6, [[[0, 1], [2, 3], [4, 5]]])
    rep = evaluate_deception(ac, 0)
    assert rep.probability == 1 == rep.bound


def test_order_at_or_above_t_is_at_least_bound():
    # cyclic STS(7) is a 2-design, so order 2 need not be tight
    ac = design_to_acode(family_3_3x2(10))
    sts_code = design_to_acode(SplittingDesign(2, 7, 3, 1, [[[0], [1], [3]], [[1], [2], [4]],
                                                           [[2], [3], [5]], [[3], [4], [6]],
                                                           [[4], [5], [0]], [[5], [6], [1]],
                                                           [[6], [0], [2]]]))
    rep = evaluate_deception(sts_code, 2)
    assert rep.probability >= rep.bound
    assert evaluate_deception(ac, 2).probability >= huber_pd_bound(2, 3, 2, 10)


def _any_model_oracle(rules, v, i):
    k, c = len(rules[0]), len(rules[0][0])
    joint = {}
    for rule in rules:
        for srcs in combinations(range(k), i):
            for msgs in product(*(rule[s] for s in srcs)):
                p = Fraction(1, len(rules) * len(list(combinations(range(k), i))) * c ** i)
                joint.setdefault(frozenset(msgs), []).append((p, rule))
    total = Fraction(0)
    for obs, entries in joint.items():
        total += max(sum(p for p, rule in entries if any(m in img for img in rule))
                     for m in range(v) if m not in obs)
    return total


def test_any_model_matches_its_oracle(code10):
    for i in (0, 1, 2):
        rep = evaluate_deception(code10, i, model="any")
        assert rep.model == "any"
        assert rep.probability == _any_model_oracle(code10.rules, 10, i)
    assert evaluate_deception(code10, 0, model="any").probability == Fraction(3, 5)


def test_guard():
    ac = design_to_acode(example_151_design())
    with pytest.raises(TooLargeForExact):
        evaluate_deception(ac, 2)
    with pytest.raises(TooLargeForExact):
        evaluate_deception(ac, 0, guard={0: 100})
    with pytest.raises(ValueError):
        evaluate_deception(ac, 3)
    with pytest.raises(ValueError):
        evaluate_deception(ac, 0, model="bogus")


def test_report_describe():
    rep = DeceptionReport(1, Fraction(4, 9), Fraction(4, 9))
    assert rep.tight and "4/9" in rep.describe() and "tight" in rep.describe()
    assert not DeceptionReport(2, Fraction(1, 2), Fraction(1, 4)).tight


def test_json_and_csv_round_trip(code10):
    assert ACode.loads(code10.dumps()) == code10
    text = code10.to_csv()
    lines = text.strip().split("\n")
    assert len(lines) == 15 and all(len(line.split(",")) == 3 for line in lines)
    assert ACode.from_csv(text, 10) == code10


@st.composite
def random_codes(draw):
    k = draw(st.integers(1, 3))
    c = draw(st.integers(1, 2))
    v = draw(st.integers(k * c, 7))
    rules = []
    for _ in range(draw(st.integers(1, 4))):
        pts = draw(st.permutations(range(v)))[: k * c]
        rules.append([pts[j * c:(j + 1) * c] for j in range(k)])
    return ACode(v, rules), draw(st.integers(0, k - 1))


@settings(max_examples=80, deadline=None)
@given(random_codes())
def test_deception_matches_oracle_on_random_codes(case):
    ac, i = case
    rep = evaluate_deception(ac, i)
    assert rep.probability == oracles.deception(ac.rules, ac.messages, i)
