from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sysnet.miner import (
    UndefinedConfidenceError,
    VerticalIndex,
    antecedent_count,
    confidence,
    mine_state,
    mine_state_bruteforce,
    write_rules,
)
from sysnet.model import MinedRule, Rule, SysNetDb, SysNetError, Thresholds

from conftest import small_dbs

DB3 = SysNetDb.from_sets("s", [({1}, {2}), ({1}, {2}), ({1}, {3})])


def as_set(rules):
    return {(m.rule, m.support_count, m.confidence) for m in rules}


def test_support_count_hand_enumeration():
    from sysnet.miner import support_count
    assert support_count(DB3, Rule((1,), (2,))) == 2
    assert support_count(SysNetDb("e"), Rule((1,), (2,))) == 0
    one = SysNetDb.from_sets("s", [({1, 3}, {2})])
    assert support_count(one, Rule((1, 3), (2,))) == 1
    assert support_count(one, Rule((1,), (3,))) == 0


def test_antecedent_count():
    db = SysNetDb.from_sets("s", [({1}, {2}), ({1}, {3})])
    assert antecedent_count(db, {1}) == 2
    assert antecedent_count(db, {7}) == 0
    assert antecedent_count(SysNetDb.from_sets("s", [({4, 5}, {1})]), {4, 5}) == 1


def test_confidence():
    db = SysNetDb.from_sets("s", [({1}, {2}), ({1}, {2})])
    assert confidence(db, Rule((1,), (2,))) == 1
    db = SysNetDb.from_sets("s", [({1}, {2}), ({1}, {3})])
    assert confidence(db, Rule((1,), (2,))) == Fraction(1, 2)
    with pytest.raises(UndefinedConfidenceError):
        confidence(db, Rule((9,), (2,)))


def test_vertical_index_positions():
    vi = VerticalIndex.build(DB3)
    assert vi.left(1) == {0, 1, 2}
    assert vi.right(2) == {0, 1}
    assert vi.right(1) == frozenset()


def test_single_pair():
    db = SysNetDb.from_sets("s", [({1}, {2})])
    assert mine_state(db, Thresholds(1, "0.5")) == [MinedRule(Rule((1,), (2,)), 1, 1, 1)]


def test_three_pair_example_matches_enumeration():
    expected = {(Rule((1,), (2,)), 2, Fraction(2, 3))}
    assert as_set(mine_state(DB3, Thresholds(2, "0.5"))) == expected
    assert as_set(mine_state_bruteforce(DB3, Thresholds(2, "0.5"))) == expected


def test_min_sup_above_m_is_empty():
    assert mine_state(DB3, Thresholds(DB3.M + 1, 0)) == []


def test_empty_db():
    assert mine_state(SysNetDb("e"), Thresholds(1, 0)) == []
    assert mine_state_bruteforce(SysNetDb("e"), Thresholds(1, 0)) == []


def test_same_id_on_both_sides_is_a_legal_rule():
    db = SysNetDb.from_sets("s", [({1}, {1}), ({1, 2}, {1})])
    rules = {m.rule for m in mine_state(db, Thresholds(2, 1))}
    assert Rule((1,), (1,)) in rules


def test_output_order_and_no_duplicates():
    db = SysNetDb.from_sets("s", [({1, 2}, {3, 4})] * 2 + [({1}, {3})])
    rules = mine_state(db, Thresholds(1, 0))
    keys = [m.rule.sort_key() for m in rules]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert len(rules) == 9  # 3 antecedents x 3 consequents


def test_confidence_does_not_prune_expansions():
    # {1}->{2} has confidence 1/2, its extension {1,3}->{2} has confidence 1
    db = SysNetDb.from_sets("s", [({1, 3}, {2}), ({1, 3}, {2}), ({1}, {5}), ({1}, {5})])
    rules = {m.rule for m in mine_state(db, Thresholds(2, "0.9"))}
    assert Rule((1, 3), (2,)) in rules
    assert Rule((1,), (2,)) not in rules


def test_caps_limit_rule_sizes():
    db = SysNetDb.from_sets("s", [({1, 2, 3}, {4, 5, 6})] * 2)
    capped = mine_state(db, Thresholds(1, 0), max_antecedent=1, max_consequent=2)
    assert capped and all(len(m.rule.antecedent) == 1 and len(m.rule.consequent) <= 2 for m in capped)
    assert as_set(capped) == as_set(mine_state_bruteforce(db, Thresholds(1, 0), 1, 2))


def test_bruteforce_guard():
    db = SysNetDb.from_sets("s", [(set(range(1, 23)), {1})])
    with pytest.raises(SysNetError):
        mine_state_bruteforce(db, Thresholds(1, 0))


def test_rules_file_line(tmp_path):
    write_rules(mine_state(DB3, Thresholds(2, "0.5")), tmp_path / "r.txt")
    assert (tmp_path / "r.txt").read_text() == "1 -> 2 #SUP: 2 #CONF: 0.67\n"


thresholds = st.builds(
    Thresholds,
    st.integers(1, 4),
    st.fractions(0, 1, max_denominator=10),
)


@settings(max_examples=300, deadline=None)
@given(small_dbs(), thresholds)
def test_oracle_equivalence(db, t):
    assert as_set(mine_state(db, t)) == as_set(mine_state_bruteforce(db, t))


@settings(max_examples=100, deadline=None)
@given(small_dbs(), thresholds)
def test_emitted_rules_meet_thresholds(db, t):
    from sysnet.miner import support_count
    for m in mine_state(db, t):
        assert m.support_count == support_count(db, m.rule) >= t.min_sup_count
        assert m.confidence == confidence(db, m.rule) >= t.min_conf
        assert 0 <= m.support <= m.confidence <= 1


@settings(max_examples=100, deadline=None)
@given(small_dbs(), st.integers(1, 6), st.integers(1, 6))
def test_support_is_anti_monotone(db, a, b):
    from sysnet.miner import support_count
    for m in mine_state(db, Thresholds(1, 0)):
        x, y = m.rule.antecedent, m.rule.consequent
        assert support_count(db, Rule.of(x + (a,), y)) <= m.support_count
        assert support_count(db, Rule.of(x, y + (b,))) <= m.support_count


@settings(max_examples=100, deadline=None)
@given(small_dbs(), thresholds, st.integers(0, 2), st.fractions(0, 1, max_denominator=10))
def test_raising_thresholds_never_adds_rules(db, t, extra_sup, extra_conf):
    raised = Thresholds(t.min_sup_count + extra_sup, min(1, t.min_conf + extra_conf))
    assert as_set(mine_state(db, raised)) <= as_set(mine_state(db, t))
