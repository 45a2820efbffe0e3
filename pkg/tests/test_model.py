from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sysnet.model import (
    ConnectionPair,
    FormatError,
    InvalidRuleError,
    MinedRule,
    Rule,
    ThresholdError,
    Thresholds,
    canonicalize,
    format_decimal,
    format_threshold,
)

id_sets = st.frozensets(st.integers(1, 50), min_size=1, max_size=6)


def test_canonicalize_sorts_both_sides():
    assert canonicalize(({3, 1}, {2})) == Rule((1, 3), (2,))


def test_canonicalize_keeps_canonical_rule():
    assert canonicalize(Rule((1,), (2,))) == Rule((1,), (2,))


@pytest.mark.parametrize("x, y", [(set(), {2}), ({1}, set())])
def test_empty_side_is_rejected(x, y):
    with pytest.raises(InvalidRuleError):
        canonicalize((x, y))


def test_raw_constructor_rejects_unsorted():
    with pytest.raises(InvalidRuleError):
        Rule((3, 1), (2,))


@given(id_sets, id_sets)
def test_canonicalize_is_idempotent(x, y):
    once = canonicalize((list(x)[::-1], list(y)))
    assert canonicalize(once) == once


@given(id_sets, id_sets, st.randoms())
def test_equal_rules_hash_equal(x, y, rnd):
    xs, ys = list(x), list(y)
    rnd.shuffle(xs)
    rnd.shuffle(ys)
    a, b = Rule.of(x, y), Rule.of(xs, ys)
    assert a == b and hash(a) == hash(b)


def test_connection_pair_needs_both_sides():
    with pytest.raises(FormatError):
        ConnectionPair(frozenset(), frozenset({1}))


def test_connection_pair_allows_shared_id():
    pair = ConnectionPair({1, 2}, {1})
    assert pair.left & pair.right == {1}


def test_mined_rule_fractions():
    m = MinedRule(Rule((1,), (2,)), support_count=2, antecedent_count=3, n_pairs=4)
    assert m.support == Fraction(1, 2)
    assert m.confidence == Fraction(2, 3)
    assert m.to_line() == "1 -> 2 #SUP: 2 #CONF: 0.67"


def test_thresholds_label_matches_table_layout():
    assert Thresholds(4, "0.6", 5).label == "4-0.6-5"
    assert Thresholds(3, Fraction(1, 5), 2).label == "3-0.2-2"


def test_thresholds_keep_decimal_conf_exact():
    assert Thresholds(1, 0.6).min_conf == Fraction(3, 5)


@pytest.mark.parametrize("args", [(0, "0.5", 1), (1, "1.2", 1), (1, "0.5", 0), (1, "x", 1)])
def test_thresholds_reject_out_of_range(args):
    with pytest.raises(ThresholdError):
        Thresholds(*args)


@pytest.mark.parametrize("value, places, text", [
    (Fraction(1000, 33), 2, "30.30"),
    (Fraction(2, 3), 2, "0.67"),
    (Fraction(1, 8), 2, "0.13"),
    (Fraction(0), 2, "0.00"),
    (100, 2, "100.00"),
    (Fraction(5, 11), 3, "0.455"),
])
def test_format_decimal(value, places, text):
    assert format_decimal(value, places) == text


def test_format_threshold():
    assert format_threshold(Fraction(1, 2)) == "0.5"
    assert format_threshold(Fraction(1)) == "1"
    assert format_threshold(Fraction(0)) == "0"
