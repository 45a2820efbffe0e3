import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sysnet.evolution import (
    NewState,
    SnpReport,
    classify_new_state,
    filter_sners,
    merge,
    read_snp_csv,
    reports_to_csv,
    snp_fraction,
    snp_metric,
    write_snp_csv,
)
from sysnet.model import MinedRule, Rule, ThresholdError, Thresholds

R1, R2, R3 = Rule((1,), (2,)), Rule((1,), (3,)), Rule((4,), (5,))


def mined(rule, sup=2, ant=2, m=4):
    return MinedRule(rule, sup, ant, m)


def three_state_lists():
    return [[mined(R1), mined(R2)], [mined(R1, 3, 4)], [mined(R3)]]


def test_merge_counts_states():
    ers = merge(three_state_lists())
    assert ers.ner_count == 3
    assert {r: er.stability_count for r, er in ers.rules.items()} == {R1: 2, R2: 1, R3: 1}
    assert ers.rules[R1].stability == Fraction(2, 3)
    assert ers.rules[R1].per_state == {"1": (2, 1), "2": (3, Fraction(3, 4))}


def test_constant_and_volatile_series():
    same = [[mined(R1), mined(R2)]] * 4
    assert all(er.stability == 1 for er in merge(same))
    disjoint = [[mined(R1)], [mined(R2)], [mined(R3)]]
    assert all(er.stability == Fraction(1, 3) for er in merge(disjoint))


def test_merge_rejects_duplicate_rule_in_one_state():
    with pytest.raises(ValueError):
        merge([[mined(R1), mined(R1)]])


def test_merge_is_order_independent():
    lists = three_state_lists()
    labels = ["a", "b", "c"]
    reference = merge(lists, labels)
    for perm in itertools.permutations(range(3)):
        assert merge([lists[i] for i in perm], [labels[i] for i in perm]) == reference


def test_filter_sners():
    ers = merge(three_state_lists())
    assert [er.rule for er in filter_sners(ers, 2)] == [R1]
    assert len(filter_sners(ers, 1)) == ers.ner_count
    assert filter_sners(merge([[mined(R1)], [mined(R2)], [mined(R3)]]), 2) == []


def test_filter_orders_by_stability_then_rule():
    lists = [[mined(R3), mined(R2)], [mined(R3)], [mined(R1), mined(R2)]]
    assert [er.rule for er in filter_sners(merge(lists), 1)] == [R2, R3, R1]


@pytest.mark.parametrize("stab", [0, 4])
def test_filter_rejects_out_of_range(stab):
    with pytest.raises(ThresholdError):
        filter_sners(merge(three_state_lists()), stab)


@pytest.mark.parametrize("args, expected", [
    ((2, 3, 5, 11), 30.30),     # worked example in the text
    ((5, 15, 2, 2), 33.33),     # Hadoop-HDFS, 4-0.6-5
    ((6, 15, 0, 2), 0.0),       # Hadoop-HDFS, zero SNERs
    ((2, 13, 25, 131), 2.94),   # Retail market, 4-0.6-2
])
def test_snp_reported_values(args, expected):
    assert snp_metric(*args) == pytest.approx(expected, abs=0.005)


def test_snp_closed_form():
    assert snp_fraction(2, 3, 5, 11) == Fraction(1000, 33)
    assert snp_metric(3, 3, 4, 4) == 100.0
    assert snp_metric(1, 3, 0, 0) == 0.0


def test_snp_rejects_inconsistent_counts():
    with pytest.raises(ValueError):
        snp_metric(1, 3, 5, 4)
    with pytest.raises(ThresholdError):
        snp_metric(4, 3, 1, 1)


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.integers(1, n), st.just(n))),
       st.integers(0, 50).flatmap(lambda ner: st.tuples(st.integers(0, ner), st.just(ner))))
def test_snp_bounds(stab_n, sner_ner):
    stab, n = stab_n
    sner, ner = sner_ner
    value = snp_fraction(stab, n, sner, ner)
    assert 0 <= value <= 100
    assert (value == 100) == (stab == n and sner == ner > 0)
    assert (value == 0) == (sner == 0 or ner == 0)


rule_ids = st.tuples(st.integers(1, 4), st.integers(1, 4)).map(lambda ab: Rule((ab[0],), (ab[1],)))
state_lists = st.lists(st.lists(rule_ids, unique=True, max_size=8), min_size=1, max_size=6)


@settings(max_examples=200)
@given(state_lists)
def test_sners_shrink_as_min_stab_rises(lists):
    ers = merge([[mined(r) for r in rules] for rules in lists])
    counts = [len(filter_sners(ers, k)) for k in range(1, ers.n_states + 1)]
    assert counts == sorted(counts, reverse=True)
    assert counts[0] == ers.ner_count
    ner_rules = set(ers.rules)
    for k in range(1, ers.n_states + 1):
        assert {er.rule for er in filter_sners(ers, k)} <= ner_rules


@settings(max_examples=100)
@given(state_lists, st.randoms())
def test_merge_order_independence_property(lists, rnd):
    labelled = [(str(i), [mined(r) for r in rules]) for i, rules in enumerate(lists)]
    shuffled = labelled[:]
    rnd.shuffle(shuffled)
    a = merge([l for _, l in labelled], [k for k, _ in labelled])
    b = merge([l for _, l in shuffled], [k for k, _ in shuffled])
    assert a == b


@pytest.mark.parametrize("before, after, verdict", [
    (30.30, 30.30, NewState.SIMILAR_STATE),
    (20.0, 33.33, NewState.MORE_STABLE_SERIES),
    (33.33, 20.0, NewState.LESS_STABLE_SERIES),
    (30.0, 30.4, NewState.SIMILAR_STATE),
])
def test_classify_new_state(before, after, verdict):
    result = classify_new_state(before, after, 0.5)
    assert result is verdict
    assert result.message


def test_classify_rejects_bad_metric():
    with pytest.raises(ValueError):
        classify_new_state(120, 30, 0.5)


def test_report_row_and_csv_round_trip(tmp_path):
    report = SnpReport(Thresholds(2, "0.5", 2), 3, ner_count=11, sner_count=5)
    assert report.row() == ["2", "0.5", "2", "3", "0.67", "5", "11", "0.455", "30.30"]
    write_snp_csv(report, tmp_path / "snp.csv")
    assert (tmp_path / "snp.csv").read_text().splitlines()[0] == (
        "minSupCount,minConf,minStabCount,N,minStab,SNER_count,NER_count,SNER_fraction,SNP"
    )
    assert read_snp_csv(tmp_path / "snp.csv") == [report]


def test_empty_ner_set_gives_zero():
    report = SnpReport(Thresholds(1, 0, 1), 2, 0, 0)
    assert report.snp == 0 and report.row()[-1] == "0.00"
    assert reports_to_csv([report]).count("\n") == 2
