"""Evolution rules across a state series, stable rules and the SNP metric."""
from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .model import (
    EvolutionRule,
    FormatError,
    MinedRule,
    Rule,
    ThresholdError,
    Thresholds,
    format_decimal,
    format_threshold,
    parse_fraction,
)

NERS_ID = "NERs_ID.txt"
SNERS_ID = "SNERs_ID.txt"
SNP_CSV = "snp.csv"

CSV_COLUMNS = (
    "minSupCount", "minConf", "minStabCount", "N", "minStab",
    "SNER_count", "NER_count", "SNER_fraction", "SNP",
)


@dataclass(frozen=True)
class EvolutionRuleSet:
    n_states: int
    rules: dict = field(default_factory=dict)

    @property
    def ner_count(self) -> int:
        return len(self.rules)

    def ordered(self) -> list[EvolutionRule]:
        return sorted(self.rules.values(), key=_stability_order)

    def __iter__(self):
        return iter(self.ordered())

    def __len__(self) -> int:
        return len(self.rules)


def _stability_order(er: EvolutionRule):
    return (-er.stability_count, er.rule.sort_key())


def merge(
    per_state_rules: Sequence[Iterable[MinedRule]],
    labels: Sequence[str] | None = None,
) -> EvolutionRuleSet:
    """Fold per-state rule lists into distinct rules with their stability counts."""
    n = len(per_state_rules)
    if n < 1:
        raise ValueError("merge needs at least one state")
    if labels is None:
        labels = [str(i) for i in range(1, n + 1)]
    if len(labels) != n or len(set(labels)) != n:
        raise ValueError("labels must be distinct, one per state")
    seen: dict[Rule, dict] = {}
    for label, rules in zip(labels, per_state_rules):
        for mined in rules:
            per_state = seen.setdefault(mined.rule, {})
            if label in per_state:
                raise ValueError(f"rule {mined.rule} listed twice for state {label}")
            per_state[label] = (mined.support_count, mined.confidence)
    merged = {
        rule: EvolutionRule(rule, len(per_state), n, per_state)
        for rule, per_state in seen.items()
    }
    return EvolutionRuleSet(n, merged)


def _check_stab(min_stab_count: int, n_states: int) -> None:
    if not 1 <= min_stab_count <= n_states:
        raise ThresholdError(
            f"min_stab_count must lie in 1..{n_states}, got {min_stab_count}"
        )


def filter_sners(ers: EvolutionRuleSet, min_stab_count: int) -> list[EvolutionRule]:
    """Rules interesting in at least ``min_stab_count`` states."""
    _check_stab(min_stab_count, ers.n_states)
    return [er for er in ers.ordered() if er.stability_count >= min_stab_count]


def snp_fraction(min_stab_count: int, n_states: int, sner_count: int, ner_count: int) -> Fraction:
    _check_stab(min_stab_count, n_states)
    if not 0 <= sner_count <= ner_count:
        raise ValueError(f"need 0 <= sner_count <= ner_count, got {sner_count} > {ner_count}")
    if ner_count == 0:
        return Fraction(0)
    return Fraction(min_stab_count, n_states) * Fraction(sner_count, ner_count) * 100


def snp_metric(min_stab_count: int, n_states: int, sner_count: int, ner_count: int) -> float:
    """System network persistence: minStab x (SNERs / NERs) x 100, in [0, 100]."""
    return float(snp_fraction(min_stab_count, n_states, sner_count, ner_count))


class NewState(enum.Enum):
    MORE_STABLE_SERIES = "MoreStableSeries"
    LESS_STABLE_SERIES = "LessStableSeries"
    SIMILAR_STATE = "SimilarState"

    @property
    def message(self) -> str:
        return _MESSAGES[self]


_MESSAGES = {
    NewState.MORE_STABLE_SERIES:
        "persistence rose with the new state: significant changes went into constructing it",
    NewState.LESS_STABLE_SERIES:
        "persistence fell with the new state: it changed little compared with the earlier states",
    NewState.SIMILAR_STATE:
        "persistence is unchanged within tolerance: the new state resembles the earlier states",
}


def classify_new_state(pm_n: float, pm_n_plus_1: float, tol: float = 0.5) -> NewState:
    """Compare the persistence metric before and after appending a state."""
    for value in (pm_n, pm_n_plus_1):
        if not 0 <= value <= 100:
            raise ValueError(f"persistence metric must lie in [0, 100], got {value}")
    if tol < 0:
        raise ValueError("tol must be >= 0")
    delta = pm_n_plus_1 - pm_n
    if abs(delta) <= tol:
        return NewState.SIMILAR_STATE
    return NewState.MORE_STABLE_SERIES if delta > 0 else NewState.LESS_STABLE_SERIES


@dataclass(frozen=True)
class SnpReport:
    thresholds: Thresholds
    n_states: int
    ner_count: int
    sner_count: int

    def __post_init__(self):
        _check_stab(self.thresholds.min_stab_count, self.n_states)
        if not 0 <= self.sner_count <= self.ner_count:
            raise ValueError("sner_count must lie in 0..ner_count")

    @classmethod
    def from_rules(cls, thresholds: Thresholds, ers: EvolutionRuleSet, sners) -> "SnpReport":
        return cls(thresholds, ers.n_states, ers.ner_count, len(sners))

    @property
    def min_stab(self) -> Fraction:
        return self.thresholds.min_stab(self.n_states)

    @property
    def sner_fraction(self) -> Fraction:
        if self.ner_count == 0:
            return Fraction(0)
        return Fraction(self.sner_count, self.ner_count)

    @property
    def snp_exact(self) -> Fraction:
        return snp_fraction(self.thresholds.min_stab_count, self.n_states,
                            self.sner_count, self.ner_count)

    @property
    def snp(self) -> float:
        return float(self.snp_exact)

    def row(self) -> list[str]:
        t = self.thresholds
        return [
            str(t.min_sup_count),
            format_threshold(t.min_conf),
            str(t.min_stab_count),
            str(self.n_states),
            format_decimal(self.min_stab, 2),
            str(self.sner_count),
            str(self.ner_count),
            format_decimal(self.sner_fraction, 3),
            format_decimal(self.snp_exact, 2),
        ]


def reports_to_csv(reports: Iterable[SnpReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        writer.writerow(report.row())
    return buf.getvalue()


def write_snp_csv(reports, path) -> None:
    if isinstance(reports, SnpReport):
        reports = [reports]
    Path(path).write_text(reports_to_csv(reports), encoding="utf-8")


def read_snp_csv(path) -> list[SnpReport]:
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise FormatError(f"unexpected header {reader.fieldnames}", path, 1)
        reports = []
        for line_no, row in enumerate(reader, 2):
            try:
                t = Thresholds(int(row["minSupCount"]), parse_fraction(row["minConf"]),
                               int(row["minStabCount"]))
                reports.append(SnpReport(t, int(row["N"]), int(row["NER_count"]),
                                         int(row["SNER_count"])))
            except (ValueError, TypeError) as exc:
                raise FormatError(str(exc), path, line_no) from None
    return reports


def write_evolution_rules(rules: Iterable[EvolutionRule], path, places: int = 2) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for er in rules:
            fh.write(er.to_line(places) + "\n")
