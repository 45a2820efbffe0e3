"""Network rule mining on a single SysNetDb.

A rule ``X -> Y`` occurs in a connection pair ``(L, R)`` when ``X`` is a
subset of ``L`` and ``Y`` a subset of ``R``. The search grows rules from
single-item seeds, first on the right side and then on the left, so every
rule is reached along exactly one path. Pair positions are tracked as int
bitmasks; support count is anti-monotone under both expansions and is the
only pruning criterion.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .model import MinedRule, Rule, SysNetDb, SysNetError, Thresholds

BRUTE_FORCE_LIMIT = 20


class UndefinedConfidenceError(SysNetError, ZeroDivisionError):
    pass


@dataclass(frozen=True)
class VerticalIndex:
    """Positions of each entity on the left and right sides of a database."""

    n_pairs: int
    left_tids: dict
    right_tids: dict

    @classmethod
    def build(cls, db: SysNetDb) -> "VerticalIndex":
        left: dict[int, set[int]] = {}
        right: dict[int, set[int]] = {}
        for pos, pair in enumerate(db.pairs):
            for entity in pair.left:
                left.setdefault(entity, set()).add(pos)
            for entity in pair.right:
                right.setdefault(entity, set()).add(pos)
        return cls(
            db.M,
            {k: frozenset(v) for k, v in left.items()},
            {k: frozenset(v) for k, v in right.items()},
        )

    def left(self, entity: int) -> frozenset:
        return self.left_tids.get(entity, frozenset())

    def right(self, entity: int) -> frozenset:
        return self.right_tids.get(entity, frozenset())


def _mask(positions: Iterable[int]) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


def support_count(db: SysNetDb, rule: Rule) -> int:
    x, y = set(rule.antecedent), set(rule.consequent)
    return sum(1 for pair in db.pairs if x <= pair.left and y <= pair.right)


def antecedent_count(db: SysNetDb, antecedent) -> int:
    x = set(antecedent)
    if not x:
        raise ValueError("antecedent must be non-empty")
    return sum(1 for pair in db.pairs if x <= pair.left)


def confidence(db: SysNetDb, rule: Rule) -> Fraction:
    denominator = antecedent_count(db, rule.antecedent)
    if denominator == 0:
        raise UndefinedConfidenceError(f"antecedent of {rule} never occurs")
    return Fraction(support_count(db, rule), denominator)


def _interesting(sup: int, ant: int, t: Thresholds) -> bool:
    # exact test of sup/ant >= min_conf
    return sup >= t.min_sup_count and sup * t.min_conf.denominator >= t.min_conf.numerator * ant


def _caps(max_antecedent, max_consequent):
    max_a = max_antecedent if max_antecedent is not None else float("inf")
    max_c = max_consequent if max_consequent is not None else float("inf")
    if max_a < 1 or max_c < 1:
        raise ValueError("rule size caps must be >= 1")
    return max_a, max_c


def mine_state(
    db: SysNetDb,
    t: Thresholds,
    max_antecedent: int | None = None,
    max_consequent: int | None = None,
) -> list[MinedRule]:
    """All interesting rules of ``db``, sorted by (size, antecedent, consequent)."""
    max_a, max_c = _caps(max_antecedent, max_consequent)
    if db.M == 0:
        return []
    index = VerticalIndex.build(db)
    minsup = t.min_sup_count
    left = {e: _mask(p) for e, p in index.left_tids.items() if len(p) >= minsup}
    right = {e: _mask(p) for e, p in index.right_tids.items() if len(p) >= minsup}
    left_items = sorted(left)
    right_items = sorted(right)
    found: list[MinedRule] = []

    def grow(x, x_mask, y, tids, right_open):
        sup = tids.bit_count()
        ant = x_mask.bit_count()
        if _interesting(sup, ant, t):
            found.append(MinedRule(Rule(x, y), sup, ant, db.M))
        if right_open and len(y) < max_c:
            for b in right_items:
                if b <= y[-1]:
                    continue
                grown = tids & right[b]
                if grown.bit_count() >= minsup:
                    grow(x, x_mask, y + (b,), grown, True)
        if len(x) < max_a:
            for a in left_items:
                if a <= x[-1]:
                    continue
                grown = tids & left[a]
                if grown.bit_count() >= minsup:
                    grow(x + (a,), x_mask & left[a], y, grown, False)

    for a in left_items:
        for b in right_items:
            tids = left[a] & right[b]
            if tids.bit_count() >= minsup:
                grow((a,), left[a], (b,), tids, True)

    found.sort(key=lambda m: m.rule.sort_key())
    return found


def _subsets(items, cap):
    limit = len(items) if cap == float("inf") else min(len(items), cap)
    for k in range(1, limit + 1):
        yield from combinations(items, k)


def mine_state_bruteforce(
    db: SysNetDb,
    t: Thresholds,
    max_antecedent: int | None = None,
    max_consequent: int | None = None,
    override: bool = False,
) -> list[MinedRule]:
    """Reference miner: enumerate every candidate rule and test it directly."""
    max_a, max_c = _caps(max_antecedent, max_consequent)
    left_vocab = sorted({e for pair in db.pairs for e in pair.left})
    right_vocab = sorted({e for pair in db.pairs for e in pair.right})
    if not override and max(len(left_vocab), len(right_vocab)) > BRUTE_FORCE_LIMIT:
        raise SysNetError(
            f"brute force limited to {BRUTE_FORCE_LIMIT} ids per side; pass override=True"
        )
    found = []
    for x in _subsets(left_vocab, max_a):
        xs = set(x)
        holders = [pair for pair in db.pairs if xs <= pair.left]
        if len(holders) < t.min_sup_count:
            continue
        for y in _subsets(right_vocab, max_c):
            ys = set(y)
            sup = sum(1 for pair in holders if ys <= pair.right)
            if sup >= t.min_sup_count and Fraction(sup, len(holders)) >= t.min_conf:
                found.append(MinedRule(Rule(x, y), sup, len(holders), db.M))
    found.sort(key=lambda m: m.rule.sort_key())
    return found


def write_rules(rules: Iterable[MinedRule], path, places: int = 2) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for mined in rules:
            fh.write(mined.to_line(places) + "\n")


def rules_filename(i: int) -> str:
    return f"net_Rules_{i}_ID.txt"


RULES_DIR = "netRules"


def write_state_rules(per_state, out_dir, places: int = 2) -> list[Path]:
    rules_dir = Path(out_dir) / RULES_DIR
    rules_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, rules in enumerate(per_state, 1):
        path = rules_dir / rules_filename(i)
        write_rules(rules, path, places)
        paths.append(path)
    return paths
