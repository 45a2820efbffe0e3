"""Domain types shared by every stage of the pipeline."""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import Iterable


class SysNetError(Exception):
    """Base class for data and format errors raised by this package."""


class InvalidRuleError(SysNetError, ValueError):
    pass


class ThresholdError(SysNetError, ValueError):
    pass


class FormatError(SysNetError, ValueError):
    """A file does not conform to its line format."""

    def __init__(self, message: str, path=None, line_no: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}"
            if line_no is not None:
                where += f":{line_no}"
            where += ": "
        elif line_no is not None:
            where = f"line {line_no}: "
        super().__init__(where + message)
        self.path = path
        self.line_no = line_no


def format_decimal(value, places: int = 2) -> str:
    """Render an exact number with ``places`` decimals, rounding half up."""
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = 50
        dec = Decimal(value.numerator) / Decimal(value.denominator)
        quantum = Decimal(1).scaleb(-places)
        return str(dec.quantize(quantum, rounding=ROUND_HALF_UP))


def format_threshold(value) -> str:
    """Shortest decimal form of a threshold fraction, e.g. ``0.6``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    dec = Decimal(value.numerator) / Decimal(value.denominator)
    return format(dec.normalize(), "f")


def parse_fraction(text) -> Fraction:
    """Parse a decimal or ``a/b`` string exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        # floats come from user code; go through repr so 0.6 stays 3/5
        text = repr(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ThresholdError(f"not a number: {text!r}") from exc


@dataclass(frozen=True, order=True)
class Rule:
    """A rule ``X -> Y`` in canonical form (both sides ascending, duplicate-free).

    Build rules with :meth:`of` or :func:`canonicalize`; the raw constructor
    only validates.
    """

    antecedent: tuple[int, ...]
    consequent: tuple[int, ...]

    def __post_init__(self):
        for side, name in ((self.antecedent, "antecedent"), (self.consequent, "consequent")):
            if not side:
                raise InvalidRuleError(f"empty {name}")
            if any(a >= b for a, b in zip(side, side[1:])):
                raise InvalidRuleError(f"{name} {side} is not strictly ascending")

    @classmethod
    def of(cls, antecedent: Iterable[int], consequent: Iterable[int]) -> "Rule":
        return cls(tuple(sorted(set(antecedent))), tuple(sorted(set(consequent))))

    @property
    def size(self) -> int:
        return len(self.antecedent) + len(self.consequent)

    def sort_key(self):
        return (self.size, self.antecedent, self.consequent)

    def to_text(self) -> str:
        left = " ".join(map(str, self.antecedent))
        right = " ".join(map(str, self.consequent))
        return f"{left} -> {right}"

    def __str__(self) -> str:
        return "{%s} -> {%s}" % (
            ", ".join(map(str, self.antecedent)),
            ", ".join(map(str, self.consequent)),
        )


def canonicalize(rule) -> Rule:
    """Return the canonical form of ``rule``.

    Accepts a :class:`Rule` or any ``(X, Y)`` pair of integer iterables.
    """
    if isinstance(rule, Rule):
        antecedent, consequent = rule.antecedent, rule.consequent
    else:
        antecedent, consequent = rule
    return Rule.of(antecedent, consequent)


@dataclass(frozen=True)
class ConnectionPair:
    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))
        if not self.left or not self.right:
            raise FormatError("connection pair needs non-empty left and right sides")
        for entity in self.left | self.right:
            if not isinstance(entity, int) or isinstance(entity, bool) or entity < 1:
                raise FormatError(f"entity id must be a positive integer, got {entity!r}")


@dataclass(frozen=True)
class SysNetDb:
    """Connection pairs of one state, in ID form."""

    label: str
    pairs: tuple[ConnectionPair, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))

    @property
    def M(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def entity_ids(self) -> set[int]:
        ids: set[int] = set()
        for pair in self.pairs:
            ids |= pair.left
            ids |= pair.right
        return ids

    @classmethod
    def from_sets(cls, label: str, pairs) -> "SysNetDb":
        return cls(label, tuple(ConnectionPair(frozenset(l), frozenset(r)) for l, r in pairs))


@dataclass(frozen=True)
class MinedRule:
    """A rule found interesting in one state.

    Counts are kept as integers; support and confidence are exact fractions.
    """

    rule: Rule
    support_count: int
    antecedent_count: int
    n_pairs: int

    @property
    def support(self) -> Fraction:
        return Fraction(self.support_count, self.n_pairs)

    @property
    def confidence(self) -> Fraction:
        return Fraction(self.support_count, self.antecedent_count)

    def to_line(self, places: int = 2) -> str:
        return (
            f"{self.rule.to_text()} #SUP: {self.support_count} "
            f"#CONF: {format_decimal(self.confidence, places)}"
        )


@dataclass(frozen=True)
class Thresholds:
    min_sup_count: int
    min_conf: Fraction
    min_stab_count: int = 1

    def __post_init__(self):
        object.__setattr__(self, "min_conf", parse_fraction(self.min_conf))
        if isinstance(self.min_sup_count, bool) or int(self.min_sup_count) != self.min_sup_count:
            raise ThresholdError(f"min_sup_count must be an integer, got {self.min_sup_count!r}")
        if self.min_sup_count < 1:
            raise ThresholdError(f"min_sup_count must be >= 1, got {self.min_sup_count}")
        if not 0 <= self.min_conf <= 1:
            raise ThresholdError(f"min_conf must lie in [0, 1], got {self.min_conf}")
        if self.min_stab_count < 1:
            raise ThresholdError(f"min_stab_count must be >= 1, got {self.min_stab_count}")

    @property
    def label(self) -> str:
        return f"{self.min_sup_count}-{format_threshold(self.min_conf)}-{self.min_stab_count}"

    def min_stab(self, n_states: int) -> Fraction:
        return Fraction(self.min_stab_count, n_states)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class EvolutionRule:
    """A distinct rule with the states in which it was interesting."""

    rule: Rule
    stability_count: int
    n_states: int
    per_state: dict = field(default_factory=dict, compare=True, hash=False)

    @property
    def stability(self) -> Fraction:
        return Fraction(self.stability_count, self.n_states)

    def to_line(self, places: int = 2) -> str:
        return (
            f"{self.rule.to_text()} #STABCOUNT: {self.stability_count} "
            f"#STAB: {format_decimal(self.stability, places)}"
        )
