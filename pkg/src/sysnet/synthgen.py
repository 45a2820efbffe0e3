"""Synthetic state series with planted rules.

Spec file format, one ``key = value`` per line, ``#`` comments allowed::

    n_states = 5
    seed = 7
    noise_pairs = 4          # filler pairs per state
    noise_vocab = 100-119    # inclusive id range used for filler pairs
    plant = 1 2 -> 3 | states = 1,2,4 | copies = 3
    plant = 5 -> 6 7 | states = 1-5 | copies = 2

Each planted rule contributes ``copies`` identical pairs ``(X, Y)`` to every
state it lists. Planted rules may not share ids with each other or with the
noise range, which pins their support count to exactly ``copies``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .model import ConnectionPair, FormatError, Rule, SysNetDb, SysNetError
from .preprocess import EntityIndex


class PlantSpecError(SysNetError, ValueError):
    pass


@dataclass(frozen=True)
class PlantedRule:
    rule: Rule
    states: frozenset
    copies: int

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))


@dataclass(frozen=True)
class PlantSpec:
    n_states: int
    planted: tuple = ()
    noise_pairs: int = 0
    noise_vocab: tuple = ()
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "planted", tuple(self.planted))
        object.__setattr__(self, "noise_vocab", tuple(sorted(set(self.noise_vocab))))

    def planted_vocab(self) -> set[int]:
        return {e for p in self.planted for e in p.rule.antecedent + p.rule.consequent}

    def validate(self) -> None:
        if self.n_states < 1:
            raise PlantSpecError("n_states must be >= 1")
        if self.noise_pairs < 0:
            raise PlantSpecError("noise_pairs must be >= 0")
        if self.noise_pairs and not self.noise_vocab:
            raise PlantSpecError("noise_pairs > 0 needs a noise vocabulary")
        if any(e < 1 for e in self.noise_vocab):
            raise PlantSpecError("entity ids must be >= 1")
        used: set[int] = set()
        for p in self.planted:
            ids = set(p.rule.antecedent + p.rule.consequent)
            if ids & used:
                raise PlantSpecError(f"planted rule {p.rule} shares ids with another planted rule")
            used |= ids
            if p.copies < 1:
                raise PlantSpecError(f"copies must be >= 1 for {p.rule}")
            if not p.states or not all(1 <= s <= self.n_states for s in p.states):
                raise PlantSpecError(f"states of {p.rule} must be a non-empty subset of 1..{self.n_states}")
        overlap = used & set(self.noise_vocab)
        if overlap:
            raise PlantSpecError(f"planted and noise vocabularies overlap: {sorted(overlap)}")


def generate(spec: PlantSpec) -> list[SysNetDb]:
    spec.validate()
    dbs = []
    for state in range(1, spec.n_states + 1):
        pairs = []
        for p in spec.planted:
            if state in p.states:
                pair = ConnectionPair(frozenset(p.rule.antecedent), frozenset(p.rule.consequent))
                pairs.extend([pair] * p.copies)
        rng = random.Random(spec.seed * 1_000_003 + state)
        for _ in range(spec.noise_pairs):
            source = rng.choice(spec.noise_vocab)
            target = rng.choice(spec.noise_vocab)
            pairs.append(ConnectionPair(frozenset((source,)), frozenset((target,))))
        dbs.append(SysNetDb(f"S{state}", tuple(pairs)))
    return dbs


def synthetic_index(dbs) -> EntityIndex:
    """Dense index ``1..max_id`` with names ``e<id>``."""
    top = max((max(db.entity_ids()) for db in dbs if db.pairs), default=0)
    return EntityIndex.from_names(f"e{i}" for i in range(1, top + 1))


def _int_set(text: str, line_no: int) -> set[int]:
    out: set[int] = set()
    for part in text.replace(",", " ").split():
        lo, sep, hi = part.partition("-")
        try:
            if sep:
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(part))
        except ValueError:
            raise FormatError(f"bad integer list {text!r}", None, line_no) from None
    return out


def _parse_plant(value: str, line_no: int) -> PlantedRule:
    fields = [f.strip() for f in value.split("|")]
    sides = fields[0].split("->")
    if len(sides) != 2:
        raise FormatError("plant needs 'X -> Y'", None, line_no)
    try:
        rule = Rule.of(map(int, sides[0].split()), map(int, sides[1].split()))
    except ValueError as exc:
        raise FormatError(f"bad planted rule: {exc}", None, line_no) from None
    opts = {}
    for f in fields[1:]:
        key, sep, val = f.partition("=")
        if not sep:
            raise FormatError(f"expected key=value, got {f!r}", None, line_no)
        opts[key.strip()] = val.strip()
    if set(opts) != {"states", "copies"}:
        raise FormatError("plant needs 'states' and 'copies'", None, line_no)
    try:
        copies = int(opts["copies"])
    except ValueError:
        raise FormatError(f"bad copies {opts['copies']!r}", None, line_no) from None
    return PlantedRule(rule, frozenset(_int_set(opts["states"], line_no)), copies)


def parse_spec(text: str) -> PlantSpec:
    values: dict[str, str] = {}
    planted = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"expected key = value, got {line!r}", None, line_no)
        key, value = key.strip(), value.strip()
        if key == "plant":
            planted.append(_parse_plant(value, line_no))
        elif key in ("n_states", "seed", "noise_pairs", "noise_vocab"):
            if key in values:
                raise FormatError(f"duplicate key {key!r}", None, line_no)
            values[key] = value
        else:
            raise FormatError(f"unknown key {key!r}", None, line_no)
    if "n_states" not in values:
        raise PlantSpecError("spec needs n_states")
    try:
        spec = PlantSpec(
            n_states=int(values["n_states"]),
            planted=tuple(planted),
            noise_pairs=int(values.get("noise_pairs", 0)),
            noise_vocab=tuple(_int_set(values.get("noise_vocab", ""), 0)),
            seed=int(values.get("seed", 0)),
        )
    except ValueError as exc:
        raise PlantSpecError(str(exc)) from None
    spec.validate()
    return spec


def format_spec(spec: PlantSpec) -> str:
    lines = [f"n_states = {spec.n_states}", f"seed = {spec.seed}", f"noise_pairs = {spec.noise_pairs}"]
    if spec.noise_vocab:
        lines.append("noise_vocab = " + ",".join(map(str, spec.noise_vocab)))
    for p in spec.planted:
        states = ",".join(map(str, sorted(p.states)))
        lines.append(f"plant = {p.rule.to_text()} | states = {states} | copies = {p.copies}")
    return "\n".join(lines) + "\n"


def read_spec(path) -> PlantSpec:
    return parse_spec(Path(path).read_text(encoding="utf-8"))


def random_spec(rng: random.Random, n_states: int | None = None, max_rules: int = 4,
                min_copies: int = 1, max_copies: int = 5, noise_pairs: int | None = None) -> PlantSpec:
    """A random valid spec with disjoint vocabularies (used by tests and demos)."""
    n = n_states or rng.randint(2, 8)
    next_id = 1
    planted = []
    for _ in range(rng.randint(1, max_rules)):
        a = rng.randint(1, 3)
        c = rng.randint(1, 3)
        x = list(range(next_id, next_id + a))
        y = list(range(next_id + a, next_id + a + c))
        next_id += a + c
        states = frozenset(s for s in range(1, n + 1) if rng.random() < 0.6) or frozenset({rng.randint(1, n)})
        planted.append(PlantedRule(Rule.of(x, y), states, rng.randint(min_copies, max_copies)))
    noise = rng.randint(0, 10) if noise_pairs is None else noise_pairs
    vocab = tuple(range(next_id + 10, next_id + 10 + rng.randint(3, 12)))
    return PlantSpec(n, tuple(planted), noise, vocab if noise else (), rng.randrange(2**31))


__all__ = [
    "PlantSpec", "PlantSpecError", "PlantedRule", "format_spec", "generate", "parse_spec",
    "random_spec", "read_spec", "synthetic_index",
]
