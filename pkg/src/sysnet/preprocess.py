"""Snapshot ingestion and integer encoding of a state series.

Two input layouts are supported. An edge file holds one directed edge per
line (``source<TAB>target``); pairs are then formed per source node. A pair
file already lists connection pairs as ``a b -> x y``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .model import ConnectionPair, FormatError, SysNetDb, SysNetError

ARROW = "->"
LEFT_END = "-1"
RIGHT_END = "-2"

NamedPair = tuple[tuple[str, ...], tuple[str, ...]]


class Grouping(str, enum.Enum):
    PER_SOURCE = "per-source"
    PAIRS = "pairs"


def _content_lines(path: Path):
    """Yield ``(line_no, stripped_line)`` skipping blanks and ``#`` comments."""
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield line_no, line


def _check_name(name: str, path, line_no) -> str:
    if name == ARROW:
        raise FormatError(f"'{ARROW}' cannot be used as an entity name", path, line_no)
    return name


def group_per_source(edges: Iterable[tuple[str, str]]) -> list[NamedPair]:
    """One pair per distinct source: ``({s}, successors(s))`` in first-seen order."""
    successors: dict[str, dict[str, None]] = {}
    for source, target in edges:
        successors.setdefault(source, {})[target] = None
    return [((source, ), tuple(targets)) for source, targets in successors.items()]


def _read_edges(path: Path) -> list[tuple[str, str]]:
    edges = []
    for line_no, line in _content_lines(path):
        tokens = line.split()
        if len(tokens) != 2:
            raise FormatError(
                f"expected 'source<TAB>target', got {len(tokens)} token(s)", path, line_no
            )
        edges.append((_check_name(tokens[0], path, line_no), _check_name(tokens[1], path, line_no)))
    return edges


def _read_pairs(path: Path) -> list[NamedPair]:
    pairs = []
    for line_no, line in _content_lines(path):
        tokens = line.split()
        if tokens.count(ARROW) != 1:
            raise FormatError(f"pair line needs exactly one '{ARROW}'", path, line_no)
        split = tokens.index(ARROW)
        left, right = tokens[:split], tokens[split + 1:]
        if not left or not right:
            raise FormatError("pair line has an empty side", path, line_no)
        pairs.append((tuple(dict.fromkeys(left)), tuple(dict.fromkeys(right))))
    return pairs


def ingest_state(path, grouping=Grouping.PER_SOURCE) -> list[NamedPair]:
    """Read one snapshot file into named connection pairs."""
    path = Path(path)
    grouping = Grouping(grouping)
    if not path.is_file():
        raise SysNetError(f"snapshot file not found: {path}")
    if grouping is Grouping.PER_SOURCE:
        pairs = group_per_source(_read_edges(path))
    else:
        pairs = _read_pairs(path)
    if not pairs:
        raise FormatError("snapshot is empty", path)
    return pairs


def valid_name(name: str) -> bool:
    return bool(name) and name != ARROW and not name.startswith("#") and not any(
        ch.isspace() for ch in name
    )


@dataclass
class EntityIndex:
    """Bijection between entity names and dense IDs starting at 1."""

    forward: dict[str, int] = field(default_factory=dict)
    reverse: dict[int, str] = field(default_factory=dict)

    @property
    def counter(self) -> int:
        return len(self.forward) + 1

    def __len__(self) -> int:
        return len(self.forward)

    def __contains__(self, name: str) -> bool:
        return name in self.forward

    def add(self, name: str) -> int:
        """Return the ID of ``name``, assigning the next free one if new."""
        entity_id = self.forward.get(name)
        if entity_id is None:
            if not valid_name(name):
                raise FormatError(f"entity name must be a single token not starting with '#', got {name!r}")
            entity_id = self.counter
            self.forward[name] = entity_id
            self.reverse[entity_id] = name
        return entity_id

    def id_of(self, name: str) -> int:
        return self.forward[name]

    def name_of(self, entity_id: int) -> str:
        return self.reverse[entity_id]

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "EntityIndex":
        index = cls()
        for name in names:
            index.add(name)
        return index


def encode_series(
    states: Sequence[Sequence[NamedPair]],
    labels: Sequence[str] | None = None,
) -> tuple[list[SysNetDb], EntityIndex]:
    """Replace names by global IDs, assigned in first-encounter order.

    States are scanned in series order, pairs in order, left side before right.
    """
    if not states:
        raise SysNetError("no states found")
    if labels is None:
        labels = [str(i) for i in range(1, len(states) + 1)]
    if len(labels) != len(states):
        raise ValueError("one label per state required")
    index = EntityIndex()
    dbs = []
    for label, pairs in zip(labels, states):
        encoded = []
        for left, right in pairs:
            left_ids = [index.add(name) for name in left]
            right_ids = [index.add(name) for name in right]
            encoded.append(ConnectionPair(frozenset(left_ids), frozenset(right_ids)))
        dbs.append(SysNetDb(label, tuple(encoded)))
    return dbs, index


# -- file formats ---------------------------------------------------------

def format_pair(pair: ConnectionPair) -> str:
    left = " ".join(map(str, sorted(pair.left)))
    right = " ".join(map(str, sorted(pair.right)))
    return f"{left} {LEFT_END} {right} {RIGHT_END}"


def write_db(db: SysNetDb, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pair in db.pairs:
            fh.write(format_pair(pair) + "\n")


def _parse_ids(tokens, path, line_no) -> list[int]:
    ids = []
    for tok in tokens:
        try:
            value = int(tok)
        except ValueError:
            raise FormatError(f"non-integer entity id {tok!r}", path, line_no) from None
        if value < 1:
            raise FormatError(f"entity id must be >= 1, got {value}", path, line_no)
        ids.append(value)
    return ids


def parse_db_line(line: str, path=None, line_no=None) -> ConnectionPair:
    tokens = line.split()
    if not tokens or tokens[-1] != RIGHT_END:
        raise FormatError(f"pair must end with '{RIGHT_END}'", path, line_no)
    if tokens.count(LEFT_END) != 1 or tokens.count(RIGHT_END) != 1:
        raise FormatError(f"pair needs exactly one '{LEFT_END}' and one '{RIGHT_END}'", path, line_no)
    split = tokens.index(LEFT_END)
    left = _parse_ids(tokens[:split], path, line_no)
    right = _parse_ids(tokens[split + 1:-1], path, line_no)
    if not left or not right:
        raise FormatError("pair has an empty side", path, line_no)
    return ConnectionPair(frozenset(left), frozenset(right))


def read_db(path, label: str | None = None) -> SysNetDb:
    path = Path(path)
    if label is None:
        label = path.stem
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            if not raw.strip():
                continue
            pairs.append(parse_db_line(raw, path, line_no))
    return SysNetDb(label, tuple(pairs))


def write_index(index: EntityIndex, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for entity_id in sorted(index.reverse):
            fh.write(f"{entity_id}\t{index.reverse[entity_id]}\n")


def read_index(path) -> EntityIndex:
    path = Path(path)
    index = EntityIndex()
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise FormatError("expected '<id><TAB><name>'", path, line_no)
            try:
                entity_id = int(parts[0])
            except ValueError:
                raise FormatError(f"non-integer entity id {parts[0]!r}", path, line_no) from None
            name = parts[1]
            if entity_id < 1 or not valid_name(name):
                raise FormatError(f"bad index entry {line!r}", path, line_no)
            if entity_id in index.reverse:
                raise FormatError(f"duplicate entity id {entity_id}", path, line_no)
            if name in index.forward:
                raise FormatError(f"duplicate entity name {name!r}", path, line_no)
            index.forward[name] = entity_id
            index.reverse[entity_id] = name
    return index


# -- series layout on disk ------------------------------------------------

DB_DIR = "SysNetDbs"
INDEX_FILE = "IndexFile.txt"
LABELS_FILE = "StateLabels.txt"


def db_filename(i: int) -> str:
    return f"SysNetDb_{i}_ID.txt"


def list_snapshots(input_dir, manifest=None) -> list[Path]:
    """Snapshot files in series order: manifest order, else sorted filenames."""
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        raise SysNetError(f"input directory not found: {input_dir}")
    if manifest is not None:
        files = []
        for _, line in _content_lines(Path(manifest)):
            candidate = input_dir / line
            if not candidate.is_file():
                raise SysNetError(f"manifest entry not found: {candidate}")
            files.append(candidate)
    else:
        files = sorted(
            (p for p in input_dir.iterdir() if p.is_file() and not p.name.startswith(".")),
            key=lambda p: p.name,
        )
    if not files:
        raise SysNetError("no states found")
    return files


def preprocess(input_dir, out_dir, grouping=Grouping.PER_SOURCE, manifest=None):
    """Ingest every snapshot, encode the series and write it under ``out_dir``."""
    files = list_snapshots(input_dir, manifest)
    states = [ingest_state(path, grouping) for path in files]
    dbs, index = encode_series(states, [path.stem for path in files])
    write_series(dbs, index, out_dir)
    return dbs, index


def write_series(dbs: Sequence[SysNetDb], index: EntityIndex, out_dir) -> None:
    out_dir = Path(out_dir)
    db_dir = out_dir / DB_DIR
    db_dir.mkdir(parents=True, exist_ok=True)
    for i, db in enumerate(dbs, 1):
        write_db(db, db_dir / db_filename(i))
    write_index(index, out_dir / INDEX_FILE)
    with open(out_dir / LABELS_FILE, "w", encoding="utf-8", newline="\n") as fh:
        for i, db in enumerate(dbs, 1):
            fh.write(f"{i}\t{db.label}\n")


def read_series(db_root) -> tuple[list[SysNetDb], EntityIndex]:
    """Load ``SysNetDb_<i>_ID.txt`` files (i = 1..N) and the index from ``db_root``."""
    db_root = Path(db_root)
    db_dir = db_root / DB_DIR
    if not db_dir.is_dir():
        raise SysNetError(f"missing directory {db_dir}")
    numbered = {}
    for path in db_dir.iterdir():
        name = path.name
        if name.startswith("SysNetDb_") and name.endswith("_ID.txt"):
            middle = name[len("SysNetDb_"):-len("_ID.txt")]
            if middle.isdigit():
                numbered[int(middle)] = path
    if not numbered:
        raise SysNetError("no states found")
    if sorted(numbered) != list(range(1, len(numbered) + 1)):
        raise SysNetError(f"state files in {db_dir} are not numbered 1..{len(numbered)}")
    index_path = db_root / INDEX_FILE
    if not index_path.is_file():
        raise SysNetError(f"missing index file {index_path}")
    index = read_index(index_path)
    labels = {i: str(i) for i in numbered}
    labels_path = db_root / LABELS_FILE
    if labels_path.is_file():
        for line_no, raw in enumerate(labels_path.read_text(encoding="utf-8").splitlines(), 1):
            if not raw.strip():
                continue
            num, _, label = raw.partition("\t")
            if not num.isdigit() or not label:
                raise FormatError("expected '<i><TAB><label>'", labels_path, line_no)
            labels[int(num)] = label
    dbs = [read_db(numbered[i], labels[i]) for i in sorted(numbered)]
    for db in dbs:
        unknown = db.entity_ids() - index.reverse.keys()
        if unknown:
            raise SysNetError(f"state {db.label} uses ids missing from the index: {sorted(unknown)[:5]}")
    return dbs, index


def snapshot_stats(dbs: Sequence[SysNetDb]) -> list[tuple[str, int]]:
    return [(db.label, db.M) for db in dbs]


__all__ = [
    "ARROW", "DB_DIR", "INDEX_FILE", "LABELS_FILE", "EntityIndex", "Grouping", "NamedPair",
    "db_filename", "encode_series", "format_pair", "group_per_source", "ingest_state",
    "list_snapshots", "parse_db_line", "preprocess", "read_db", "read_index", "read_series",
    "write_db", "write_index", "write_series", "snapshot_stats",
]
